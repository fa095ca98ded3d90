#include "blowsphere/puiseux.hpp"

#include "blowsphere/factor.hpp"
#include "blowsphere/roots.hpp"

#include <algorithm>
#include <climits>
#include <cmath>
#include <limits>
#include <numeric>

namespace blowsphere {

namespace {

constexpr int kMaxDepth = 64;
constexpr double kPruneRel = 1e-11;

// Bivariate polynomial over complex doubles, used inside the expansion where
// coefficients stop being rational after the first face root is substituted.
struct CP2 {
    std::map<std::pair<int, int>, Complex> t;  // (x exp, y exp) -> coeff

    double max_abs() const {
        double m = 0.0;
        for (const auto& [e, c] : t) m = std::max(m, std::abs(c));
        return m;
    }
    void prune() {
        double cut = kPruneRel * max_abs();
        for (auto it = t.begin(); it != t.end();) {
            if (std::abs(it->second) <= cut)
                it = t.erase(it);
            else
                ++it;
        }
    }
    int min_x() const {
        int m = INT_MAX;
        for (const auto& [e, c] : t) m = std::min(m, e.first);
        return m;
    }
    int min_y() const {
        int m = INT_MAX;
        for (const auto& [e, c] : t) m = std::min(m, e.second);
        return m;
    }
    // y-order on the x = 0 axis.
    int axis_order() const {
        int m = INT_MAX;
        for (const auto& [e, c] : t)
            if (e.first == 0) m = std::min(m, e.second);
        return m;
    }
    void shift_down(int dx, int dy) {
        std::map<std::pair<int, int>, Complex> out;
        for (const auto& [e, c] : t) out.emplace(std::make_pair(e.first - dx, e.second - dy), c);
        t = std::move(out);
    }
};

CP2 from_exact(const Polynomial& f) {
    CP2 out;
    for (const auto& [e, c] : f.terms()) out.t.emplace(std::make_pair(e[0], e[1]), c.to_complex());
    return out;
}

struct SegmentGeom {
    long p = 1, q = 1;  // slope p/q in lowest terms
    int steps = 0;      // lattice steps: drop / q
    int drop = 0;       // total y-exponent drop
    int ib = 0, jb = 0;  // bottom vertex
};

// Finite-slope faces of the lower-left hull of a support set. The chain runs
// from the y-axis vertex down to the minimal y-exponent.
template <typename TermIter>
std::vector<SegmentGeom> hull_segments(TermIter begin, TermIter end) {
    int d = INT_MAX, floor_j = INT_MAX;
    for (auto it = begin; it != end; ++it) {
        auto [i, j] = it->first;
        if (i == 0) d = std::min(d, j);
        floor_j = std::min(floor_j, j);
    }
    if (d == INT_MAX) throw PuiseuxError("support has no term on the x = 0 axis");
    std::vector<SegmentGeom> segs;
    int ci = 0, cj = d;
    while (cj > floor_j) {
        long best_num = 0, best_den = 1;
        int ni = -1, nj = -1;
        for (auto it = begin; it != end; ++it) {
            auto [i, j] = it->first;
            if (j >= cj) continue;
            long num = i - ci, den = cj - j;
            if (ni < 0 || num * best_den < best_num * den ||
                (num * best_den == best_num * den && j < nj)) {
                best_num = num;
                best_den = den;
                ni = i;
                nj = j;
            }
        }
        if (ni < 0) break;
        long g = std::gcd(best_num, best_den);
        SegmentGeom seg;
        seg.p = best_num / g;
        seg.q = best_den / g;
        seg.drop = cj - nj;
        seg.steps = static_cast<int>(seg.drop / seg.q);
        seg.ib = ni;
        seg.jb = nj;
        segs.push_back(seg);
        ci = ni;
        cj = nj;
    }
    return segs;
}

// Face coefficients of a segment: face[s] is the coefficient at the lattice
// point (ib - s*p, jb + s*q), s = 0..steps.
std::vector<Complex> face_coefficients(const CP2& F, const SegmentGeom& seg) {
    std::vector<Complex> face(static_cast<size_t>(seg.steps) + 1, Complex(0.0));
    for (const auto& [e, c] : F.t) {
        long dj = e.second - seg.jb;
        if (dj < 0 || dj % seg.q != 0) continue;
        long s = dj / seg.q;
        if (s > seg.steps) continue;
        if (e.first - seg.ib != -seg.p * s) continue;
        face[static_cast<size_t>(s)] = c;
    }
    return face;
}

// F(x^q, x^p (c + y)) with the full power of x divided out.
CP2 transform(const CP2& F, long q, long p, Complex c) {
    CP2 out;
    int max_j = 0;
    for (const auto& [e, co] : F.t) max_j = std::max(max_j, e.second);
    std::vector<std::vector<double>> binom(max_j + 1);
    for (int n = 0; n <= max_j; ++n) {
        binom[n].assign(n + 1, 1.0);
        for (int k = 1; k < n; ++k) binom[n][k] = binom[n - 1][k - 1] + binom[n - 1][k];
    }
    for (const auto& [e, co] : F.t) {
        int i = e.first, j = e.second;
        long base = q * i + p * j;
        std::vector<Complex> cpow(j + 1);  // cpow[k] = c^(j-k)
        cpow[j] = 1.0;
        for (int k = j - 1; k >= 0; --k) cpow[k] = cpow[k + 1] * c;
        for (int k = 0; k <= j; ++k) {
            Complex v = co * binom[j][k] * cpow[k];
            auto key = std::make_pair(static_cast<int>(base), k);
            auto [it, inserted] = out.t.emplace(key, v);
            if (!inserted) it->second += v;
        }
    }
    out.prune();
    int v = out.min_x();
    if (v > 0) out.shift_down(v, 0);
    return out;
}

// Implicit series solution y(x), y(0) = 0, of F with dF/dy(0,0) != 0, via
// Newton iteration on truncated power series at full precision.
PowerSeries solve_series(const CP2& F, int trunc) {
    int max_j = 0;
    for (const auto& [e, c] : F.t) max_j = std::max(max_j, e.second);
    std::vector<PowerSeries> a(max_j + 1, PowerSeries(trunc));
    for (const auto& [e, c] : F.t)
        if (e.first <= trunc) a[e.second].set(e.first, a[e.second][e.first] + c);
    double scale = std::max(1.0, F.max_abs());
    if (std::abs(a[1][0]) <= 1e-10 * scale)
        throw PuiseuxError("expansion expected a simple face root");

    auto eval_both = [&](const PowerSeries& y, PowerSeries& val, PowerSeries& deriv) {
        val = PowerSeries(trunc);
        deriv = PowerSeries(trunc);
        for (int j = max_j; j >= 0; --j) {
            deriv = deriv * y + val;
            val = val * y + a[j];
        }
    };

    PowerSeries y(trunc);
    int rounds = 2;
    for (int k = trunc; k > 0; k /= 2) ++rounds;  // ceil(log2) + margin
    for (int it = 0; it < rounds; ++it) {
        PowerSeries val(trunc), deriv(trunc);
        eval_both(y, val, deriv);
        y = y - val * deriv.inverse();
        y.set(0, Complex(0.0));
    }
    // Gross-failure guard; fine-grained validation happens in the residual checks.
    double ymax = 0.0;
    for (int k = 0; k <= trunc; ++k) ymax = std::max(ymax, std::abs(y[k]));
    PowerSeries val(trunc), deriv(trunc);
    eval_both(y, val, deriv);
    double headroom = std::pow(std::max(1.0, ymax), static_cast<double>(max_j));
    if (!val.is_zero(1e-7 * scale * headroom))
        throw PuiseuxError("series iteration failed to converge");
    return y;
}

struct RawBranch {
    int e = 1;
    PowerSeries s{0};  // y as a series in t, where x = t^e
    int valid = 0;     // coefficients of t^0..t^valid are trusted
};

// Expand every branch of F through the origin. `carried_q` is the product of
// the q values of the enclosing segments; `window` is the x-exponent width
// requested for the final series. The e values of the returned branches sum
// to the y-order of F on the x = 0 axis.
std::vector<RawBranch> expand(CP2 F, int carried_q, int window, int depth) {
    if (depth > kMaxDepth) throw PuiseuxError("expansion recursion exceeded depth cap");
    F.prune();
    if (F.t.empty()) throw PuiseuxError("expansion degenerated to the zero polynomial");
    int d_entry = F.axis_order();

    std::vector<RawBranch> out;
    int b = F.min_y();
    if (b > 1) throw NonReducedError();
    if (b == 1) {
        // y | F: this level contains the exact branch y = 0.
        RawBranch axis;
        axis.e = 1;
        axis.s = PowerSeries(0);
        axis.valid = INT_MAX / 4;
        out.push_back(std::move(axis));
        F.shift_down(0, 1);
        F.prune();
    }
    if (!F.t.empty() && !F.t.count({0, 0})) {
        for (const SegmentGeom& seg : hull_segments(F.t.begin(), F.t.end())) {
            std::vector<Complex> face = face_coefficients(F, seg);
            double face_scale = 0.0;
            for (const Complex& c : face) face_scale = std::max(face_scale, std::abs(c));
            for (Complex& c : face) c /= face_scale;
            int seg_total = 0;
            for (const ClusteredRoot& root : find_root_clusters(face)) {
                if (std::abs(root.value) < 1e-9)
                    throw PuiseuxError("face polynomial root collapsed to zero");
                Complex c = std::pow(root.value, 1.0 / static_cast<double>(seg.q));
                CP2 F1 = transform(F, seg.q, seg.p, c);
                int E = carried_q * static_cast<int>(seg.q);
                if (root.multiplicity == 1) {
                    int K = E * window;
                    PowerSeries s1 = solve_series(F1, K);
                    RawBranch rb;
                    rb.e = static_cast<int>(seg.q);
                    rb.s = PowerSeries(K);
                    rb.s.set(static_cast<int>(seg.p), c);
                    for (int k = 1; k <= s1.trunc(); ++k) {
                        int at = k + static_cast<int>(seg.p);
                        if (at <= K) rb.s.set(at, rb.s[at] + s1[k]);
                    }
                    rb.valid = K;
                    seg_total += rb.e;
                    out.push_back(std::move(rb));
                } else {
                    int sub_total = 0;
                    for (RawBranch& sub : expand(std::move(F1), E, window, depth + 1)) {
                        RawBranch rb;
                        rb.e = static_cast<int>(seg.q) * sub.e;
                        long lead = seg.p * sub.e;
                        rb.s = PowerSeries(static_cast<int>(lead) + sub.s.trunc());
                        rb.s.set(static_cast<int>(lead), c);
                        for (int k = 1; k <= sub.s.trunc(); ++k)
                            rb.s.set(static_cast<int>(lead) + k, sub.s[k]);
                        rb.valid = static_cast<int>(
                            std::min<long>(static_cast<long>(sub.valid) + lead, INT_MAX / 4));
                        sub_total += sub.e;
                        seg_total += rb.e;
                        out.push_back(std::move(rb));
                    }
                    if (sub_total != root.multiplicity)
                        throw PuiseuxError("expansion bookkeeping mismatch below a multiple root");
                }
            }
            if (seg_total != seg.drop)
                throw PuiseuxError("expansion bookkeeping mismatch along a face");
        }
    }
    int total_e = 0;
    for (const RawBranch& rb : out) total_e += rb.e;
    if (d_entry != INT_MAX && total_e != d_entry)
        throw PuiseuxError("expansion bookkeeping mismatch; increase precision");
    return out;
}

std::vector<BranchTerm> trim_terms(const PowerSeries& s, int valid) {
    double scale = 0.0;
    for (int k = 0; k <= s.trunc(); ++k) scale = std::max(scale, std::abs(s[k]));
    double cut = 1e-13 * std::max(1.0, scale);
    std::vector<BranchTerm> out;
    for (int k = 0; k <= std::min(valid, s.trunc()); ++k)
        if (std::abs(s[k]) > cut) out.push_back({k, s[k]});
    return out;
}

bool direction_lex_less(const std::vector<Complex>& a, const std::vector<Complex>& b) {
    for (size_t k = 0; k < std::min(a.size(), b.size()); ++k) {
        if (a[k].real() != b[k].real()) return a[k].real() < b[k].real();
        if (a[k].imag() != b[k].imag()) return a[k].imag() < b[k].imag();
    }
    return a.size() < b.size();
}

Branch assemble_plane_branch(const RawBranch& raw) {
    Branch out;
    out.ramification = raw.e;
    out.components.resize(2);
    out.components[0] = {{raw.e, Complex(1.0)}};
    out.components[1] = trim_terms(raw.s, raw.valid);
    if (out.components[1].empty())
        throw PuiseuxError("expanded series collapsed to zero; the axis split should have caught it");
    int ord_s = out.components[1].front().exp;
    out.multiplicity = std::min(raw.e, ord_s);
    Complex c0 = raw.e == out.multiplicity ? Complex(1.0) : Complex(0.0);
    Complex c1 = ord_s == out.multiplicity ? out.components[1].front().coeff : Complex(0.0);
    out.tangent = canonical_direction({c0, c1});
    out.truncation_order = Rational(raw.valid + 1, raw.e);
    out.exact = false;  // refined later by the residual check
    return out;
}

}  // namespace

NewtonPolygon newton_polygon(const Polynomial& f) {
    if (f.nvars() != 2) throw std::invalid_argument("newton_polygon expects a bivariate input");
    if (f.is_zero()) throw ZeroPolynomialError();
    if (!f.vanishes_at_origin()) throw NotVanishingError();
    int min_x = INT_MAX;
    for (const auto& [e, c] : f.terms()) min_x = std::min(min_x, e[0]);
    if (min_x > 0)
        throw std::invalid_argument("f has a component x = 0; split it off before the polygon");

    // Exact support and faces.
    std::map<std::pair<int, int>, GaussianRational> support;
    for (const auto& [e, c] : f.terms()) support.emplace(std::make_pair(e[0], e[1]), c);

    NewtonPolygon out;
    for (const SegmentGeom& seg : hull_segments(support.begin(), support.end())) {
        NewtonPolygonSegment s;
        s.slope = Rational(seg.p, seg.q);
        s.lattice_length = seg.drop;
        s.face = Polynomial(1);
        for (const auto& [e, c] : support) {
            long dj = e.second - seg.jb;
            if (dj < 0 || dj % seg.q != 0) continue;
            long u = dj / seg.q;
            if (u > seg.steps || e.first - seg.ib != -seg.p * u) continue;
            s.face.add_term({static_cast<int>(u)}, c);
        }
        out.segments.push_back(std::move(s));
    }
    return out;
}

std::vector<std::pair<Rational, Complex>> Branch::fractional_series() const {
    std::vector<std::pair<Rational, Complex>> out;
    if (components.size() < 2) return out;
    for (const BranchTerm& t : components[1])
        out.emplace_back(Rational(t.exp, ramification), t.coeff);
    return out;
}

int branch_multiplicity(const Branch& b) { return b.multiplicity; }

Complex eval_component(const std::vector<BranchTerm>& series, Complex t) {
    Complex acc = 0.0;
    for (const BranchTerm& term : series) acc += term.coeff * std::pow(t, term.exp);
    return acc;
}

std::vector<Complex> eval_branch(const Branch& b, Complex t) {
    std::vector<Complex> out;
    out.reserve(b.components.size());
    for (const auto& comp : b.components) out.push_back(eval_component(comp, t));
    return out;
}

std::vector<Branch> puiseux_branches(const Polynomial& f, int terms) {
    if (f.nvars() != 2) throw std::invalid_argument("puiseux_branches expects a plane curve");
    if (f.is_zero()) throw ZeroPolynomialError();
    if (!f.vanishes_at_origin()) throw NotVanishingError();
    if (terms < 2) throw std::invalid_argument("truncation window too small");

    int ax = INT_MAX, ay = INT_MAX;
    for (const auto& [e, c] : f.terms()) {
        ax = std::min(ax, e[0]);
        ay = std::min(ay, e[1]);
    }
    if (ax >= 2 || ay >= 2) throw NonReducedError();

    Polynomial core(2);
    for (const auto& [e, c] : f.terms()) core.add_term({e[0] - ax, e[1] - ay}, c);

    std::vector<Branch> branches;
    if (ay == 1) {
        Branch axis;  // y = 0
        axis.ramification = 1;
        axis.components = {{{1, Complex(1.0)}}, {}};
        axis.multiplicity = 1;
        axis.tangent = canonical_direction({Complex(1.0), Complex(0.0)});
        axis.truncation_order = Rational(INT_MAX / 4);
        axis.exact = true;
        branches.push_back(std::move(axis));
    }
    if (ax == 1) {
        Branch axis;  // x = 0
        axis.ramification = 1;
        axis.components = {{}, {{1, Complex(1.0)}}};
        axis.multiplicity = 1;
        axis.tangent = canonical_direction({Complex(0.0), Complex(1.0)});
        axis.truncation_order = Rational(INT_MAX / 4);
        axis.exact = true;
        branches.push_back(std::move(axis));
    }

    if (core.degree() > 0 && core.vanishes_at_origin()) {
        Polynomial dy = core.derivative(1);
        if (dy.is_zero()) throw PuiseuxError("core unexpectedly free of y");
        Polynomial g = gcd(core, dy);
        if (!g.is_zero() && g.degree() > 0 && g.order_at_origin() > 0) throw NonReducedError();

        for (const RawBranch& raw : expand(from_exact(core), 1, terms, 0)) {
            Branch b = assemble_plane_branch(raw);
            b.exact = branch_satisfies_exactly(f, b);
            branches.push_back(std::move(b));
        }
    }
    if (branches.empty()) throw PuiseuxError("input has no branch through the origin");

    std::sort(branches.begin(), branches.end(), [](const Branch& a, const Branch& b) {
        if (a.tangent != b.tangent) return direction_lex_less(a.tangent, b.tangent);
        if (a.multiplicity != b.multiplicity) return a.multiplicity < b.multiplicity;
        // Leading series coefficient as the final tie-break.
        Complex la = a.components.size() > 1 && !a.components[1].empty()
                         ? a.components[1].front().coeff
                         : Complex(0.0);
        Complex lb = b.components.size() > 1 && !b.components[1].empty()
                         ? b.components[1].front().coeff
                         : Complex(0.0);
        if (la.real() != lb.real()) return la.real() < lb.real();
        return la.imag() < lb.imag();
    });

    int total = 0;
    for (const Branch& b : branches) total += b.multiplicity;
    if (total != f.order_at_origin())
        throw PuiseuxError("branch multiplicities do not sum to the multiplicity of f");
    return branches;
}

bool branch_satisfies_exactly(const Polynomial& f, const Branch& b) {
    if (b.components.size() != static_cast<size_t>(f.nvars()))
        throw std::invalid_argument("branch dimension does not match f");
    // If the stored series were an exact polynomial solution, the composed
    // residual would be a polynomial in t of degree at most deg(f) * top
    // exponent. A residual vanishing through that bound certifies exactness;
    // a truncated series instead shows its first error coefficient at
    // valid+1, which the window always covers.
    long top = b.ramification;
    for (const auto& comp : b.components)
        for (const BranchTerm& term : comp) top = std::max<long>(top, term.exp);
    long exact_bound = static_cast<long>(f.degree()) * top + 1;
    long valid = INT_MAX / 4;
    if (b.truncation_order < Rational(INT_MAX / 8))
        valid = (b.truncation_order * b.ramification).convert_to<long>();
    Rational N(std::min(exact_bound, valid) + 1);

    double series_scale = 1.0;
    std::vector<FracSeries> vars;
    vars.reserve(b.components.size());
    for (const auto& comp : b.components) {
        FracSeries s(1, N);
        for (const BranchTerm& term : comp) {
            s.add_term(Rational(term.exp), term.coeff);
            series_scale = std::max(series_scale, std::abs(term.coeff));
        }
        vars.push_back(std::move(s));
    }
    double f_scale = 1.0;
    for (const auto& [e, c] : f.terms()) f_scale = std::max(f_scale, std::abs(c.to_complex()));
    FracSeries r = substitute_series(f, vars, N);
    double noise = 1e-9 * f_scale * std::pow(series_scale, f.degree());
    return r.is_zero(noise);
}

double residual_order(const Polynomial& f, const Branch& b) {
    if (branch_satisfies_exactly(f, b)) return std::numeric_limits<double>::infinity();

    // Decay slope on real t samples, keeping only values that stand clear of
    // the cancellation noise floor of the double-precision evaluation.
    std::vector<double> logt, logv;
    for (int k = 0; k < 16; ++k) {
        double t = std::pow(10.0, -1.0 - 2.0 * k / 15.0);  // 1e-1 .. 1e-3
        std::vector<Complex> pt = eval_branch(b, Complex(t, 0.0));
        double v = std::abs(f.eval(pt));
        double magnitude = 0.0;
        for (const auto& [e, c] : f.terms()) {
            double m = std::abs(c.to_complex());
            for (int var = 0; var < f.nvars(); ++var)
                m *= std::pow(std::abs(pt[static_cast<size_t>(var)]), e[var]);
            magnitude += m;
        }
        double floor = 32.0 * 2.3e-16 * magnitude;
        if (!std::isfinite(v) || v < 1e-280 || v <= floor) continue;
        logt.push_back(std::log(t));
        logv.push_back(std::log(v));
    }
    // Nothing measurably nonzero: the residual decays below what double
    // precision can resolve in the sampled range.
    if (logt.size() < 4) return std::numeric_limits<double>::infinity();
    double n = static_cast<double>(logt.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (size_t k = 0; k < logt.size(); ++k) {
        sx += logt[k];
        sy += logv[k];
        sxx += logt[k] * logt[k];
        sxy += logt[k] * logv[k];
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace blowsphere

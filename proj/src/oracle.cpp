#include "blowsphere/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <random>

namespace blowsphere {

namespace {

constexpr double kTauGuard = 0.6;  // parameter radius where truncations are trusted

// Dense coefficient table of one branch for fast circle evaluation.
struct DenseBranch {
    std::vector<std::vector<Complex>> comps;  // comps[v][k] = coeff of t^k
    int multiplicity = 1;
    double lead_norm = 1.0;
    long valid = 0;
};

DenseBranch densify(const Branch& b) {
    DenseBranch out;
    out.multiplicity = b.multiplicity;
    int top = 0;
    for (const auto& comp : b.components)
        for (const BranchTerm& t : comp) top = std::max(top, t.exp);
    out.comps.assign(b.components.size(), std::vector<Complex>(top + 1, Complex(0.0)));
    for (size_t v = 0; v < b.components.size(); ++v)
        for (const BranchTerm& t : b.components[v]) out.comps[v][t.exp] = t.coeff;
    double lead2 = 0.0;
    for (size_t v = 0; v < b.components.size(); ++v)
        if (b.multiplicity <= top) lead2 += std::norm(out.comps[v][b.multiplicity]);
    out.lead_norm = std::sqrt(std::max(lead2, 1e-30));
    out.valid = b.exact ? (1L << 30)
                        : (b.truncation_order * b.ramification).convert_to<long>();
    return out;
}

std::vector<Complex> eval_dense(const DenseBranch& b, Complex t) {
    std::vector<Complex> out(b.comps.size());
    for (size_t v = 0; v < b.comps.size(); ++v) {
        Complex acc = 0.0;
        for (size_t k = b.comps[v].size(); k-- > 0;) acc = acc * t + b.comps[v][k];
        out[v] = acc;
    }
    return out;
}

double norm_at(const DenseBranch& b, double tau, double theta) {
    std::vector<Complex> p = eval_dense(b, std::polar(tau, theta));
    double s = 0.0;
    for (const Complex& c : p) s += std::norm(c);
    return std::sqrt(s);
}

// Parameter radius with |psi(tau e^(i theta))| = r; the norm is monotone in
// tau near the origin.
double solve_tau(const DenseBranch& b, double r, double theta) {
    double guess = std::pow(r / b.lead_norm, 1.0 / b.multiplicity);
    double lo = guess / 8.0, hi = std::min(8.0 * guess, kTauGuard);
    for (int grow = 0; norm_at(b, hi, theta) < r; ++grow) {
        hi = std::min(hi * 2.0, kTauGuard);
        if (grow > 8 || hi >= kTauGuard) break;
    }
    if (norm_at(b, hi, theta) < r)
        throw OracleError("requested radius outside the trusted parameter range");
    while (norm_at(b, lo, theta) > r) lo /= 4.0;
    for (int it = 0; it < 60; ++it) {
        double mid = 0.5 * (lo + hi);
        (norm_at(b, mid, theta) < r ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

double sq_dist_to_boundary_point(const SamplePoint& pt, const std::vector<Complex>& p) {
    double s = pt.r * pt.r;
    for (size_t k = 0; k < p.size(); ++k) {
        double dre = pt.u[2 * k] - p[k].real();
        double dim = pt.u[2 * k + 1] - p[k].imag();
        s += dre * dre + dim * dim;
    }
    return s;
}

// Circular single-linkage on sorted angles; clusters as angle intervals.
struct AngleCluster {
    double lo = 0.0, hi = 0.0;  // interval in [0, 4pi) coordinates
};

std::vector<AngleCluster> cluster_angles(std::vector<double> angles, double link) {
    std::vector<AngleCluster> out;
    if (angles.empty()) return out;
    std::sort(angles.begin(), angles.end());
    size_t n = angles.size();
    // Find the largest circular gap to cut the circle open.
    size_t cut = 0;
    double best_gap = -1.0;
    for (size_t i = 0; i < n; ++i) {
        double next = angles[(i + 1) % n] + (i + 1 == n ? 2.0 * M_PI : 0.0);
        double gap = next - angles[i];
        if (gap > best_gap) {
            best_gap = gap;
            cut = (i + 1) % n;
        }
    }
    std::rotate(angles.begin(), angles.begin() + static_cast<long>(cut), angles.end());
    for (size_t i = 1; i < n; ++i)
        if (angles[i] < angles[i - 1]) angles[i] += 2.0 * M_PI;
    AngleCluster cur{angles[0], angles[0]};
    for (size_t i = 1; i < n; ++i) {
        if (angles[i] - angles[i - 1] <= link) {
            cur.hi = angles[i];
        } else {
            out.push_back(cur);
            cur = {angles[i], angles[i]};
        }
    }
    out.push_back(cur);
    return out;
}

bool intervals_touch(const AngleCluster& a, const AngleCluster& b, double pad) {
    for (int shift = -1; shift <= 1; ++shift) {
        double s = 2.0 * M_PI * shift;
        if (a.lo - pad <= b.hi + s && b.lo + s - pad <= a.hi) return true;
    }
    return false;
}

int count_sheets_one_branch(const std::vector<const SamplePoint*>& pts,
                            const std::vector<double>& radii, int per_radius) {
    double link = 4.0 * 2.0 * M_PI / per_radius;
    double pad = std::max(4.0 * link, 0.05);
    // Coarse radii may converge to the boundary circle too slowly to enter
    // the ball; the sheet count is read from the levels that do.
    std::vector<std::vector<AngleCluster>> levels;
    for (double r : radii) {
        std::vector<double> angles;
        for (const SamplePoint* p : pts)
            if (std::abs(p->r - r) <= 0.25 * r) angles.push_back(p->theta);
        auto clusters = cluster_angles(std::move(angles), link);
        if (!clusters.empty()) levels.push_back(std::move(clusters));
    }
    if (levels.empty())
        throw OracleError("increase sampling density: no level reaches the boundary point");
    size_t count = levels.front().size();
    for (const auto& level : levels)
        if (level.size() != count)
            throw OracleError("increase sampling density: sheet count unstable across radii");
    // Chain clusters across consecutive contributing radii; every cluster
    // must find a partner, otherwise the sectors drifted apart.
    for (size_t lev = 0; lev + 1 < levels.size(); ++lev) {
        std::vector<bool> used(levels[lev + 1].size(), false);
        for (const AngleCluster& a : levels[lev]) {
            bool matched = false;
            for (size_t j = 0; j < levels[lev + 1].size(); ++j) {
                if (!used[j] && intervals_touch(a, levels[lev + 1][j], pad)) {
                    used[j] = true;
                    matched = true;
                    break;
                }
            }
            if (!matched)
                throw OracleError("increase sampling density: sectors failed to chain");
        }
    }
    return static_cast<int>(count);
}

int estimate_k_once(const TransformSample& sample, const std::vector<Complex>& direction,
                    const std::vector<std::vector<Complex>>& all_directions, double delta) {
    // Generic boundary point on the circle of the direction, rejected when it
    // sits near another circle (a tolerance safety net: distinct lines keep a
    // phase-independent distance).
    std::mt19937_64 rng(sample.seed ^ 0x9e3779b97f4a7c15ull);
    std::uniform_real_distribution<double> uangle(0.0, 2.0 * M_PI);
    std::vector<Complex> p;
    double phi = 0.0;
    bool found = false;
    for (int attempt = 0; attempt < 128 && !found; ++attempt) {
        phi = uangle(rng);
        std::vector<Complex> cand(direction.size());
        Complex rot = std::polar(1.0, phi);
        for (size_t k = 0; k < direction.size(); ++k) cand[k] = rot * direction[k];
        found = true;
        for (const auto& other : all_directions) {
            if (same_line(other, direction, 1e-9)) continue;
            double d2 = 2.0;
            Complex ip = 0.0;
            for (size_t k = 0; k < other.size(); ++k) ip += cand[k] * std::conj(other[k]);
            d2 = 2.0 - 2.0 * std::abs(ip);
            if (std::sqrt(std::max(0.0, d2)) < 10.0 * delta) {
                found = false;
                break;
            }
        }
        if (found) p = std::move(cand);
    }
    if (!found) throw OracleError("no generic boundary point: directions too close together");

    std::map<int, std::vector<const SamplePoint*>> near;
    for (const SamplePoint& pt : sample.points)
        if (sq_dist_to_boundary_point(pt, p) <= delta * delta) near[pt.branch_id].push_back(&pt);
    int total = 0;
    for (const auto& [branch, pts] : near)
        total += count_sheets_one_branch(pts, sample.radii, sample.per_radius);
    if (total == 0) throw OracleError("no samples near the boundary point; wrong direction?");
    return total;
}

}  // namespace

TransformSample sample_strict_transform(const std::vector<Branch>& branches,
                                        const OracleParams& params) {
    if (branches.empty()) throw std::invalid_argument("empty branch list");
    if (params.per_radius < 8) throw std::invalid_argument("per_radius too small");
    for (size_t k = 1; k < params.radii.size(); ++k)
        if (!(params.radii[k] < params.radii[k - 1]))
            throw std::invalid_argument("radii must decrease");

    TransformSample out;
    out.radii = params.radii;
    out.per_radius = params.per_radius;
    out.seed = params.seed;
    out.nvars = static_cast<int>(branches.front().components.size());
    std::mt19937_64 rng(params.seed);
    std::uniform_real_distribution<double> jitter(0.0, 1.0);

    for (size_t id = 0; id < branches.size(); ++id) {
        DenseBranch dense = densify(branches[id]);
        for (double r : params.radii) {
            double off = jitter(rng);
            for (int j = 0; j < params.per_radius; ++j) {
                double theta = 2.0 * M_PI * (j + off) / params.per_radius;
                double tau = solve_tau(dense, r, theta);
                // The first untrusted series term must stay far below r.
                if (std::pow(tau, static_cast<double>(dense.valid) + 1.0) > 1e-3 * r)
                    throw OracleError("truncation too coarse for requested radii");
                std::vector<Complex> pt = eval_dense(dense, std::polar(tau, theta));
                double norm = 0.0;
                for (const Complex& c : pt) norm += std::norm(c);
                norm = std::sqrt(norm);
                SamplePoint sp;
                sp.u.resize(2 * pt.size());
                for (size_t v = 0; v < pt.size(); ++v) {
                    sp.u[2 * v] = pt[v].real() / norm;
                    sp.u[2 * v + 1] = pt[v].imag() / norm;
                }
                sp.r = norm;
                sp.branch_id = static_cast<int>(id);
                sp.theta = theta;
                sp.tau = tau;
                out.points.push_back(std::move(sp));
            }
        }
    }
    return out;
}

int estimate_k(const TransformSample& sample, const std::vector<Complex>& direction,
               const std::vector<std::vector<Complex>>& all_directions, double delta) {
    int at_delta = estimate_k_once(sample, direction, all_directions, delta);
    int at_half = estimate_k_once(sample, direction, all_directions, delta / 2.0);
    if (at_delta != at_half)
        throw OracleError("increase sampling density: count unstable across delta values");
    return at_delta;
}

BoundaryEstimate estimate_boundary(const TransformSample& sample,
                                   const std::vector<std::vector<Complex>>& directions,
                                   double delta) {
    BoundaryEstimate out;
    for (const auto& dir : directions) {
        ConeLine circle;
        circle.direction = dir;
        circle.exponent = 1;
        out.circles.push_back(std::move(circle));
        out.sheet_counts.push_back(estimate_k(sample, dir, directions, delta));
    }
    return out;
}

void write_sample_csv(std::ostream& os, const TransformSample& sample) {
    os << "branch_id,r";
    for (int v = 0; v < sample.nvars; ++v) os << ",re" << v << ",im" << v;
    os << "\n";
    for (const SamplePoint& p : sample.points) {
        os << p.branch_id << "," << p.r;
        for (double c : p.u) os << "," << c;
        os << "\n";
    }
}

}  // namespace blowsphere

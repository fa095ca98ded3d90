#include "blowsphere/cone.hpp"

#include "blowsphere/puiseux.hpp"
#include "blowsphere/roots.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace blowsphere {

namespace {

bool direction_less(const std::vector<Complex>& a, const std::vector<Complex>& b) {
    for (size_t k = 0; k < std::min(a.size(), b.size()); ++k) {
        if (a[k].real() != b[k].real()) return a[k].real() < b[k].real();
        if (a[k].imag() != b[k].imag()) return a[k].imag() < b[k].imag();
    }
    return a.size() < b.size();
}

void sort_lines(std::vector<ConeLine>& lines) {
    std::sort(lines.begin(), lines.end(), [](const ConeLine& a, const ConeLine& b) {
        return direction_less(a.direction, b.direction);
    });
}

}  // namespace

std::vector<Complex> canonical_direction(std::vector<Complex> v) {
    double norm2 = 0.0;
    for (const Complex& c : v) norm2 += std::norm(c);
    if (norm2 <= 0.0) throw std::invalid_argument("zero direction vector");
    double inv = 1.0 / std::sqrt(norm2);
    for (Complex& c : v) c *= inv;
    for (Complex& c : v) {
        double a = std::abs(c);
        if (a > 1e-9) {
            Complex phase = std::conj(c) / a;
            for (Complex& w : v) w *= phase;
            c = Complex(a, 0.0);
            break;
        }
    }
    return v;
}

double line_distance(const std::vector<Complex>& a, const std::vector<Complex>& b) {
    if (a.size() != b.size()) throw std::invalid_argument("direction dimension mismatch");
    Complex ip = 0.0;
    for (size_t k = 0; k < a.size(); ++k) ip += a[k] * std::conj(b[k]);
    double v = 2.0 - 2.0 * std::abs(ip);
    return std::sqrt(std::max(0.0, v));
}

bool same_line(const std::vector<Complex>& a, const std::vector<Complex>& b, double tol) {
    return line_distance(a, b) <= tol;
}

std::vector<ConeLine> cone_lines(const Polynomial& in_f) {
    if (in_f.nvars() != 2) throw std::invalid_argument("cone_lines expects a bivariate form");
    if (in_f.is_zero()) throw ZeroPolynomialError();
    if (!in_f.is_homogeneous()) throw std::invalid_argument("cone_lines expects a homogeneous form");
    int d = in_f.degree();

    // Dehomogenize on x = 1: coefficient of u^j collects the x^(d-j) y^j term.
    std::vector<Complex> g(static_cast<size_t>(d) + 1, Complex(0.0));
    int deg_g = -1;
    for (const auto& [e, c] : in_f.terms()) {
        g[e[1]] = c.to_complex();
        deg_g = std::max(deg_g, e[1]);
    }
    std::vector<ConeLine> out;
    if (deg_g >= 1) {
        g.resize(static_cast<size_t>(deg_g) + 1);
        for (const auto& cl : find_root_clusters(g)) {
            ConeLine line;
            line.direction = canonical_direction({Complex(1.0), cl.value});
            line.exponent = cl.multiplicity;
            out.push_back(std::move(line));
        }
    }
    if (d - deg_g > 0) {
        // in_f carries an x factor: the line x = 0.
        ConeLine line;
        line.direction = canonical_direction({Complex(0.0), Complex(1.0)});
        line.exponent = d - deg_g;
        out.push_back(std::move(line));
    }
    sort_lines(out);
    return out;
}

TangentCone relative_multiplicities(const std::vector<Branch>& branches) {
    if (branches.empty()) throw std::invalid_argument("empty branch list");
    TangentCone cone;
    for (const Branch& b : branches) {
        bool merged = false;
        for (size_t i = 0; i < cone.lines.size(); ++i) {
            if (same_line(cone.lines[i].direction, b.tangent)) {
                cone.relative_mult[i] += b.multiplicity;
                merged = true;
                break;
            }
        }
        if (!merged) {
            cone.lines.push_back({b.tangent, 0});
            cone.relative_mult.push_back(b.multiplicity);
        }
    }
    // For curves each cone component is a line, so the factor exponent in the
    // initial form coincides with the k value.
    std::vector<size_t> idx(cone.lines.size());
    for (size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    std::sort(idx.begin(), idx.end(), [&](size_t a, size_t b) {
        return direction_less(cone.lines[a].direction, cone.lines[b].direction);
    });
    TangentCone sorted;
    for (size_t i : idx) {
        ConeLine line = cone.lines[i];
        line.exponent = cone.relative_mult[i];
        sorted.lines.push_back(std::move(line));
        sorted.relative_mult.push_back(cone.relative_mult[i]);
    }
    return sorted;
}

bool multiplicity_identity_check(const Polynomial& f, const TangentCone& cone) {
    if (f.is_zero()) return false;
    return f.order_at_origin() == cone.total_k();
}

std::vector<ConeLine> merge_cone_lines(const std::vector<ConeLine>& a,
                                       const std::vector<ConeLine>& b, double tol) {
    std::vector<ConeLine> out = a;
    for (const ConeLine& line : b) {
        bool merged = false;
        for (ConeLine& have : out) {
            if (same_line(have.direction, line.direction, tol)) {
                have.exponent += line.exponent;
                merged = true;
                break;
            }
        }
        if (!merged) out.push_back(line);
    }
    sort_lines(out);
    return out;
}

}  // namespace blowsphere

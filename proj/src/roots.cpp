#include "blowsphere/roots.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace blowsphere {

namespace {

using C = std::complex<double>;
using CL = std::complex<long double>;

constexpr double kEps = 1e-15;

// One Laguerre search on the degree-m polynomial a[0..m]; x is the start point.
C laguerre(const std::vector<C>& a, int m, C x) {
    static const double frac[] = {0.0, 0.5, 0.25, 0.75, 0.13, 0.38, 0.62, 0.88, 1.0};
    const int max_iter = 80;
    for (int iter = 1; iter <= max_iter; ++iter) {
        C b = a[m], d = 0.0, f = 0.0;
        double err = std::abs(b);
        double abx = std::abs(x);
        for (int j = m - 1; j >= 0; --j) {
            f = x * f + d;
            d = x * d + b;
            b = x * b + a[j];
            err = std::abs(b) + abx * err;
        }
        err *= kEps;
        if (std::abs(b) <= err) return x;  // on a root
        C g = d / b;
        C g2 = g * g;
        C h = g2 - 2.0 * f / b;
        C sq = std::sqrt(static_cast<double>(m - 1) * (static_cast<double>(m) * h - g2));
        C gp = g + sq, gm = g - sq;
        double abp = std::abs(gp), abm = std::abs(gm);
        if (abp < abm) gp = gm;
        C dx = std::max(abp, abm) > 0.0
                   ? static_cast<double>(m) / gp
                   : std::polar(1.0 + abx, static_cast<double>(iter));
        C x1 = x - dx;
        if (x == x1) return x;
        if (iter % 10 != 0)
            x = x1;
        else
            x = x - frac[iter / 10 % 9] * dx;
    }
    // Laguerre almost never cycles; treat persistent failure as data error.
    throw std::runtime_error("root iteration did not converge");
}

CL eval_poly(const std::vector<CL>& a, CL x, CL* deriv) {
    CL b = a.back(), d = 0.0L;
    for (int j = static_cast<int>(a.size()) - 2; j >= 0; --j) {
        d = x * d + b;
        b = x * b + a[j];
    }
    if (deriv) *deriv = d;
    return b;
}

}  // namespace

std::vector<C> polynomial_roots(std::vector<C> coeffs) {
    // Trim a numerically vanishing leading tail.
    double scale = 0.0;
    for (const C& c : coeffs) scale = std::max(scale, std::abs(c));
    if (scale == 0.0) throw std::invalid_argument("zero polynomial has no well-defined roots");
    while (coeffs.size() > 1 && std::abs(coeffs.back()) <= 1e-14 * scale) coeffs.pop_back();
    int m = static_cast<int>(coeffs.size()) - 1;
    std::vector<C> roots;
    roots.reserve(m);

    std::vector<C> ad = coeffs;
    for (int j = m; j >= 1; --j) {
        C x = laguerre(ad, j, C(0.0, 0.0));
        if (std::abs(x.imag()) <= 2.0 * kEps * std::abs(x.real())) x = C(x.real(), 0.0);
        roots.push_back(x);
        // Synthetic deflation.
        C b = ad[j];
        for (int jj = j - 1; jj >= 0; --jj) {
            C c = ad[jj];
            ad[jj] = b;
            b = x * b + c;
        }
    }
    // Polish on the original polynomial, then refine in extended precision.
    // Plain Newton converges linearly near a multiple root, which is enough
    // to pull the copies of a cluster well inside the clustering tolerance.
    std::vector<CL> al(coeffs.begin(), coeffs.end());
    for (C& r : roots) {
        r = laguerre(coeffs, m, r);
        CL z(r.real(), r.imag());
        for (int it = 0; it < 60; ++it) {
            CL d;
            CL v = eval_poly(al, z, &d);
            if (std::abs(d) == 0.0L) break;
            CL step = v / d;
            z -= step;
            if (std::abs(step) <= 1e-24L * std::max<long double>(1.0L, std::abs(z))) break;
        }
        r = C(static_cast<double>(z.real()), static_cast<double>(z.imag()));
    }
    return roots;
}

std::vector<ClusteredRoot> find_root_clusters(const std::vector<C>& coeffs, double rel_tol) {
    std::vector<C> roots = polynomial_roots(coeffs);
    size_t n = roots.size();
    if (n == 0) return {};

    // Single-linkage components under |zi - zj| <= tol * max(1, |zi|).
    std::vector<int> comp(n);
    std::iota(comp.begin(), comp.end(), 0);
    auto find = [&](int i) {
        while (comp[i] != i) i = comp[i] = comp[comp[i]];
        return i;
    };
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = i + 1; j < n; ++j) {
            double tol = rel_tol * std::max(1.0, std::abs(roots[i]));
            if (std::abs(roots[i] - roots[j]) <= tol) comp[find(i)] = find(j);
        }
    }
    std::vector<ClusteredRoot> out;
    std::vector<CL> al(coeffs.begin(), coeffs.end());
    std::vector<char> seen(n, 0);
    for (size_t i = 0; i < n; ++i) {
        int root_id = find(static_cast<int>(i));
        if (seen[root_id]) continue;
        seen[root_id] = 1;
        C mean = 0.0;
        int mult = 0;
        for (size_t j = 0; j < n; ++j) {
            if (find(static_cast<int>(j)) == root_id) {
                mean += roots[j];
                ++mult;
            }
        }
        mean /= static_cast<double>(mult);
        // Multiplicity-aware Newton in extended precision: z -= m p / p'.
        CL z(mean.real(), mean.imag());
        for (int it = 0; it < 40; ++it) {
            CL d;
            CL v = eval_poly(al, z, &d);
            if (std::abs(d) == 0.0L) break;
            CL step = static_cast<long double>(mult) * v / d;
            z -= step;
            if (std::abs(step) <= 1e-30L * std::max<long double>(1.0L, std::abs(z))) break;
        }
        out.push_back({C(static_cast<double>(z.real()), static_cast<double>(z.imag())), mult});
    }
    std::sort(out.begin(), out.end(), [](const ClusteredRoot& a, const ClusteredRoot& b) {
        if (a.value.real() != b.value.real()) return a.value.real() < b.value.real();
        return a.value.imag() < b.value.imag();
    });
    return out;
}

}  // namespace blowsphere

#include "blowsphere/factor.hpp"

#include <algorithm>
#include <optional>

namespace blowsphere {

namespace {

// Largest variable index occurring in either polynomial, or nullopt for constants.
std::optional<int> main_variable(const Polynomial& a, const Polynomial& b) {
    for (int v = a.nvars() - 1; v >= 0; --v)
        if (a.degree_in(v) > 0 || b.degree_in(v) > 0) return v;
    return std::nullopt;
}

// View f as a univariate polynomial in `var`: coefficient of var^k, with the
// var-slot zeroed so coefficients live in the remaining variables.
std::vector<Polynomial> coefficients_in(const Polynomial& f, int var) {
    int d = f.degree_in(var);
    std::vector<Polynomial> out(d + 1, Polynomial(f.nvars()));
    for (const auto& [e, c] : f.terms()) {
        Exponents r = e;
        int k = r[var];
        r[var] = 0;
        out[k].add_term(std::move(r), c);
    }
    return out;
}

Polynomial from_coefficients(const std::vector<Polynomial>& coeffs, int var, int nvars) {
    Polynomial out(nvars);
    for (int k = 0; k < static_cast<int>(coeffs.size()); ++k) {
        for (const auto& [e, c] : coeffs[k].terms()) {
            Exponents r = e;
            r[var] += k;
            out.add_term(std::move(r), c);
        }
    }
    return out;
}

Polynomial leading_coefficient_in(const Polynomial& f, int var) {
    auto cs = coefficients_in(f, var);
    return cs.back();
}

// Divide by the coefficient of the lex-smallest term, making it 1.
Polynomial normalize_unit(const Polynomial& f) {
    if (f.is_zero()) return f;
    const auto& lead = f.terms().begin()->second;
    return f * (GaussianRational(1) / lead);
}

// Remainder of a by b in `var` up to a factor free of `var`; the callers
// take primitive parts, so the exact lc(b)-power multiplier does not matter.
Polynomial pseudo_remainder(Polynomial a, const Polynomial& b, int var) {
    int db = b.degree_in(var);
    Polynomial lcb = leading_coefficient_in(b, var);
    while (!a.is_zero() && a.degree_in(var) >= db) {
        int d = a.degree_in(var);
        Polynomial lca = leading_coefficient_in(a, var);
        // a <- lc(b)*a - lc(a)*x^(d-db)*b
        Polynomial shift(a.nvars());
        Exponents e(a.nvars(), 0);
        e[var] = d - db;
        shift.add_term(std::move(e), GaussianRational(1));
        a = a * lcb - shift * lca * b;
    }
    return a;
}

Polynomial gcd_impl(const Polynomial& a, const Polynomial& b);

// Content of f in `var`: gcd of its coefficients (polynomials in the rest).
Polynomial content_in(const Polynomial& f, int var) {
    Polynomial acc(f.nvars());
    for (const auto& c : coefficients_in(f, var)) {
        if (c.is_zero()) continue;
        acc = acc.is_zero() ? normalize_unit(c) : gcd_impl(acc, c);
        if (acc.degree() == 0) break;
    }
    return acc;
}

Polynomial gcd_impl(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero()) return normalize_unit(b);
    if (b.is_zero()) return normalize_unit(a);
    auto var_opt = main_variable(a, b);
    if (!var_opt) return Polynomial::constant(a.nvars(), GaussianRational(1));
    int var = *var_opt;
    if (a.degree_in(var) == 0 || b.degree_in(var) == 0) {
        // One side is free of the main variable: gcd divides the other's content.
        const Polynomial& flat = a.degree_in(var) == 0 ? a : b;
        const Polynomial& tall = a.degree_in(var) == 0 ? b : a;
        return gcd_impl(flat, content_in(tall, var));
    }

    Polynomial ca = content_in(a, var);
    Polynomial cb = content_in(b, var);
    Polynomial pa = divide_exact(a, ca);
    Polynomial pb = divide_exact(b, cb);
    Polynomial cont_gcd = gcd_impl(ca, cb);

    // Primitive PRS on the primitive parts.
    Polynomial r0 = std::move(pa), r1 = std::move(pb);
    if (r0.degree_in(var) < r1.degree_in(var)) std::swap(r0, r1);
    while (!r1.is_zero() && r1.degree_in(var) > 0) {
        Polynomial r2 = pseudo_remainder(r0, r1, var);
        if (!r2.is_zero()) r2 = divide_exact(r2, content_in(r2, var));
        r0 = std::move(r1);
        r1 = std::move(r2);
    }
    if (!r1.is_zero()) return normalize_unit(cont_gcd);  // coprime in var
    Polynomial pp_gcd = divide_exact(r0, content_in(r0, var));
    return normalize_unit(cont_gcd * pp_gcd);
}

}  // namespace

Polynomial divide_exact(const Polynomial& a, const Polynomial& b) {
    if (b.is_zero()) throw std::domain_error("division by zero polynomial");
    if (a.is_zero()) return Polynomial(a.nvars());
    if (b.degree() == 0) return a * (GaussianRational(1) / b.terms().begin()->second);
    auto var_opt = main_variable(a, b);
    int var = *var_opt;
    if (b.degree_in(var) == 0) {
        // Divide coefficient-wise in a lower variable.
        auto cs = coefficients_in(a, var);
        for (auto& c : cs)
            if (!c.is_zero()) c = divide_exact(c, b);
        return from_coefficients(cs, var, a.nvars());
    }
    int db = b.degree_in(var);
    Polynomial lcb = leading_coefficient_in(b, var);
    Polynomial rem = a;
    std::vector<Polynomial> q(std::max(0, a.degree_in(var) - db) + 1, Polynomial(a.nvars()));
    while (!rem.is_zero() && rem.degree_in(var) >= db) {
        int d = rem.degree_in(var);
        Polynomial c = divide_exact(leading_coefficient_in(rem, var), lcb);
        q[d - db] = c;
        Polynomial shift(a.nvars());
        Exponents e(a.nvars(), 0);
        e[var] = d - db;
        shift.add_term(std::move(e), GaussianRational(1));
        rem -= shift * c * b;
        if (!rem.is_zero() && rem.degree_in(var) >= d)
            throw std::domain_error("inexact polynomial division");
    }
    if (!rem.is_zero()) throw std::domain_error("inexact polynomial division");
    return from_coefficients(q, var, a.nvars());
}

Polynomial gcd(const Polynomial& a, const Polynomial& b) {
    if (a.nvars() != b.nvars()) throw std::invalid_argument("variable count mismatch");
    return gcd_impl(a, b);
}

std::vector<std::pair<Polynomial, int>> squarefree_decomposition(const Polynomial& f) {
    if (f.is_zero()) throw ZeroPolynomialError();
    // d = gcd(f, all partials) carries every prime with multiplicity-1 exponent.
    Polynomial d = f;
    for (int v = 0; v < f.nvars(); ++v) {
        Polynomial fd = f.derivative(v);
        if (!fd.is_zero()) d = gcd(d, fd);
        if (d.degree() == 0) break;
    }
    d = normalize_unit(d);
    Polynomial w = normalize_unit(divide_exact(f, d));
    std::vector<std::pair<Polynomial, int>> parts;
    int mult = 1;
    while (w.degree() > 0) {
        Polynomial y = gcd(w, d);
        Polynomial piece = divide_exact(w, y);
        if (piece.degree() > 0) parts.emplace_back(normalize_unit(piece), mult);
        w = std::move(y);
        d = divide_exact(d, w);
        ++mult;
        if (mult > f.degree() + 1) throw std::logic_error("squarefree decomposition diverged");
    }
    return parts;
}

}  // namespace blowsphere

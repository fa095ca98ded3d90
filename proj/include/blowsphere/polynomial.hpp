#pragma once

#include "blowsphere/rational.hpp"

#include <complex>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace blowsphere {

using Exponents = std::vector<int>;

struct ZeroPolynomialError : std::domain_error {
    ZeroPolynomialError() : std::domain_error("undefined order: zero polynomial") {}
};

/// Sparse multivariate polynomial over Gaussian rationals. Terms map an
/// exponent vector (one entry per variable) to a nonzero coefficient; zero
/// coefficients are never stored.
class Polynomial {
public:
    using TermMap = std::map<Exponents, GaussianRational>;

    explicit Polynomial(int nvars = 2) : nvars_(nvars) {
        if (nvars < 1) throw std::invalid_argument("polynomial needs at least one variable");
    }

    static Polynomial constant(int nvars, GaussianRational c) {
        Polynomial p(nvars);
        p.add_term(Exponents(nvars, 0), std::move(c));
        return p;
    }
    static Polynomial variable(int nvars, int index, int power = 1) {
        if (index < 0 || index >= nvars) throw std::invalid_argument("variable index out of range");
        Polynomial p(nvars);
        Exponents e(nvars, 0);
        e[index] = power;
        p.add_term(std::move(e), GaussianRational(1));
        return p;
    }

    int nvars() const { return nvars_; }
    bool is_zero() const { return terms_.empty(); }
    const TermMap& terms() const { return terms_; }

    void add_term(Exponents e, GaussianRational c) {
        if (static_cast<int>(e.size()) != nvars_)
            throw std::invalid_argument("exponent vector length mismatch");
        for (int k : e)
            if (k < 0) throw std::invalid_argument("negative exponent");
        if (c.is_zero()) return;
        auto it = terms_.find(e);
        if (it == terms_.end()) {
            terms_.emplace(std::move(e), std::move(c));
        } else {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    GaussianRational coefficient(const Exponents& e) const {
        auto it = terms_.find(e);
        return it == terms_.end() ? GaussianRational() : it->second;
    }

    static int total_degree(const Exponents& e) {
        int d = 0;
        for (int k : e) d += k;
        return d;
    }

    /// Lowest total degree among the terms; the multiplicity m for V(f).
    int order_at_origin() const;
    /// Highest total degree among the terms.
    int degree() const;
    /// Degree in a single variable.
    int degree_in(int var) const;
    /// Sum of the minimal-degree terms, homogeneous of degree order_at_origin().
    Polynomial initial_form() const;

    bool is_homogeneous() const;
    bool vanishes_at_origin() const { return coefficient(Exponents(nvars_, 0)).is_zero(); }

    Polynomial derivative(int var) const;

    /// f(c1*x1, ..., cn*xn) with exact scalars.
    Polynomial scale_variables(std::span<const GaussianRational> scales) const;

    /// Partial evaluation: substitute an exact value for one variable. The
    /// result keeps the same variable count with that slot unused.
    Polynomial substitute_value(int var, const GaussianRational& value) const;

    /// Drop a variable that no longer occurs (degree_in(var) == 0).
    Polynomial drop_variable(int var) const;

    std::complex<double> eval(std::span<const std::complex<double>> point) const;

    Polynomial operator-() const;
    friend Polynomial operator+(const Polynomial& a, const Polynomial& b);
    friend Polynomial operator-(const Polynomial& a, const Polynomial& b);
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
    Polynomial& operator+=(const Polynomial& b) { return *this = *this + b; }
    Polynomial& operator-=(const Polynomial& b) { return *this = *this - b; }
    Polynomial& operator*=(const Polynomial& b) { return *this = *this * b; }
    friend Polynomial operator*(const Polynomial& a, const GaussianRational& c);
    friend bool operator==(const Polynomial& a, const Polynomial& b) {
        return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
    }
    friend bool operator!=(const Polynomial& a, const Polynomial& b) { return !(a == b); }

    std::string to_string(const std::vector<std::string>& var_names) const;

private:
    int nvars_;
    TermMap terms_;
};

struct HomogeneousDecomposition {
    /// (degree, part) sorted by strictly increasing degree; parts nonzero.
    std::vector<std::pair<int, Polynomial>> parts;
};

HomogeneousDecomposition homogeneous_decomposition(const Polynomial& f);

/// Variable-name conventions: {x, y} for plane curves, {z1..zn} in general.
std::vector<std::string> vars_xy();
std::vector<std::string> vars_zn(int n);

}  // namespace blowsphere

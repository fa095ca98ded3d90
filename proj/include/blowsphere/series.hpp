#pragma once

#include "blowsphere/polynomial.hpp"

#include <complex>
#include <map>
#include <span>
#include <vector>

namespace blowsphere {

using Complex = std::complex<double>;

/// Dense truncated power series in one variable over complex doubles;
/// coefficients are kept for exponents 0..trunc().
class PowerSeries {
public:
    explicit PowerSeries(int trunc) : c_(static_cast<size_t>(trunc) + 1, Complex(0.0)) {}

    int trunc() const { return static_cast<int>(c_.size()) - 1; }
    Complex operator[](int k) const { return k <= trunc() ? c_[k] : Complex(0.0); }
    void set(int k, Complex v) {
        if (k <= trunc()) c_[k] = v;
    }
    bool is_zero(double eps = 0.0) const;
    int order() const;  // lowest index with a nonzero coefficient, trunc()+1 if none

    PowerSeries resized(int trunc) const;

    friend PowerSeries operator+(const PowerSeries& a, const PowerSeries& b);
    friend PowerSeries operator-(const PowerSeries& a, const PowerSeries& b);
    friend PowerSeries operator*(const PowerSeries& a, const PowerSeries& b);
    PowerSeries operator*(Complex s) const;

    /// Multiplicative inverse; requires a nonzero constant term.
    PowerSeries inverse() const;

    Complex eval(Complex t) const;

private:
    std::vector<Complex> c_;
};

/// Sparse series with rational exponents k/denom, truncated so that only
/// exponents <= trunc_order are kept.
class FracSeries {
public:
    FracSeries(long denom, Rational trunc_order);

    static FracSeries zero(long denom, Rational trunc_order) { return {denom, trunc_order}; }
    static FracSeries monomial(const Rational& exponent, Complex coeff, Rational trunc_order);

    long denom() const { return denom_; }
    const Rational& trunc_order() const { return trunc_; }
    const std::map<long, Complex>& raw() const { return c_; }  // key = exponent * denom

    void add_term(const Rational& exponent, Complex coeff);
    bool is_zero(double eps = 0.0) const;
    /// Lexicographically first exponent with |coeff| > eps, if any.
    bool lowest(Rational& exponent, Complex& coeff, double eps = 0.0) const;
    double max_abs_coeff() const;

    FracSeries rebased(long denom, const Rational& trunc_order) const;

    friend FracSeries operator+(const FracSeries& a, const FracSeries& b);
    friend FracSeries operator*(const FracSeries& a, const FracSeries& b);
    FracSeries pow(int k) const;

    Complex eval(Complex t) const;

private:
    long denom_;
    Rational trunc_;
    std::map<long, Complex> c_;
};

/// Substitute one truncated fractional-power series per variable into f and
/// truncate the result at exponent N. Inputs must share a compatible
/// truncation (each >= N); the result is exact modulo terms above N.
FracSeries substitute_series(const Polynomial& f, std::span<const FracSeries> vars,
                             const Rational& N);

}  // namespace blowsphere

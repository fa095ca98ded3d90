#include "blowsphere/series.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace blowsphere {

bool PowerSeries::is_zero(double eps) const {
    return std::all_of(c_.begin(), c_.end(), [eps](Complex v) { return std::abs(v) <= eps; });
}

int PowerSeries::order() const {
    for (int k = 0; k <= trunc(); ++k)
        if (c_[k] != Complex(0.0)) return k;
    return trunc() + 1;
}

PowerSeries PowerSeries::resized(int trunc) const {
    PowerSeries out(trunc);
    int n = std::min(trunc, this->trunc());
    for (int k = 0; k <= n; ++k) out.c_[k] = c_[k];
    return out;
}

PowerSeries operator+(const PowerSeries& a, const PowerSeries& b) {
    PowerSeries out(std::min(a.trunc(), b.trunc()));
    for (int k = 0; k <= out.trunc(); ++k) out.c_[k] = a.c_[k] + b.c_[k];
    return out;
}

PowerSeries operator-(const PowerSeries& a, const PowerSeries& b) {
    PowerSeries out(std::min(a.trunc(), b.trunc()));
    for (int k = 0; k <= out.trunc(); ++k) out.c_[k] = a.c_[k] - b.c_[k];
    return out;
}

PowerSeries operator*(const PowerSeries& a, const PowerSeries& b) {
    PowerSeries out(std::min(a.trunc(), b.trunc()));
    for (int i = 0; i <= a.trunc() && i <= out.trunc(); ++i) {
        if (a.c_[i] == Complex(0.0)) continue;
        int jmax = std::min(b.trunc(), out.trunc() - i);
        for (int j = 0; j <= jmax; ++j) out.c_[i + j] += a.c_[i] * b.c_[j];
    }
    return out;
}

PowerSeries PowerSeries::operator*(Complex s) const {
    PowerSeries out(trunc());
    for (int k = 0; k <= trunc(); ++k) out.c_[k] = c_[k] * s;
    return out;
}

PowerSeries PowerSeries::inverse() const {
    if (c_[0] == Complex(0.0)) throw std::domain_error("series inverse needs a unit");
    PowerSeries out(trunc());
    out.c_[0] = 1.0 / c_[0];
    for (int k = 1; k <= trunc(); ++k) {
        Complex acc = 0.0;
        for (int j = 1; j <= k; ++j) acc += c_[j] * out.c_[k - j];
        out.c_[k] = -acc / c_[0];
    }
    return out;
}

Complex PowerSeries::eval(Complex t) const {
    Complex acc = 0.0;
    for (int k = trunc(); k >= 0; --k) acc = acc * t + c_[k];
    return acc;
}

FracSeries::FracSeries(long denom, Rational trunc_order)
    : denom_(denom), trunc_(std::move(trunc_order)) {
    if (denom < 1) throw std::invalid_argument("series denominator must be positive");
}

FracSeries FracSeries::monomial(const Rational& exponent, Complex coeff, Rational trunc_order) {
    long den = boost::multiprecision::denominator(exponent).convert_to<long>();
    FracSeries out(den, std::move(trunc_order));
    out.add_term(exponent, coeff);
    return out;
}

void FracSeries::add_term(const Rational& exponent, Complex coeff) {
    if (exponent > trunc_) return;
    Rational scaled = exponent * denom_;
    if (boost::multiprecision::denominator(scaled) != 1)
        throw std::invalid_argument("exponent denominator incompatible with series base");
    long key = boost::multiprecision::numerator(scaled).convert_to<long>();
    auto [it, inserted] = c_.emplace(key, coeff);
    if (!inserted) {
        it->second += coeff;
        if (it->second == Complex(0.0)) c_.erase(it);
    }
}

bool FracSeries::is_zero(double eps) const {
    return std::all_of(c_.begin(), c_.end(),
                       [eps](const auto& kv) { return std::abs(kv.second) <= eps; });
}

bool FracSeries::lowest(Rational& exponent, Complex& coeff, double eps) const {
    for (const auto& [k, v] : c_) {
        if (std::abs(v) > eps) {
            exponent = Rational(k, denom_);
            coeff = v;
            return true;
        }
    }
    return false;
}

double FracSeries::max_abs_coeff() const {
    double best = 0.0;
    for (const auto& [k, v] : c_) best = std::max(best, std::abs(v));
    return best;
}

FracSeries FracSeries::rebased(long denom, const Rational& trunc_order) const {
    FracSeries out(denom, trunc_order);
    for (const auto& [k, v] : c_) out.add_term(Rational(k, denom_), v);
    return out;
}

FracSeries operator+(const FracSeries& a, const FracSeries& b) {
    long den = std::lcm(a.denom_, b.denom_);
    FracSeries out(den, std::min(a.trunc_, b.trunc_));
    for (const auto& [k, v] : a.c_) out.add_term(Rational(k, a.denom_), v);
    for (const auto& [k, v] : b.c_) out.add_term(Rational(k, b.denom_), v);
    return out;
}

FracSeries operator*(const FracSeries& a, const FracSeries& b) {
    long den = std::lcm(a.denom_, b.denom_);
    FracSeries out(den, std::min(a.trunc_, b.trunc_));
    long sa = den / a.denom_, sb = den / b.denom_;
    long cutoff_num;
    {
        Rational edge = out.trunc_ * den;
        cutoff_num = boost::multiprecision::numerator(edge).convert_to<long>() /
                     boost::multiprecision::denominator(edge).convert_to<long>();
    }
    for (const auto& [ka, va] : a.c_) {
        for (const auto& [kb, vb] : b.c_) {
            long key = ka * sa + kb * sb;
            if (key > cutoff_num) continue;
            auto [it, inserted] = out.c_.emplace(key, va * vb);
            if (!inserted) {
                it->second += va * vb;
                if (it->second == Complex(0.0)) out.c_.erase(it);
            }
        }
    }
    return out;
}

FracSeries FracSeries::pow(int k) const {
    FracSeries out(denom_, trunc_);
    out.add_term(Rational(0), 1.0);
    FracSeries base = *this;
    while (k > 0) {
        if (k & 1) out = out * base;
        if (k >>= 1) base = base * base;
    }
    return out;
}

Complex FracSeries::eval(Complex t) const {
    // t^(1/denom) via the principal branch; adequate for the real positive
    // sample points used by the residual and witness checks.
    Complex base = std::pow(t, 1.0 / static_cast<double>(denom_));
    Complex acc = 0.0;
    for (const auto& [k, v] : c_) acc += v * std::pow(base, static_cast<double>(k));
    return acc;
}

FracSeries substitute_series(const Polynomial& f, std::span<const FracSeries> vars,
                             const Rational& N) {
    if (static_cast<int>(vars.size()) != f.nvars())
        throw std::invalid_argument("inconsistent variable count");
    long den = 1;
    for (const auto& s : vars) {
        if (s.trunc_order() < N)
            throw std::invalid_argument("input series truncated below requested order");
        den = std::lcm(den, s.denom());
    }
    std::vector<FracSeries> based;
    based.reserve(vars.size());
    for (const auto& s : vars) based.push_back(s.rebased(den, N));
    FracSeries acc(den, N);
    for (const auto& [e, c] : f.terms()) {
        FracSeries term(den, N);
        term.add_term(Rational(0), c.to_complex());
        for (int v = 0; v < f.nvars(); ++v)
            if (e[v] > 0) term = term * based[v].pow(e[v]);
        acc = acc + term;
    }
    return acc;
}

}  // namespace blowsphere

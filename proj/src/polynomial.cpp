#include "blowsphere/polynomial.hpp"

#include <algorithm>
#include <sstream>

namespace blowsphere {

int Polynomial::order_at_origin() const {
    if (terms_.empty()) throw ZeroPolynomialError();
    int best = -1;
    for (const auto& [e, c] : terms_) {
        int d = total_degree(e);
        if (best < 0 || d < best) best = d;
    }
    return best;
}

int Polynomial::degree() const {
    if (terms_.empty()) throw ZeroPolynomialError();
    int best = 0;
    for (const auto& [e, c] : terms_) best = std::max(best, total_degree(e));
    return best;
}

int Polynomial::degree_in(int var) const {
    int best = 0;
    for (const auto& [e, c] : terms_) best = std::max(best, e[var]);
    return best;
}

Polynomial Polynomial::initial_form() const {
    int m = order_at_origin();
    Polynomial out(nvars_);
    for (const auto& [e, c] : terms_)
        if (total_degree(e) == m) out.add_term(e, c);
    return out;
}

bool Polynomial::is_homogeneous() const {
    if (terms_.empty()) return true;
    int d = total_degree(terms_.begin()->first);
    for (const auto& [e, c] : terms_)
        if (total_degree(e) != d) return false;
    return true;
}

Polynomial Polynomial::derivative(int var) const {
    Polynomial out(nvars_);
    for (const auto& [e, c] : terms_) {
        if (e[var] == 0) continue;
        Exponents d = e;
        d[var] -= 1;
        out.add_term(std::move(d), c * GaussianRational(e[var]));
    }
    return out;
}

Polynomial Polynomial::scale_variables(std::span<const GaussianRational> scales) const {
    if (static_cast<int>(scales.size()) != nvars_)
        throw std::invalid_argument("scale vector length mismatch");
    Polynomial out(nvars_);
    for (const auto& [e, c] : terms_) {
        GaussianRational f = c;
        for (int v = 0; v < nvars_; ++v)
            if (e[v] > 0) f *= scales[v].pow(e[v]);
        out.add_term(e, std::move(f));
    }
    return out;
}

Polynomial Polynomial::substitute_value(int var, const GaussianRational& value) const {
    Polynomial out(nvars_);
    for (const auto& [e, c] : terms_) {
        Exponents d = e;
        int k = d[var];
        d[var] = 0;
        out.add_term(std::move(d), c * value.pow(k));
    }
    return out;
}

Polynomial Polynomial::drop_variable(int var) const {
    if (degree_in(var) != 0) throw std::invalid_argument("variable still occurs");
    Polynomial out(nvars_ - 1);
    for (const auto& [e, c] : terms_) {
        Exponents d;
        d.reserve(nvars_ - 1);
        for (int v = 0; v < nvars_; ++v)
            if (v != var) d.push_back(e[v]);
        out.add_term(std::move(d), c);
    }
    return out;
}

std::complex<double> Polynomial::eval(std::span<const std::complex<double>> point) const {
    if (static_cast<int>(point.size()) != nvars_)
        throw std::invalid_argument("evaluation point length mismatch");
    std::complex<double> acc = 0.0;
    for (const auto& [e, c] : terms_) {
        std::complex<double> t = c.to_complex();
        for (int v = 0; v < nvars_; ++v)
            for (int k = 0; k < e[v]; ++k) t *= point[v];
        acc += t;
    }
    return acc;
}

Polynomial Polynomial::operator-() const {
    Polynomial out(nvars_);
    for (const auto& [e, c] : terms_) out.terms_.emplace(e, -c);
    return out;
}

Polynomial operator+(const Polynomial& a, const Polynomial& b) {
    if (a.nvars_ != b.nvars_) throw std::invalid_argument("variable count mismatch");
    Polynomial out = a;
    for (const auto& [e, c] : b.terms_) out.add_term(e, c);
    return out;
}

Polynomial operator-(const Polynomial& a, const Polynomial& b) {
    if (a.nvars_ != b.nvars_) throw std::invalid_argument("variable count mismatch");
    Polynomial out = a;
    for (const auto& [e, c] : b.terms_) out.add_term(e, -c);
    return out;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.nvars_ != b.nvars_) throw std::invalid_argument("variable count mismatch");
    Polynomial out(a.nvars_);
    for (const auto& [ea, ca] : a.terms_) {
        for (const auto& [eb, cb] : b.terms_) {
            Exponents e(a.nvars_);
            for (int v = 0; v < a.nvars_; ++v) e[v] = ea[v] + eb[v];
            out.add_term(std::move(e), ca * cb);
        }
    }
    return out;
}

Polynomial operator*(const Polynomial& a, const GaussianRational& c) {
    Polynomial out(a.nvars_);
    if (c.is_zero()) return out;
    for (const auto& [e, k] : a.terms_) out.terms_.emplace(e, k * c);
    return out;
}

HomogeneousDecomposition homogeneous_decomposition(const Polynomial& f) {
    std::map<int, Polynomial> by_degree;
    for (const auto& [e, c] : f.terms()) {
        int d = Polynomial::total_degree(e);
        auto it = by_degree.find(d);
        if (it == by_degree.end()) it = by_degree.emplace(d, Polynomial(f.nvars())).first;
        it->second.add_term(e, c);
    }
    HomogeneousDecomposition out;
    for (auto& [d, p] : by_degree) out.parts.emplace_back(d, std::move(p));
    return out;
}

namespace {

// Rational coefficient in a grammar-compatible spelling ("3", "1/2").
std::string rational_str(const Rational& r, bool negate) {
    Rational v = negate ? Rational(-r) : r;
    std::ostringstream os;
    os << v;
    return os.str();
}

// Coefficient piece placed in front of a monomial; empty when the factor is 1.
// `negate` folds the sign into the surrounding "+/-" separator when possible.
std::string coefficient_str(const GaussianRational& c, bool negate, bool lone) {
    if (c.is_real()) {
        if (!lone && (negate ? -c.re : c.re) == 1) return "";
        return rational_str(c.re, negate);
    }
    if (c.re == 0) {
        Rational v = negate ? Rational(-c.im) : c.im;
        if (v == 1) return "i";
        if (v == -1) return "-i";
        return rational_str(c.im, negate) + "*i";
    }
    // Mixed coefficient: parenthesized sum, sign kept inside.
    GaussianRational v = negate ? -c : c;
    std::string s = "(" + rational_str(v.re, false);
    if (v.im > 0)
        s += " + " + (v.im == 1 ? std::string("i") : rational_str(v.im, false) + "*i");
    else
        s += " - " + (v.im == -1 ? std::string("i") : rational_str(v.im, true) + "*i");
    return s + ")";
}

}  // namespace

std::string Polynomial::to_string(const std::vector<std::string>& var_names) const {
    if (static_cast<int>(var_names.size()) != nvars_)
        throw std::invalid_argument("variable name list length mismatch");
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : terms_) {
        // A term leads with '-' only when its printable sign is negative:
        // real part negative, or zero real part with negative imaginary part.
        bool neg = c.is_real() ? c.re < 0 : (c.re == 0 && c.im < 0);
        if (first) {
            if (neg) os << "-";
            first = false;
        } else {
            os << (neg ? " - " : " + ");
        }
        std::string mono;
        for (int v = 0; v < nvars_; ++v) {
            if (e[v] == 0) continue;
            if (!mono.empty()) mono += "*";
            mono += var_names[v];
            if (e[v] > 1) mono += "^" + std::to_string(e[v]);
        }
        std::string coeff = coefficient_str(c, neg, mono.empty());
        if (coeff.empty())
            os << mono;
        else if (mono.empty())
            os << coeff;
        else
            os << coeff << "*" << mono;
    }
    return os.str();
}

std::vector<std::string> vars_xy() { return {"x", "y"}; }

std::vector<std::string> vars_zn(int n) {
    std::vector<std::string> out;
    out.reserve(n);
    for (int k = 1; k <= n; ++k) out.push_back("z" + std::to_string(k));
    return out;
}

}  // namespace blowsphere

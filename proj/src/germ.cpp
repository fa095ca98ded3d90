#include "blowsphere/germ.hpp"

#include "blowsphere/factor.hpp"
#include "blowsphere/parser.hpp"

#include <algorithm>
#include <climits>
#include <cmath>
#include <numeric>
#include <sstream>

namespace blowsphere {

namespace {

// The two relative-multiplicity routes must agree line by line.
void cross_check_cone(const Polynomial& f, const TangentCone& cone) {
    auto form_lines = cone_lines(f.initial_form());
    if (form_lines.size() != cone.lines.size())
        throw PuiseuxError("cone component count disagrees between routes");
    for (size_t k = 0; k < form_lines.size(); ++k) {
        if (!same_line(form_lines[k].direction, cone.lines[k].direction, 1e-6) ||
            form_lines[k].exponent != cone.lines[k].exponent)
            throw PuiseuxError("cone data disagrees between the branch and initial-form routes");
    }
}

GermReport analyze_plane(const Polynomial& f, const AnalyzeOptions& opts) {
    GermReport report;
    report.kind = GermKind::plane_curve;
    report.nvars = 2;
    report.source = f.to_string(vars_xy());
    report.branches = puiseux_branches(f, opts.truncation_terms);
    report.cone = relative_multiplicities(report.branches);
    report.multiplicity = f.order_at_origin();
    report.identity_ok = multiplicity_identity_check(f, report.cone);
    if (!report.identity_ok)
        throw PuiseuxError("relative multiplicities do not add up to the multiplicity");
    cross_check_cone(f, report.cone);
    report.smooth = report.multiplicity == 1;
    report.regularity = regularity_obstruction(report);
    return report;
}

GermReport analyze_hypersurface(const Polynomial& f) {
    if (!f.vanishes_at_origin()) throw NotVanishingError();
    GermReport report;
    report.kind = GermKind::hypersurface;
    report.nvars = f.nvars();
    report.source = f.to_string(vars_zn(f.nvars()));
    report.multiplicity = f.order_at_origin();

    // Reduced as a germ: no repeated factor through the origin.
    for (const auto& [part, mult] : squarefree_decomposition(f))
        if (mult >= 2 && part.vanishes_at_origin()) throw NonReducedError();

    int identity_total = 0;
    for (const auto& [part, mult] : squarefree_decomposition(f.initial_form())) {
        ConeComponentReport entry;
        entry.component = part.to_string(vars_zn(f.nvars()));
        entry.k = mult;
        entry.component_multiplicity = part.order_at_origin();
        entry.unverified = true;
        identity_total += entry.k * entry.component_multiplicity;
        report.cone_components.push_back(std::move(entry));
    }
    report.identity_ok = identity_total == report.multiplicity;
    if (!report.identity_ok)
        throw PuiseuxError("initial-form decomposition does not add up to the multiplicity");
    report.smooth = report.multiplicity == 1;
    report.regularity = regularity_obstruction(report);
    return report;
}

int branch_order(const Branch& b) {
    int ord = INT_MAX;
    for (const auto& comp : b.components)
        if (!comp.empty()) ord = std::min(ord, comp.front().exp);
    if (ord == INT_MAX) throw std::invalid_argument("branch with all components zero");
    return ord;
}

std::vector<Complex> branch_tangent(const Branch& b, int m) {
    std::vector<Complex> v(b.components.size(), Complex(0.0));
    for (size_t k = 0; k < b.components.size(); ++k)
        for (const BranchTerm& t : b.components[k])
            if (t.exp == m) v[k] = t.coeff;
    return canonical_direction(std::move(v));
}

// Two parametrizations describe the same branch when one is the other
// reparametrized by t -> rho t.
bool duplicate_branches(const Branch& a, const Branch& b) {
    if (a.components.size() != b.components.size()) return false;
    if (a.multiplicity != b.multiplicity) return false;
    if (!same_line(a.tangent, b.tangent, 1e-7)) return false;
    int m = a.multiplicity;
    Complex la = 0.0, lb = 0.0;
    size_t lead_comp = 0;
    for (size_t k = 0; k < a.components.size(); ++k) {
        for (const BranchTerm& t : a.components[k])
            if (t.exp == m && std::abs(t.coeff) > 1e-9) {
                la = t.coeff;
                lead_comp = k;
            }
    }
    for (const BranchTerm& t : b.components[lead_comp])
        if (t.exp == m) lb = t.coeff;
    if (std::abs(la) < 1e-12 || std::abs(lb) < 1e-12) return false;
    // rho^m = lb/la fixes rho up to an m-th root of unity.
    Complex base = std::pow(lb / la, 1.0 / static_cast<double>(m));
    for (int j = 0; j < m; ++j) {
        Complex rho = base * std::polar(1.0, 2.0 * M_PI * j / m);
        bool match = true;
        for (size_t k = 0; k < a.components.size() && match; ++k) {
            std::map<int, Complex> bt;
            for (const BranchTerm& t : b.components[k]) bt[t.exp] = t.coeff;
            for (const BranchTerm& t : a.components[k]) {
                Complex want = t.coeff * std::pow(rho, t.exp);
                Complex have = bt.count(t.exp) ? bt[t.exp] : Complex(0.0);
                if (std::abs(want - have) > 1e-7 * std::max(1.0, std::abs(want))) {
                    match = false;
                    break;
                }
            }
            if (bt.size() != a.components[k].size()) match = false;
        }
        if (match) return true;
    }
    return false;
}

}  // namespace

GermReport analyze(const Polynomial& f, const AnalyzeOptions& opts) {
    if (f.is_zero()) throw ZeroPolynomialError();
    if (!f.vanishes_at_origin()) throw NotVanishingError();
    if (f.nvars() == 2) return analyze_plane(f, opts);
    return analyze_hypersurface(f);
}

GermReport analyze_parametrized(std::vector<Branch> branches, const std::string& source) {
    if (branches.empty()) throw std::invalid_argument("no branches given");
    size_t n = branches[0].components.size();
    for (Branch& b : branches) {
        if (b.components.size() != n)
            throw std::invalid_argument("branches with inconsistent ambient dimension");
        int m = branch_order(b);
        b.multiplicity = m;
        b.ramification = m;  // aligned-coordinate ramification of a primitive branch
        b.tangent = branch_tangent(b, m);
        b.truncation_order = Rational(INT_MAX / 4);
        b.exact = true;
    }
    for (size_t i = 0; i < branches.size(); ++i)
        for (size_t j = i + 1; j < branches.size(); ++j)
            if (duplicate_branches(branches[i], branches[j])) throw NonReducedError();

    GermReport report;
    report.kind = GermKind::parametrized_curve;
    report.nvars = static_cast<int>(n);
    report.source = source;
    report.branches = std::move(branches);
    std::sort(report.branches.begin(), report.branches.end(),
              [](const Branch& a, const Branch& b) {
                  for (size_t k = 0; k < std::min(a.tangent.size(), b.tangent.size()); ++k) {
                      if (a.tangent[k].real() != b.tangent[k].real())
                          return a.tangent[k].real() < b.tangent[k].real();
                      if (a.tangent[k].imag() != b.tangent[k].imag())
                          return a.tangent[k].imag() < b.tangent[k].imag();
                  }
                  return a.multiplicity < b.multiplicity;
              });
    report.cone = relative_multiplicities(report.branches);
    report.multiplicity = report.cone.total_k();
    report.identity_ok = true;  // the multiplicity of a curve is the sum over branches
    report.smooth = report.multiplicity == 1;
    report.regularity = regularity_obstruction(report);
    return report;
}

Regularity regularity_obstruction(const GermReport& report) {
    return report.multiplicity == 1 ? Regularity::smooth
                                    : Regularity::not_blow_spherical_regular;
}

std::vector<Branch> parse_parametrization(const std::string& text) {
    std::vector<Branch> out;
    std::istringstream in(text);
    std::string line;
    size_t ncomp = 0;
    while (std::getline(in, line)) {
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        bool blank = std::all_of(line.begin(), line.end(),
                                 [](unsigned char c) { return std::isspace(c); });
        if (blank) continue;
        Branch b;
        size_t start = 0;
        int depth = 0;
        std::vector<std::string> pieces;
        for (size_t k = 0; k <= line.size(); ++k) {
            if (k == line.size() || (line[k] == ',' && depth == 0)) {
                pieces.push_back(line.substr(start, k - start));
                start = k + 1;
            } else if (line[k] == '(') {
                ++depth;
            } else if (line[k] == ')') {
                --depth;
            }
        }
        if (pieces.size() < 2)
            throw std::invalid_argument("a branch needs at least two components");
        if (ncomp == 0) ncomp = pieces.size();
        if (pieces.size() != ncomp)
            throw std::invalid_argument("branches with inconsistent component counts");
        long expo_gcd = 0;
        for (const std::string& piece : pieces) {
            Polynomial p = parse_polynomial(piece, {"t"});
            std::vector<BranchTerm> comp;
            for (const auto& [e, c] : p.terms()) {
                if (e[0] == 0)
                    throw std::invalid_argument("parametrization must pass through the origin");
                comp.push_back({e[0], c.to_complex()});
                expo_gcd = std::gcd(expo_gcd, static_cast<long>(e[0]));
            }
            b.components.push_back(std::move(comp));
        }
        bool nonzero = false;
        for (const auto& comp : b.components) nonzero = nonzero || !comp.empty();
        if (!nonzero) throw std::invalid_argument("zero parametrization");
        if (expo_gcd > 1) {
            // Reduce a g-fold cover to a primitive parametrization.
            for (auto& comp : b.components)
                for (BranchTerm& t : comp) t.exp = static_cast<int>(t.exp / expo_gcd);
        }
        out.push_back(std::move(b));
    }
    if (out.empty()) throw std::invalid_argument("no branches given");
    return out;
}

std::string regularity_name(Regularity r) {
    return r == Regularity::smooth ? "smooth" : "not-blow-spherical-regular";
}

namespace {

nlohmann::ordered_json direction_to_json(const std::vector<Complex>& v) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const Complex& c : v) {
        arr.push_back(c.real());
        arr.push_back(c.imag());
    }
    return arr;
}

nlohmann::ordered_json branch_to_json(const Branch& b) {
    nlohmann::ordered_json j;
    j["e"] = b.ramification;
    j["multiplicity"] = b.multiplicity;
    j["tangent"] = direction_to_json(b.tangent);
    nlohmann::ordered_json series = nlohmann::ordered_json::array();
    for (const auto& [expo, coeff] : b.fractional_series()) {
        series.push_back(nlohmann::ordered_json::array(
            {boost::multiprecision::numerator(expo).convert_to<long>(),
             boost::multiprecision::denominator(expo).convert_to<long>(), coeff.real(),
             coeff.imag()}));
    }
    j["series"] = std::move(series);
    nlohmann::ordered_json comps = nlohmann::ordered_json::array();
    for (const auto& comp : b.components) {
        nlohmann::ordered_json one = nlohmann::ordered_json::array();
        for (const BranchTerm& t : comp)
            one.push_back(nlohmann::ordered_json::array({t.exp, t.coeff.real(), t.coeff.imag()}));
        comps.push_back(std::move(one));
    }
    j["components"] = std::move(comps);
    j["exact"] = b.exact;
    return j;
}

}  // namespace

nlohmann::ordered_json report_to_json(const GermReport& report) {
    nlohmann::ordered_json j;
    j["multiplicity"] = report.multiplicity;
    nlohmann::ordered_json cone = nlohmann::ordered_json::array();
    if (report.is_curve()) {
        for (size_t k = 0; k < report.cone.lines.size(); ++k) {
            nlohmann::ordered_json line;
            line["direction"] = direction_to_json(report.cone.lines[k].direction);
            line["k"] = report.cone.relative_mult[k];
            cone.push_back(std::move(line));
        }
    } else {
        for (const ConeComponentReport& c : report.cone_components) {
            nlohmann::ordered_json entry;
            entry["component"] = c.component;
            entry["k"] = c.k;
            entry["component_multiplicity"] = c.component_multiplicity;
            entry["unverified"] = c.unverified;
            cone.push_back(std::move(entry));
        }
    }
    j["cone"] = std::move(cone);
    nlohmann::ordered_json branches = nlohmann::ordered_json::array();
    for (const Branch& b : report.branches) branches.push_back(branch_to_json(b));
    j["branches"] = std::move(branches);
    j["identity_ok"] = report.identity_ok;
    j["smooth"] = report.smooth;
    j["regularity"] = regularity_name(report.regularity);
    j["source"] = report.source;
    j["nvars"] = report.nvars;
    j["kind"] = report.kind == GermKind::plane_curve        ? "plane-curve"
                : report.kind == GermKind::hypersurface     ? "hypersurface"
                                                            : "parametrized-curve";
    return j;
}

}  // namespace blowsphere

#include "blowsphere/classify.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>
#include <stdexcept>

namespace blowsphere {

namespace {

// Branch indices grouped by tangent line, each group sorted by multiplicity.
std::vector<std::vector<int>> tangent_groups(const GermReport& report) {
    std::vector<std::vector<int>> groups;
    std::vector<std::vector<Complex>> dirs;
    for (int i = 0; i < static_cast<int>(report.branches.size()); ++i) {
        const Branch& b = report.branches[i];
        bool placed = false;
        for (size_t g = 0; g < dirs.size(); ++g) {
            if (same_line(dirs[g], b.tangent)) {
                groups[g].push_back(i);
                placed = true;
                break;
            }
        }
        if (!placed) {
            dirs.push_back(b.tangent);
            groups.push_back({i});
        }
    }
    for (auto& g : groups)
        std::sort(g.begin(), g.end(), [&](int a, int b) {
            return report.branches[a].multiplicity < report.branches[b].multiplicity;
        });
    return groups;
}

std::vector<int> group_multiplicities(const GermReport& report, const std::vector<int>& group) {
    std::vector<int> out;
    out.reserve(group.size());
    for (int i : group) out.push_back(report.branches[i].multiplicity);
    return out;
}

void require_curve(const GermReport& r, const char* who) {
    if (!r.is_curve())
        throw std::invalid_argument(std::string(who) + " expects curve germ reports");
}

std::vector<std::vector<BranchTerm>> rotate_components(
    const std::vector<std::vector<BranchTerm>>& comps,
    const std::vector<std::vector<Complex>>& u) {
    size_t n = comps.size();
    std::vector<std::map<int, Complex>> acc(n);
    for (size_t row = 0; row < n; ++row)
        for (size_t col = 0; col < n; ++col) {
            if (std::abs(u[row][col]) == 0.0) continue;
            for (const BranchTerm& t : comps[col]) acc[row][t.exp] += u[row][col] * t.coeff;
        }
    std::vector<std::vector<BranchTerm>> out(n);
    for (size_t row = 0; row < n; ++row) {
        double scale = 0.0;
        for (const auto& [e, c] : acc[row]) scale = std::max(scale, std::abs(c));
        for (const auto& [e, c] : acc[row])
            if (std::abs(c) > 1e-12 * std::max(1.0, scale)) out[row].push_back({e, c});
    }
    return out;
}

}  // namespace

std::string Signature::to_string() const {
    std::ostringstream os;
    os << "{";
    for (size_t g = 0; g < groups.size(); ++g) {
        os << (g ? "," : "") << "{";
        for (size_t k = 0; k < groups[g].size(); ++k) os << (k ? "," : "") << groups[g][k];
        os << "}";
    }
    os << "}";
    return os.str();
}

int Signature::total_multiplicity() const {
    int s = 0;
    for (const auto& g : groups)
        for (int m : g) s += m;
    return s;
}

int Signature::branch_count() const {
    int s = 0;
    for (const auto& g : groups) s += static_cast<int>(g.size());
    return s;
}

Signature signature(const GermReport& report) {
    require_curve(report, "signature");
    Signature sig;
    for (const auto& group : tangent_groups(report))
        sig.groups.push_back(group_multiplicities(report, group));
    for (auto& g : sig.groups) std::sort(g.begin(), g.end());
    std::sort(sig.groups.begin(), sig.groups.end());
    return sig;
}

std::vector<std::vector<Complex>> rotation_to_first_axis(const std::vector<Complex>& dir) {
    size_t n = dir.size();
    // Orthonormal basis with the direction first, rows conjugated so that
    // U * dir = e1 under the hermitian pairing.
    std::vector<std::vector<Complex>> basis;
    basis.push_back(dir);
    for (size_t cand = 0; cand < n && basis.size() < n; ++cand) {
        std::vector<Complex> v(n, Complex(0.0));
        v[cand] = 1.0;
        for (const auto& b : basis) {
            Complex ip = 0.0;
            for (size_t k = 0; k < n; ++k) ip += v[k] * std::conj(b[k]);
            for (size_t k = 0; k < n; ++k) v[k] -= ip * b[k];
        }
        double norm2 = 0.0;
        for (const Complex& c : v) norm2 += std::norm(c);
        if (norm2 < 1e-12) continue;
        double inv = 1.0 / std::sqrt(norm2);
        for (Complex& c : v) c *= inv;
        basis.push_back(std::move(v));
    }
    if (basis.size() != n) throw std::logic_error("failed to complete a unitary basis");
    std::vector<std::vector<Complex>> u(n, std::vector<Complex>(n));
    for (size_t r = 0; r < n; ++r)
        for (size_t c = 0; c < n; ++c) u[r][c] = std::conj(basis[r][c]);
    return u;
}

std::vector<WitnessPair> witness(const GermReport& X, const GermReport& Y,
                                 const std::vector<std::pair<int, int>>& sigma) {
    require_curve(X, "witness");
    require_curve(Y, "witness");
    if (sigma.empty()) throw std::invalid_argument("witness called without a branch bijection");
    std::vector<WitnessPair> out;
    out.reserve(sigma.size());
    for (const auto& [i, j] : sigma) {
        const Branch& bx = X.branches.at(static_cast<size_t>(i));
        const Branch& by = Y.branches.at(static_cast<size_t>(j));
        if (bx.multiplicity != by.multiplicity)
            throw std::invalid_argument("witness pairing must preserve multiplicities");
        WitnessPair pair;
        pair.x_branch = i;
        pair.y_branch = j;
        pair.e = bx.multiplicity;
        pair.x_rotation = rotation_to_first_axis(bx.tangent);
        pair.y_rotation = rotation_to_first_axis(by.tangent);
        pair.x_aligned = rotate_components(bx.components, pair.x_rotation);
        pair.y_aligned = rotate_components(by.components, pair.y_rotation);
        out.push_back(std::move(pair));
    }
    return out;
}

EquivalenceDecision equivalent(const GermReport& X, const GermReport& Y) {
    require_curve(X, "equivalent");
    require_curve(Y, "equivalent");
    EquivalenceDecision d;
    Signature sx = signature(X);
    Signature sy = signature(Y);
    if (sx.total_multiplicity() != sy.total_multiplicity()) {
        d.certificate = "total multiplicity differs: " +
                        std::to_string(sx.total_multiplicity()) + " vs " +
                        std::to_string(sy.total_multiplicity());
        return d;
    }
    if (sx.branch_count() != sy.branch_count()) {
        d.certificate = "branch count differs: " + std::to_string(sx.branch_count()) + " vs " +
                        std::to_string(sy.branch_count());
        return d;
    }
    if (sx.groups.size() != sy.groups.size()) {
        d.certificate = "tangent line count differs: " + std::to_string(sx.groups.size()) +
                        " vs " + std::to_string(sy.groups.size());
        return d;
    }
    if (!(sx == sy)) {
        d.certificate = "tangent-grouped multiplicities differ: " + sx.to_string() + " vs " +
                        sy.to_string();
        return d;
    }
    d.equivalent = true;

    // Group-respecting, multiplicity-preserving branch bijection: both group
    // lists are matched in the canonical order of their multiplicity multisets.
    auto gx = tangent_groups(X);
    auto gy = tangent_groups(Y);
    auto key = [](const GermReport& r, const std::vector<int>& g) {
        std::vector<int> k;
        for (int i : g) k.push_back(r.branches[static_cast<size_t>(i)].multiplicity);
        return k;
    };
    std::sort(gx.begin(), gx.end(), [&](const auto& a, const auto& b) {
        return key(X, a) < key(X, b);
    });
    std::sort(gy.begin(), gy.end(), [&](const auto& a, const auto& b) {
        return key(Y, a) < key(Y, b);
    });
    for (size_t g = 0; g < gx.size(); ++g)
        for (size_t k = 0; k < gx[g].size(); ++k) d.sigma.emplace_back(gx[g][k], gy[g][k]);
    std::sort(d.sigma.begin(), d.sigma.end());
    d.witness = witness(X, Y, d.sigma);
    return d;
}

nlohmann::ordered_json decision_to_json(const EquivalenceDecision& d) {
    nlohmann::ordered_json j;
    j["equivalent"] = d.equivalent;
    if (d.equivalent) {
        nlohmann::ordered_json sigma = nlohmann::ordered_json::array();
        for (const auto& [a, b] : d.sigma)
            sigma.push_back(nlohmann::ordered_json::array({a, b}));
        j["sigma"] = std::move(sigma);
        j["certificate"] = nullptr;
        nlohmann::ordered_json wit = nlohmann::ordered_json::array();
        for (const WitnessPair& p : d.witness) {
            nlohmann::ordered_json pj;
            pj["x_branch"] = p.x_branch;
            pj["y_branch"] = p.y_branch;
            pj["e"] = p.e;
            auto matrix = [](const std::vector<std::vector<Complex>>& m) {
                nlohmann::ordered_json out = nlohmann::ordered_json::array();
                for (const auto& row : m) {
                    nlohmann::ordered_json r = nlohmann::ordered_json::array();
                    for (const Complex& c : row) {
                        r.push_back(c.real());
                        r.push_back(c.imag());
                    }
                    out.push_back(std::move(r));
                }
                return out;
            };
            auto comps = [](const std::vector<std::vector<BranchTerm>>& cs) {
                nlohmann::ordered_json out = nlohmann::ordered_json::array();
                for (const auto& comp : cs) {
                    nlohmann::ordered_json c = nlohmann::ordered_json::array();
                    for (const BranchTerm& t : comp)
                        c.push_back(
                            nlohmann::ordered_json::array({t.exp, t.coeff.real(), t.coeff.imag()}));
                    out.push_back(std::move(c));
                }
                return out;
            };
            pj["x_rotation"] = matrix(p.x_rotation);
            pj["y_rotation"] = matrix(p.y_rotation);
            pj["x_aligned"] = comps(p.x_aligned);
            pj["y_aligned"] = comps(p.y_aligned);
            wit.push_back(std::move(pj));
        }
        j["witness"] = std::move(wit);
    } else {
        j["sigma"] = nullptr;
        j["certificate"] = d.certificate;
        j["witness"] = nullptr;
    }
    return j;
}

}  // namespace blowsphere

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "blowsphere/classify.hpp"
#include "blowsphere/parser.hpp"

#include <cmath>
#include <random>

using namespace blowsphere;

namespace {

Polynomial P(const std::string& text) { return parse_polynomial(text, vars_xy()); }
GermReport R(const std::string& text) { return analyze(P(text)); }

Signature sig_of(std::vector<std::vector<int>> groups) {
    Signature s;
    s.groups = std::move(groups);
    for (auto& g : s.groups) std::sort(g.begin(), g.end());
    std::sort(s.groups.begin(), s.groups.end());
    return s;
}

std::vector<Complex> eval_terms(const std::vector<std::vector<BranchTerm>>& comps, Complex t) {
    std::vector<Complex> out;
    for (const auto& c : comps) out.push_back(eval_component(c, t));
    return out;
}

double norm_of(const std::vector<Complex>& v) {
    double s = 0.0;
    for (const Complex& c : v) s += std::norm(c);
    return std::sqrt(s);
}

// Transverse fraction: distance to the aligned tangent line over the norm.
double drift_off_axis(const std::vector<Complex>& v) {
    double total = norm_of(v);
    double trans = 0.0;
    for (size_t k = 1; k < v.size(); ++k) trans += std::norm(v[k]);
    return std::sqrt(trans) / total;
}

}  // namespace

TEST_CASE("signatures of the reference germs") {
    CHECK(signature(R("y^2 - x^3")) == sig_of({{2}}));
    CHECK(signature(R("y*(y - x^2)")) == sig_of({{1, 1}}));
    CHECK(signature(R("y*(y - x)")) == sig_of({{1}, {1}}));
    CHECK(signature(R("(y^2 - x^3)*(y - 2*x)")) == sig_of({{2}, {1}}));
    CHECK(signature(R("(y^2 - x^3)*(y^2 - x^5)")) == sig_of({{2, 2}}));
}

TEST_CASE("the two cusps are equivalent") {
    EquivalenceDecision d = equivalent(R("y^2 - x^3"), R("y^2 - x^5"));
    CHECK(d.equivalent);
    REQUIRE(d.sigma.size() == 1);
    CHECK(d.certificate.empty());
    REQUIRE(d.witness.size() == 1);
    CHECK(d.witness[0].e == 2);
}

TEST_CASE("cusp and smooth line are not equivalent") {
    EquivalenceDecision d = equivalent(R("y^2 - x^3"), R("y"));
    CHECK(!d.equivalent);
    CHECK(!d.certificate.empty());
    CHECK(d.sigma.empty());
}

TEST_CASE("equal multiplicity does not force equivalence") {
    // Both germs have multiplicity two; the tangent grouping differs.
    EquivalenceDecision d = equivalent(R("y*(y - x^2)"), R("y*(y - x)"));
    CHECK(!d.equivalent);
    CHECK(d.certificate.find("tangent") != std::string::npos);
}

TEST_CASE("witness pairs the cusps with their standard parametrizations") {
    GermReport x = R("y^2 - x^3");
    GermReport y = R("y^2 - x^5");
    EquivalenceDecision d = equivalent(x, y);
    REQUIRE(d.equivalent);
    const WitnessPair& p = d.witness[0];
    // Aligned first components start at t^2; the transverse parts at t^3 / t^5.
    REQUIRE(!p.x_aligned[0].empty());
    CHECK(p.x_aligned[0].front().exp == 2);
    CHECK(p.y_aligned[0].front().exp == 2);
    REQUIRE(!p.x_aligned[1].empty());
    CHECK(p.x_aligned[1].front().exp == 3);
    CHECK(p.y_aligned[1].front().exp == 5);
}

TEST_CASE("self-classification is the identity pairing") {
    GermReport x = R("(y^2 - x^3)*(y - 2*x)");
    EquivalenceDecision d = equivalent(x, x);
    REQUIRE(d.equivalent);
    for (const auto& [i, j] : d.sigma) CHECK(i == j);
}

TEST_CASE("composite germs pair cusp with cusp and line with line") {
    GermReport x = R("(y^2 - x^3)*(y - 2*x)");
    GermReport y = R("(y^2 - x^5)*(y - x)");
    EquivalenceDecision d = equivalent(x, y);
    REQUIRE(d.equivalent);
    for (const auto& [i, j] : d.sigma)
        CHECK(x.branches[i].multiplicity == y.branches[j].multiplicity);
}

TEST_CASE("plane and space cusps classify together") {
    GermReport plane = R("y^2 - x^3");
    GermReport space = analyze_parametrized(parse_parametrization("t^2, t^3, t^4\n"), "space");
    EquivalenceDecision d = equivalent(plane, space);
    CHECK(d.equivalent);
}

TEST_CASE("hypersurface reports are rejected") {
    auto brieskorn = parse_auto("z1^3 - z2^2 - z3^2 - z4^2");
    GermReport h = analyze(brieskorn.poly);
    CHECK_THROWS_AS(equivalent(h, h), std::invalid_argument);
}

TEST_CASE("equivalence laws and verdict consequences on a small corpus") {
    const char* corpus[] = {
        "y",          "y - 2*x",         "y^2 - x^3",       "y^2 - x^5",
        "y^2 - x^2",  "y^2 - x^2 - x^3", "y*(y - x^2)",     "y*(y - x)",
        "x^2 + y^2",  "(y^2 - x^3)*(y - 2*x)", "y^3 - x^4", "y^3 - x^5",
        "x*y",        "(y - x^2)*(y + x^2)",
    };
    std::vector<GermReport> reports;
    for (const char* text : corpus) reports.push_back(R(text));
    size_t n = reports.size();
    std::vector<std::vector<bool>> eq(n, std::vector<bool>(n));
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = 0; j < n; ++j) {
            EquivalenceDecision d = equivalent(reports[i], reports[j]);
            eq[i][j] = d.equivalent;
            if (d.equivalent) {
                // Consequences of the invariance of the relative multiplicities.
                Signature si = signature(reports[i]), sj = signature(reports[j]);
                CHECK(si.total_multiplicity() == sj.total_multiplicity());
                CHECK(si.branch_count() == sj.branch_count());
                CHECK(si.groups.size() == sj.groups.size());
            }
        }
    }
    for (size_t i = 0; i < n; ++i) {
        CHECK(eq[i][i]);  // reflexive
        for (size_t j = 0; j < n; ++j) {
            CHECK(eq[i][j] == eq[j][i]);  // symmetric
            for (size_t k = 0; k < n; ++k)
                if (eq[i][j] && eq[j][k]) CHECK(eq[i][k]);  // transitive
        }
    }
    // Spot checks: the node in three guises.
    CHECK(eq[4][7]);   // y^2-x^2 vs y(y-x)
    CHECK(eq[4][8]);   // y^2-x^2 vs x^2+y^2 (complex tangent lines)
    CHECK(eq[4][12]);  // y^2-x^2 vs xy
    CHECK(!eq[2][0]);  // cusp vs line
    CHECK(eq[2][3]);   // the two cusps
}

TEST_CASE("scaling invariance under linear maps") {
    std::mt19937 rng(41);
    std::uniform_int_distribution<long> num(1, 9);
    std::uniform_int_distribution<int> sign(0, 1);
    const char* corpus[] = {"y^2 - x^3", "y*(y - x^2)", "(y^2 - x^3)*(y - 2*x)", "x^2 + y^2"};
    for (const char* text : corpus) {
        Polynomial f = P(text);
        GermReport base = R(text);
        for (int trial = 0; trial < 10; ++trial) {
            Rational lam(num(rng), num(rng));
            if (sign(rng)) lam = -lam;
            GaussianRational scale{lam, Rational(0)};
            if (trial % 3 == 2) scale = GaussianRational{lam, Rational(num(rng), 7)};
            std::vector<GaussianRational> scales = {scale, scale};
            GermReport scaled = analyze(f.scale_variables(scales));
            CHECK(equivalent(base, scaled).equivalent);
        }
    }
}

TEST_CASE("witness parametrizations converge to the boundary identity") {
    GermReport x = R("(y^2 - x^3)*(y - 2*x)");
    GermReport y = R("(y^2 - x^5)*(y - x)");
    EquivalenceDecision d = equivalent(x, y);
    REQUIRE(d.equivalent);
    for (const WitnessPair& p : d.witness) {
        double prev_norm = 1e9;
        for (double r : {1e-2, 1e-3, 1e-4}) {
            for (double theta : {0.0, 1.1, 2.9}) {
                Complex t = std::polar(r, theta);
                auto w = eval_terms(p.y_aligned, t);
                auto z = eval_terms(p.x_aligned, t);
                CHECK(norm_of(w) > 0.0);
                CHECK(drift_off_axis(w) < 10.0 * r);
                CHECK(drift_off_axis(z) < 10.0 * r);
            }
            double nrm = norm_of(eval_terms(p.y_aligned, Complex(r, 0.0)));
            CHECK(nrm < prev_norm);
            prev_norm = nrm;
        }
        CHECK(prev_norm < 1e-2);
    }
}

TEST_CASE("decision JSON shape") {
    auto je = decision_to_json(equivalent(R("y^2 - x^3"), R("y^2 - x^5")));
    CHECK(je["equivalent"] == true);
    CHECK(je["certificate"].is_null());
    CHECK(je["sigma"].is_array());
    CHECK(je["witness"].is_array());
    auto jn = decision_to_json(equivalent(R("y^2 - x^3"), R("y")));
    CHECK(jn["equivalent"] == false);
    CHECK(jn["sigma"].is_null());
    CHECK(jn["certificate"].is_string());
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "blowsphere/parser.hpp"
#include "blowsphere/puiseux.hpp"

#include <cmath>
#include <complex>
#include <random>

using namespace blowsphere;

namespace {

Polynomial P(const std::string& text) { return parse_polynomial(text, vars_xy()); }

const Branch* branch_with_tangent(const std::vector<Branch>& bs, Complex d0, Complex d1) {
    auto dir = canonical_direction({d0, d1});
    for (const Branch& b : bs)
        if (same_line(b.tangent, dir)) return &b;
    return nullptr;
}

Complex series_coeff(const Branch& b, int texp) {
    for (const BranchTerm& t : b.components[1])
        if (t.exp == texp) return t.coeff;
    return 0.0;
}

}  // namespace

TEST_CASE("newton polygon of the cusp") {
    NewtonPolygon np = newton_polygon(P("y^2 - x^3"));
    REQUIRE(np.segments.size() == 1);
    CHECK(np.segments[0].slope == Rational(3, 2));
    CHECK(np.segments[0].lattice_length == 2);
    // Face in u = c^2: u - 1 up to ordering of the stored terms.
    Polynomial face = np.segments[0].face;
    CHECK(face.coefficient({1}) == GaussianRational(1));
    CHECK(face.coefficient({0}) == GaussianRational(-1));
}

TEST_CASE("newton polygon of the node") {
    NewtonPolygon np = newton_polygon(P("y^2 - x^2"));
    REQUIRE(np.segments.size() == 1);
    CHECK(np.segments[0].slope == Rational(1));
    CHECK(np.segments[0].lattice_length == 2);
    CHECK(np.segments[0].face.degree() == 2);  // u^2 - 1, both roots finite
}

TEST_CASE("newton polygon stops at the vertical face") {
    NewtonPolygon np = newton_polygon(P("y^2 - x^2*y"));
    REQUIRE(np.segments.size() == 1);
    CHECK(np.segments[0].slope == Rational(2));
    CHECK(np.segments[0].lattice_length == 1);
}

TEST_CASE("newton polygon rejects an x component") {
    CHECK_THROWS_AS(newton_polygon(P("x*y - x^2")), std::invalid_argument);
}

TEST_CASE("cusp expands to a single ramified branch") {
    auto bs = puiseux_branches(P("y^2 - x^3"));
    REQUIRE(bs.size() == 1);
    const Branch& b = bs[0];
    CHECK(b.ramification == 2);
    CHECK(b.multiplicity == 2);
    CHECK(b.exact);
    CHECK(same_line(b.tangent, canonical_direction({1.0, 0.0})));
    REQUIRE(b.components[1].size() == 1);
    CHECK(b.components[1][0].exp == 3);
    CHECK(std::abs(b.components[1][0].coeff - Complex(1.0)) < 1e-12);
}

TEST_CASE("perturbed node splits into two smooth branches with sqrt series") {
    auto bs = puiseux_branches(P("y^2 - x^2 - x^3"));
    REQUIRE(bs.size() == 2);
    // y = +- x sqrt(1+x); sqrt's binomial coefficients: 1, 1/2, -1/8, 1/16, -5/128.
    const Branch* plus = branch_with_tangent(bs, 1.0, 1.0);
    REQUIRE(plus != nullptr);
    CHECK(plus->ramification == 1);
    CHECK(plus->multiplicity == 1);
    Complex lead = series_coeff(*plus, 1);
    double sign = lead.real() > 0 ? 1.0 : -1.0;
    CHECK(std::abs(series_coeff(*plus, 1) - Complex(sign * 1.0)) < 1e-10);
    CHECK(std::abs(series_coeff(*plus, 2) - Complex(sign * 0.5)) < 1e-10);
    CHECK(std::abs(series_coeff(*plus, 3) - Complex(sign * -0.125)) < 1e-10);
    CHECK(std::abs(series_coeff(*plus, 4) - Complex(sign * 0.0625)) < 1e-10);
    CHECK(std::abs(series_coeff(*plus, 5) - Complex(sign * -5.0 / 128.0)) < 1e-10);
    const Branch* minus = branch_with_tangent(bs, 1.0, -1.0);
    REQUIRE(minus != nullptr);
    CHECK(minus->multiplicity == 1);
}

TEST_CASE("product of cusp and line expands factor-wise") {
    auto bs = puiseux_branches(P("(y^2 - x^3)*(y - 2*x)"));
    REQUIRE(bs.size() == 2);
    const Branch* cusp = branch_with_tangent(bs, 1.0, 0.0);
    REQUIRE(cusp != nullptr);
    CHECK(cusp->multiplicity == 2);
    CHECK(cusp->ramification == 2);
    const Branch* line = branch_with_tangent(bs, 1.0, 2.0);
    REQUIRE(line != nullptr);
    CHECK(line->multiplicity == 1);
    CHECK(std::abs(series_coeff(*line, 1) - Complex(2.0)) < 1e-10);
}

TEST_CASE("swapped-coordinate cusp is tangent to the y axis") {
    // y^3 - x^2: x = +-y^(3/2), multiplicity 2, tangent x = 0.
    auto bs = puiseux_branches(P("y^3 - x^2"));
    REQUIRE(bs.size() == 1);
    CHECK(bs[0].multiplicity == 2);
    CHECK(same_line(bs[0].tangent, canonical_direction({0.0, 1.0})));
}

TEST_CASE("axis factors become smooth axis branches") {
    auto bs = puiseux_branches(P("x*y"));
    REQUIRE(bs.size() == 2);
    CHECK(bs[0].multiplicity == 1);
    CHECK(bs[1].multiplicity == 1);
    auto sum = bs[0].multiplicity + bs[1].multiplicity;
    CHECK(sum == 2);
    CHECK(branch_with_tangent(bs, 0.0, 1.0) != nullptr);
    CHECK(branch_with_tangent(bs, 1.0, 0.0) != nullptr);
}

TEST_CASE("tacnode-like pair: two branches sharing a tangent") {
    auto bs = puiseux_branches(P("y*(y - x^2)"));
    REQUIRE(bs.size() == 2);
    for (const Branch& b : bs) {
        CHECK(b.multiplicity == 1);
        CHECK(same_line(b.tangent, canonical_direction({1.0, 0.0})));
    }
}

TEST_CASE("non-reduced inputs are rejected") {
    CHECK_THROWS_AS(puiseux_branches(P("y^2")), NonReducedError);
    CHECK_THROWS_AS(puiseux_branches(P("x^2*y - x^3")), NonReducedError);
    CHECK_THROWS_AS(puiseux_branches(P("(y - x^2)^2*(y + x)")), NonReducedError);
}

TEST_CASE("inputs not vanishing at the origin are rejected") {
    CHECK_THROWS_AS(puiseux_branches(P("y^2 - x + 1")), NotVanishingError);
}

TEST_CASE("branch multiplicities sum to the order for a mixed corpus") {
    const char* corpus[] = {
        "y^2 - x^3",      "y^2 - x^5",           "y^2 - x^2",
        "y^2 - x^2 - x^3", "y*(y - x^2)",         "y*(y - x)",
        "(y^2 - x^3)*(y - 2*x)", "y^3 - x^4",     "y^3 - x^5",
        "y^3 - x^2",      "x^2 + y^2",           "(y - x)*(y + x)*(y - 2*x)",
        "y^4 - x^5",      "(y^2 - x^3)*(y^2 - x^5)", "(y - x^2)*(y + x^2)",
        "x*y",            "(x^2 + y^2)*(y - x)", "y^5 - x^6",
    };
    for (const char* text : corpus) {
        CAPTURE(text);
        Polynomial f = P(text);
        auto bs = puiseux_branches(f);
        int total = 0;
        for (const Branch& b : bs) total += b.multiplicity;
        CHECK(total == f.order_at_origin());
    }
}

TEST_CASE("branch set is stable under conjugation of the parameter") {
    const char* corpus[] = {"y^2 - x^3", "y^3 - x^5", "(y^2 - x^3)*(y - 2*x)", "y^4 - x^5"};
    for (const char* text : corpus) {
        CAPTURE(text);
        Polynomial f = P(text);
        for (const Branch& b : puiseux_branches(f)) {
            int e = b.ramification;
            for (int j = 1; j < e; ++j) {
                // psi(zeta t) parametrizes the same branch: same residual decay,
                // same multiplicity data.
                Complex zeta = std::polar(1.0, 2.0 * M_PI * j / e);
                Branch rotated = b;
                for (auto& comp : rotated.components)
                    for (BranchTerm& term : comp) term.coeff *= std::pow(zeta, term.exp);
                double r = residual_order(f, rotated);
                if (b.exact) {
                    CHECK(r == std::numeric_limits<double>::infinity());
                } else {
                    CHECK(r > 5.0);
                }
                CHECK(same_line(rotated.tangent, b.tangent, 1e-6));
            }
        }
    }
}

TEST_CASE("residual order: exact parametrizations give the infinity sentinel") {
    auto bs = puiseux_branches(P("y^2 - x^3"));
    CHECK(residual_order(P("y^2 - x^3"), bs[0]) == std::numeric_limits<double>::infinity());
    auto line = puiseux_branches(P("y"));
    CHECK(residual_order(P("y"), line[0]) == std::numeric_limits<double>::infinity());
}

TEST_CASE("residual order: truncated series decay beyond the window") {
    Polynomial f = P("y^2 - x^2 - x^3");
    for (const Branch& b : puiseux_branches(f, 12)) {
        double r = residual_order(f, b);
        CHECK(r >= 5.0);
        // Slope must beat the truncation bound e*truncation_order - 1.
        if (!b.exact) {
            double bound =
                b.truncation_order.convert_to<double>() * b.ramification - 1.0;
            CHECK(r > bound);
        }
    }
}

TEST_CASE("branches of a coprime product are the disjoint union") {
    std::mt19937 rng(37);
    std::uniform_int_distribution<int> pick(0, 5);
    const char* factors[] = {"y^2 - x^3", "y - 2*x", "y^2 - x^5",
                             "y - x^2",   "y + x",   "y^3 - x^4"};
    for (int trial = 0; trial < 12; ++trial) {
        int i = pick(rng), j = pick(rng);
        if (i == j) continue;
        Polynomial f = P(factors[i]);
        Polynomial g = P(factors[j]);
        auto bf = puiseux_branches(f);
        auto bg = puiseux_branches(g);
        auto bfg = puiseux_branches(f * g);
        REQUIRE(bfg.size() == bf.size() + bg.size());
        std::multiset<int> mults, expected;
        for (const Branch& b : bfg) mults.insert(b.multiplicity);
        for (const Branch& b : bf) expected.insert(b.multiplicity);
        for (const Branch& b : bg) expected.insert(b.multiplicity);
        CHECK(mults == expected);
    }
}

TEST_CASE("deep tangency: branches separated only at higher order") {
    // (y - x^2 - x^5)(y - x^2 + x^5): face roots coincide through x^4.
    Polynomial f = P("(y - x^2 - x^5)*(y - x^2 + x^5)");
    auto bs = puiseux_branches(f);
    REQUIRE(bs.size() == 2);
    CHECK(std::abs(series_coeff(bs[0], 2) - Complex(1.0)) < 1e-9);
    CHECK(std::abs(series_coeff(bs[1], 2) - Complex(1.0)) < 1e-9);
    Complex c5a = series_coeff(bs[0], 5), c5b = series_coeff(bs[1], 5);
    CHECK(std::abs(c5a + c5b) < 1e-8);       // opposite signs
    CHECK(std::abs(std::abs(c5a) - 1.0) < 1e-8);
}

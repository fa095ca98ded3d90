#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "blowsphere/cone.hpp"
#include "blowsphere/parser.hpp"
#include "blowsphere/puiseux.hpp"

#include <random>

using namespace blowsphere;

namespace {

Polynomial P(const std::string& text) { return parse_polynomial(text, vars_xy()); }

const ConeLine* line_at(const std::vector<ConeLine>& lines, Complex d0, Complex d1) {
    auto dir = canonical_direction({d0, d1});
    for (const ConeLine& l : lines)
        if (same_line(l.direction, dir)) return &l;
    return nullptr;
}

}  // namespace

TEST_CASE("cone of a perfect square is a double line") {
    auto lines = cone_lines(P("y^2"));
    REQUIRE(lines.size() == 1);
    CHECK(lines[0].exponent == 2);
    CHECK(same_line(lines[0].direction, canonical_direction({1.0, 0.0})));
}

TEST_CASE("cone of y^2(y - 2x)") {
    auto lines = cone_lines(P("y^3 - 2*x*y^2"));
    REQUIRE(lines.size() == 2);
    const ConeLine* flat = line_at(lines, 1.0, 0.0);
    REQUIRE(flat != nullptr);
    CHECK(flat->exponent == 2);
    const ConeLine* tilted = line_at(lines, 1.0, 2.0);
    REQUIRE(tilted != nullptr);
    CHECK(tilted->exponent == 1);
}

TEST_CASE("cone of x^2 + y^2 is a pair of complex conjugate lines") {
    auto lines = cone_lines(P("x^2 + y^2"));
    REQUIRE(lines.size() == 2);
    CHECK(line_at(lines, 1.0, Complex(0.0, 1.0)) != nullptr);
    CHECK(line_at(lines, 1.0, Complex(0.0, -1.0)) != nullptr);
}

TEST_CASE("cone with an x = 0 component") {
    // x y^2: dehomogenization drops degree by one.
    auto lines = cone_lines(P("x*y^2"));
    REQUIRE(lines.size() == 2);
    const ConeLine* vertical = line_at(lines, 0.0, 1.0);
    REQUIRE(vertical != nullptr);
    CHECK(vertical->exponent == 1);
    const ConeLine* flat = line_at(lines, 1.0, 0.0);
    REQUIRE(flat != nullptr);
    CHECK(flat->exponent == 2);
}

TEST_CASE("cone_lines validates its input") {
    CHECK_THROWS_AS(cone_lines(P("y^2 - x^3")), std::invalid_argument);  // not homogeneous
    CHECK_THROWS_AS(cone_lines(parse_polynomial("z1 + z2 + z3", vars_zn(3))),
                    std::invalid_argument);
    CHECK_THROWS_AS(cone_lines(Polynomial(2)), ZeroPolynomialError);
}

TEST_CASE("exponents sum to the degree of the form") {
    std::mt19937 rng(19);
    std::uniform_int_distribution<long> coeff(-5, 5);
    for (int trial = 0; trial < 60; ++trial) {
        // Random products of linear forms, occasionally with an x factor.
        Polynomial f = Polynomial::constant(2, GaussianRational(1));
        int factors = 1 + trial % 4;
        for (int k = 0; k < factors; ++k) {
            Polynomial lin(2);
            long a = coeff(rng), b = coeff(rng);
            if (a == 0 && b == 0) a = 1;
            lin.add_term({1, 0}, GaussianRational(Rational(a)));
            lin.add_term({0, 1}, GaussianRational(Rational(b)));
            f *= lin;
        }
        int total = 0;
        for (const ConeLine& l : cone_lines(f)) total += l.exponent;
        CHECK(total == f.degree());
    }
}

TEST_CASE("relative multiplicities of the cusp") {
    auto cone = relative_multiplicities(puiseux_branches(P("y^2 - x^3")));
    REQUIRE(cone.lines.size() == 1);
    CHECK(cone.relative_mult[0] == 2);
    CHECK(multiplicity_identity_check(P("y^2 - x^3"), cone));
}

TEST_CASE("relative multiplicities of a smooth line") {
    auto cone = relative_multiplicities(puiseux_branches(P("y")));
    REQUIRE(cone.lines.size() == 1);
    CHECK(cone.relative_mult[0] == 1);
}

TEST_CASE("relative multiplicities of (y^2 - x^3)(y - 2x)") {
    Polynomial f = P("(y^2 - x^3)*(y - 2*x)");
    auto cone = relative_multiplicities(puiseux_branches(f));
    REQUIRE(cone.lines.size() == 2);
    const ConeLine* flat = line_at(cone.lines, 1.0, 0.0);
    REQUIRE(flat != nullptr);
    CHECK(flat->exponent == 2);
    const ConeLine* tilted = line_at(cone.lines, 1.0, 2.0);
    REQUIRE(tilted != nullptr);
    CHECK(tilted->exponent == 1);
    CHECK(cone.total_k() == 3);
    CHECK(multiplicity_identity_check(f, cone));
}

TEST_CASE("branches sharing a tangent pool their multiplicities") {
    Polynomial f = P("y*(y - x^2)");
    auto cone = relative_multiplicities(puiseux_branches(f));
    REQUIRE(cone.lines.size() == 1);
    CHECK(cone.relative_mult[0] == 2);
    CHECK(multiplicity_identity_check(f, cone));
}

TEST_CASE("relative_multiplicities rejects an empty branch list") {
    CHECK_THROWS_AS(relative_multiplicities({}), std::invalid_argument);
}

TEST_CASE("cone lines of a product merge the factor cones") {
    std::mt19937 rng(29);
    const char* pool[] = {"y^2 - x^3", "y - 2*x", "x^2 + y^2", "y^3 - x^4", "y + x"};
    std::uniform_int_distribution<int> pick(0, 4);
    for (int trial = 0; trial < 20; ++trial) {
        Polynomial f = P(pool[pick(rng)]);
        Polynomial g = P(pool[pick(rng)]);
        auto got = cone_lines((f * g).initial_form());
        auto want = merge_cone_lines(cone_lines(f.initial_form()), cone_lines(g.initial_form()));
        REQUIRE(got.size() == want.size());
        for (size_t k = 0; k < got.size(); ++k) {
            CHECK(same_line(got[k].direction, want[k].direction, 1e-6));
            CHECK(got[k].exponent == want[k].exponent);
        }
    }
}

TEST_CASE("cone from branches agrees with cone from the initial form") {
    const char* corpus[] = {"y^2 - x^3", "(y^2 - x^3)*(y - 2*x)", "x^2 + y^2",
                            "y*(y - x^2)", "x*y", "y^4 - x^5"};
    for (const char* text : corpus) {
        CAPTURE(text);
        Polynomial f = P(text);
        auto from_branches = relative_multiplicities(puiseux_branches(f));
        auto from_form = cone_lines(f.initial_form());
        REQUIRE(from_branches.lines.size() == from_form.size());
        for (size_t k = 0; k < from_form.size(); ++k) {
            CHECK(same_line(from_branches.lines[k].direction, from_form[k].direction, 1e-6));
            CHECK(from_branches.lines[k].exponent == from_form[k].exponent);
        }
    }
}

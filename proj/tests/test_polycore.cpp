#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "blowsphere/parser.hpp"
#include "blowsphere/polynomial.hpp"
#include "blowsphere/series.hpp"

#include <random>

using namespace blowsphere;

namespace {

Polynomial P(const std::string& text) { return parse_polynomial(text, vars_xy()); }

GaussianRational Q(long num, long den = 1) { return GaussianRational(Rational(num, den)); }

Polynomial random_poly(std::mt19937& rng, int nvars, int max_deg, int max_terms) {
    std::uniform_int_distribution<int> nterms(1, max_terms);
    std::uniform_int_distribution<int> exp(0, max_deg);
    std::uniform_int_distribution<long> num(-9, 9);
    std::uniform_int_distribution<long> den(1, 9);
    std::uniform_int_distribution<int> imag(0, 3);
    Polynomial f(nvars);
    int n = nterms(rng);
    for (int k = 0; k < n; ++k) {
        Exponents e(nvars);
        for (int v = 0; v < nvars; ++v) e[v] = exp(rng);
        Rational re(num(rng), den(rng));
        Rational im = imag(rng) == 0 ? Rational(num(rng), den(rng)) : Rational(0);
        f.add_term(std::move(e), GaussianRational(re, im));
    }
    return f;
}

}  // namespace

TEST_CASE("parse reads plain terms") {
    Polynomial f = P("y^2 - x^3");
    Polynomial want(2);
    want.add_term({0, 2}, Q(1));
    want.add_term({3, 0}, Q(-1));
    CHECK(f == want);
}

TEST_CASE("parse expands products") {
    // (y^2 - x^3)*(y - 2x) multiplied out by hand.
    Polynomial f = P("(y^2 - x^3)*(y - 2*x)");
    Polynomial want(2);
    want.add_term({0, 3}, Q(1));    // y^3
    want.add_term({1, 2}, Q(-2));   // -2 x y^2
    want.add_term({3, 1}, Q(-1));   // -x^3 y
    want.add_term({4, 0}, Q(2));    // 2 x^4
    CHECK(f == want);
}

TEST_CASE("parse reads literal coefficients") {
    Polynomial f = P("i*x + 1/2*y");
    CHECK(f.coefficient({1, 0}) == GaussianRational::unit_i());
    CHECK(f.coefficient({0, 1}) == Q(1, 2));
    CHECK(f.terms().size() == 2);
}

TEST_CASE("parse error carries a position") {
    CHECK_THROWS_AS(P("y^2 -"), ParseError);
    CHECK_THROWS_AS(P("y^2 + w"), ParseError);
    CHECK_THROWS_AS(P("1/0*x"), ParseError);
    CHECK_THROWS_AS(P("2x"), ParseError);  // implicit multiplication rejected
    try {
        P("y^2 + w");
    } catch (const ParseError& e) {
        CHECK(e.position == 6);
    }
}

TEST_CASE("variable conventions") {
    auto plane = parse_auto("y^2 - x^3");
    CHECK(plane.var_names == vars_xy());
    auto space = parse_auto("z1^3 - z2^2 - z3^2 - z4^2");
    CHECK(space.var_names == vars_zn(4));
    CHECK(space.poly.order_at_origin() == 2);
    CHECK_THROWS_AS(parse_auto("x + z1"), ParseError);
}

TEST_CASE("order at origin") {
    CHECK(P("y^2 - x^3").order_at_origin() == 2);
    CHECK(P("x").order_at_origin() == 1);
    CHECK(P("(y^2 - x^3)*(y - 2*x)").order_at_origin() == 3);
    CHECK_THROWS_AS(Polynomial(2).order_at_origin(), ZeroPolynomialError);
}

TEST_CASE("initial form") {
    CHECK(P("y^2 - x^3").initial_form() == P("y^2"));
    CHECK(P("(y^2 - x^3)*(y - 2*x)").initial_form() == P("y^3 - 2*x*y^2"));
    CHECK(P("x + y + x^2").initial_form() == P("x + y"));
}

TEST_CASE("homogeneous decomposition sums back to f") {
    std::mt19937 rng(7);
    for (int trial = 0; trial < 200; ++trial) {
        Polynomial f = random_poly(rng, 2 + trial % 2, 6, 8);
        if (f.is_zero()) continue;
        auto dec = homogeneous_decomposition(f);
        Polynomial sum(f.nvars());
        int prev = -1;
        for (const auto& [d, part] : dec.parts) {
            CHECK(d > prev);
            prev = d;
            CHECK(!part.is_zero());
            CHECK(part.is_homogeneous());
            CHECK(part.degree() == d);
            sum += part;
        }
        CHECK(sum == f);
    }
}

TEST_CASE("order and initial form are multiplicative") {
    std::mt19937 rng(11);
    for (int trial = 0; trial < 200; ++trial) {
        Polynomial f = random_poly(rng, 2, 5, 6);
        Polynomial g = random_poly(rng, 2, 5, 6);
        if (f.is_zero() || g.is_zero()) continue;
        Polynomial fg = f * g;
        REQUIRE(!fg.is_zero());
        CHECK(fg.order_at_origin() == f.order_at_origin() + g.order_at_origin());
        CHECK(fg.initial_form() == f.initial_form() * g.initial_form());
    }
}

TEST_CASE("parse round-trips printed canonical forms") {
    std::mt19937 rng(23);
    for (int trial = 0; trial < 1000; ++trial) {
        int nvars = 2 + trial % 3;
        Polynomial f = random_poly(rng, nvars, 6, 10);
        auto names = nvars == 2 ? vars_xy() : vars_zn(nvars);
        Polynomial g = parse_polynomial(f.to_string(names), names);
        CHECK(g == f);
    }
}

TEST_CASE("substitute_series: exact cusp parametrization cancels") {
    Polynomial f = P("y^2 - x^3");
    Rational N(8);
    std::vector<FracSeries> vars = {
        FracSeries::monomial(Rational(2), 1.0, N),
        FracSeries::monomial(Rational(3), 1.0, N),
    };
    FracSeries r = substitute_series(f, vars, N);
    CHECK(r.is_zero(1e-14));
}

TEST_CASE("substitute_series: projection") {
    Polynomial f = P("y");
    Rational N(4);
    std::vector<FracSeries> vars = {
        FracSeries::monomial(Rational(1), 1.0, N),
        FracSeries::monomial(Rational(2), 1.0, N),
    };
    FracSeries r = substitute_series(f, vars, N);
    Rational e;
    Complex c;
    REQUIRE(r.lowest(e, c, 1e-14));
    CHECK(e == Rational(2));
    CHECK(std::abs(c - Complex(1.0)) < 1e-14);
}

TEST_CASE("substitute_series: truncated sqrt branch vanishes through t^3") {
    Polynomial f = P("y^2 - x^2 - x^3");
    Rational N(3);
    std::vector<FracSeries> x = {FracSeries::monomial(Rational(1), 1.0, N)};
    FracSeries y(1, N);
    y.add_term(Rational(1), 1.0);
    y.add_term(Rational(2), 0.5);
    std::vector<FracSeries> vars = {x[0], y};
    FracSeries r = substitute_series(f, vars, N);
    CHECK(r.is_zero(1e-14));
}

TEST_CASE("substitute_series rejects wrong variable count") {
    Polynomial f = P("x + y");
    std::vector<FracSeries> one = {FracSeries::monomial(Rational(1), 1.0, Rational(4))};
    CHECK_THROWS_AS(substitute_series(f, one, Rational(4)), std::invalid_argument);
}

TEST_CASE("scale_variables is exact") {
    Polynomial f = P("y^2 - x^3");
    std::vector<GaussianRational> s = {Q(2), Q(3)};
    Polynomial g = f.scale_variables(s);
    CHECK(g == P("9*y^2 - 8*x^3"));
}

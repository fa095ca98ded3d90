#pragma once

#include "blowsphere/cone.hpp"
#include "blowsphere/polynomial.hpp"
#include "blowsphere/series.hpp"

#include <stdexcept>
#include <vector>

namespace blowsphere {

struct NonReducedError : std::domain_error {
    NonReducedError() : std::domain_error("non-reduced input") {}
};
struct NotVanishingError : std::domain_error {
    NotVanishingError() : std::domain_error("input does not vanish at the origin") {}
};
struct PuiseuxError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NewtonPolygonSegment {
    Rational slope;      // p/q: branches on this face behave like y ~ c x^(p/q)
    int lattice_length;  // total drop in the y-exponent along the face
    Polynomial face;     // reduced face polynomial in u = c^q, constant term nonzero
};

struct NewtonPolygon {
    std::vector<NewtonPolygonSegment> segments;
};

/// Lower-left hull of the support. Requires a bivariate f with f(0,0) = 0 and
/// no x = 0 component; a y^b factor corresponds to the vertical face and is
/// left to the branch splitter.
NewtonPolygon newton_polygon(const Polynomial& f);

struct BranchTerm {
    int exp;  // exponent of t
    Complex coeff;
};

/// One Puiseux branch psi(t) = (x(t), y(t), ...). For plane-curve input the
/// first component is exactly t^e except for the axis branch x = 0, whose
/// first component is the zero series.
struct Branch {
    int ramification = 1;  // e
    std::vector<std::vector<BranchTerm>> components;
    int multiplicity = 1;  // minimal vanishing order among the components
    std::vector<Complex> tangent;
    Rational truncation_order;  // exponent bound in x-units below which the series is trusted
    bool exact = false;         // the stored series satisfies f identically

    /// y-series exponents expressed over the ramification: pairs (k/e, coeff).
    std::vector<std::pair<Rational, Complex>> fractional_series() const;
};

/// Newton-Puiseux expansion of a reduced plane-curve germ. `terms` controls
/// the truncation window: series are computed through t-order e*terms.
std::vector<Branch> puiseux_branches(const Polynomial& f, int terms = 12);

int branch_multiplicity(const Branch& b);

/// True when the composed residual f(psi(t)) vanishes identically through a
/// degree window that certifies the stored series as an exact solution.
bool branch_satisfies_exactly(const Polynomial& f, const Branch& b);

/// Least-squares slope of log|f(psi(t))| against log|t| on t in [1e-3, 1e-1].
/// Returns +infinity when the series satisfies f exactly or the residual sits
/// below the double-precision noise floor over the whole sampled range.
double residual_order(const Polynomial& f, const Branch& b);

Complex eval_component(const std::vector<BranchTerm>& series, Complex t);
std::vector<Complex> eval_branch(const Branch& b, Complex t);

}  // namespace blowsphere

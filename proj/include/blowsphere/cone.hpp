#pragma once

#include "blowsphere/polynomial.hpp"
#include "blowsphere/series.hpp"

#include <vector>

namespace blowsphere {

struct Branch;

/// One component of the tangent cone of a curve germ: a complex line through
/// the origin. The direction is unit length with the first component of
/// magnitude above 1e-9 rotated to be real positive.
struct ConeLine {
    std::vector<Complex> direction;
    int exponent = 1;  // multiplicity of the linear factor in the initial form
};

struct TangentCone {
    std::vector<ConeLine> lines;
    std::vector<int> relative_mult;  // k value per line, parallel to `lines`

    int total_k() const {
        int s = 0;
        for (int k : relative_mult) s += k;
        return s;
    }
};

std::vector<Complex> canonical_direction(std::vector<Complex> v);
/// Chordal distance between the complex lines spanned by two unit vectors.
double line_distance(const std::vector<Complex>& a, const std::vector<Complex>& b);
bool same_line(const std::vector<Complex>& a, const std::vector<Complex>& b,
               double tol = 1e-6);

/// Lines of V(in_f) for a nonzero homogeneous bivariate in_f: dehomogenize,
/// cluster the complex roots, and account for the x = 0 line when the
/// dehomogenized polynomial drops degree. Exponents sum to deg in_f.
std::vector<ConeLine> cone_lines(const Polynomial& in_f);

/// k value per tangent line of a curve germ: the branch multiplicities
/// summed over the branches sharing that line.
TangentCone relative_multiplicities(const std::vector<Branch>& branches);

/// order_at_origin(f) == sum of k values; false signals a tolerance or
/// bookkeeping failure rather than a property of the germ.
bool multiplicity_identity_check(const Polynomial& f, const TangentCone& cone);

/// Direction-wise merge, summing exponents of coinciding lines.
std::vector<ConeLine> merge_cone_lines(const std::vector<ConeLine>& a,
                                       const std::vector<ConeLine>& b, double tol = 1e-6);

}  // namespace blowsphere

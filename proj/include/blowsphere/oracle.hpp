#pragma once

#include "blowsphere/cone.hpp"
#include "blowsphere/puiseux.hpp"

#include <cstdint>
#include <iosfwd>
#include <map>
#include <stdexcept>
#include <vector>

namespace blowsphere {

struct OracleError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SamplePoint {
    std::vector<double> u;  // unit vector in R^(2n)
    double r = 0.0;         // norm of the ambient point
    int branch_id = 0;
    double theta = 0.0;  // parameter angle
    double tau = 0.0;    // parameter radius
};

struct TransformSample {
    std::vector<SamplePoint> points;
    std::vector<double> radii;  // decreasing schedule
    int per_radius = 0;
    std::uint64_t seed = 0;
    int nvars = 2;
};

struct OracleParams {
    std::vector<double> radii{1e-2, 1e-3, 1e-4};
    int per_radius = 2048;  // keep well above 64 * expected sheet count
    std::uint64_t seed = 0;
    double delta = 0.05;
};

/// Push branch points through the spherical blow-up: on each parameter circle
/// chosen so that the ambient norm is r, record (point/|point|, |point|).
TransformSample sample_strict_transform(const std::vector<Branch>& branches,
                                        const OracleParams& params);

/// Sheet count of the strict transform over a generic boundary point of the
/// given direction circle: collect samples inside the delta-ball, cluster the
/// parameter sectors per radius, chain them across consecutive radii, and
/// count the chains. The count is checked at delta and delta/2.
int estimate_k(const TransformSample& sample, const std::vector<Complex>& direction,
               const std::vector<std::vector<Complex>>& all_directions, double delta);

struct BoundaryEstimate {
    std::vector<ConeLine> circles;   // direction per circle (exponent unused)
    std::vector<int> sheet_counts;   // parallel to circles
};

BoundaryEstimate estimate_boundary(const TransformSample& sample,
                                   const std::vector<std::vector<Complex>>& directions,
                                   double delta);

/// Point cloud as CSV: branch_id, r, then the 2n unit-vector components.
void write_sample_csv(std::ostream& os, const TransformSample& sample);

}  // namespace blowsphere

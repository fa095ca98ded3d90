#pragma once

#include <complex>
#include <vector>

namespace blowsphere {

struct ClusteredRoot {
    std::complex<double> value;
    int multiplicity;
};

/// All complex roots of sum c[k] z^k, |leading| > 0, via Laguerre iteration
/// with deflation and a final polish pass on the undeflated polynomial.
std::vector<std::complex<double>> polynomial_roots(std::vector<std::complex<double>> coeffs);

/// Single-linkage clustering of near-coincident roots at relative tolerance,
/// followed by multiplicity-aware Newton refinement of each cluster center
/// in extended precision. Cluster multiplicities sum to the root count.
std::vector<ClusteredRoot> find_root_clusters(const std::vector<std::complex<double>>& coeffs,
                                              double rel_tol = 1e-8);

}  // namespace blowsphere

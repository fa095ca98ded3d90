#pragma once

#include "blowsphere/germ.hpp"

#include <json.hpp>

#include <string>
#include <utility>
#include <vector>

namespace blowsphere {

/// Complete blow-spherical invariant of a curve germ: over each tangent
/// line, the multiset of multiplicities of the branches sharing it, taken
/// as a multiset of multisets (line positions abstracted away).
struct Signature {
    std::vector<std::vector<int>> groups;  // each sorted; the list sorted

    friend bool operator==(const Signature&, const Signature&) = default;
    std::string to_string() const;
    int total_multiplicity() const;
    int branch_count() const;
};

struct WitnessPair {
    int x_branch = 0;
    int y_branch = 0;
    int e = 1;  // shared multiplicity, the ramification in aligned coordinates
    std::vector<std::vector<Complex>> x_rotation;  // unitary, tangent -> first axis
    std::vector<std::vector<Complex>> y_rotation;
    std::vector<std::vector<BranchTerm>> x_aligned;  // rotated parametrizations
    std::vector<std::vector<BranchTerm>> y_aligned;
};

struct EquivalenceDecision {
    bool equivalent = false;
    std::vector<std::pair<int, int>> sigma;  // branch index bijection when equivalent
    std::vector<WitnessPair> witness;
    std::string certificate;  // which signature layer differs; empty when equivalent
};

Signature signature(const GermReport& report);

/// Blow-spherical equivalence of two curve germs: signatures equal as
/// multisets of multisets, with a branch bijection and parametrization
/// witness on success and a mismatch certificate on failure.
EquivalenceDecision equivalent(const GermReport& X, const GermReport& Y);

/// Paired parametrizations realizing sigma, in tangent-aligned coordinates.
std::vector<WitnessPair> witness(const GermReport& X, const GermReport& Y,
                                 const std::vector<std::pair<int, int>>& sigma);

/// Unitary matrix mapping the given unit direction to the first basis vector.
std::vector<std::vector<Complex>> rotation_to_first_axis(const std::vector<Complex>& dir);

nlohmann::ordered_json decision_to_json(const EquivalenceDecision& d);

}  // namespace blowsphere

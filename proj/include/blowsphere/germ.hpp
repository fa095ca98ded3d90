#pragma once

#include "blowsphere/cone.hpp"
#include "blowsphere/puiseux.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace blowsphere {

enum class Regularity { smooth, not_blow_spherical_regular };

enum class GermKind { plane_curve, hypersurface, parametrized_curve };

/// Cone component of a hypersurface germ in three or more variables; the
/// k value follows the factor-exponent convention and is reported without
/// a numeric cross-check (curve-only oracle), hence `unverified`.
struct ConeComponentReport {
    std::string component;
    int k = 1;
    int component_multiplicity = 1;
    bool unverified = true;
};

struct GermReport {
    std::string source;
    GermKind kind = GermKind::plane_curve;
    int nvars = 2;
    int multiplicity = 1;
    TangentCone cone;                                  // curve cases
    std::vector<ConeComponentReport> cone_components;  // hypersurface case
    std::vector<Branch> branches;                      // curve cases
    bool identity_ok = true;
    bool smooth = false;
    Regularity regularity = Regularity::smooth;

    bool is_curve() const { return kind != GermKind::hypersurface; }
};

struct AnalyzeOptions {
    int truncation_terms = 12;
};

/// Full invariant report of V(f) at the origin. Plane curves run the branch
/// expansion and both relative-multiplicity routes; hypersurfaces in three or
/// more variables report multiplicity, smoothness, and the squarefree
/// components of the initial form.
GermReport analyze(const Polynomial& f, const AnalyzeOptions& opts = {});

/// Report for a curve given by explicit branch parametrizations.
GermReport analyze_parametrized(std::vector<Branch> branches, const std::string& source);

Regularity regularity_obstruction(const GermReport& report);

/// Branch parametrization input: one branch per line, components separated by
/// commas, each component a polynomial in t ("t^2, t^3"). '#' starts a comment.
std::vector<Branch> parse_parametrization(const std::string& text);

nlohmann::ordered_json report_to_json(const GermReport& report);
std::string regularity_name(Regularity r);

}  // namespace blowsphere

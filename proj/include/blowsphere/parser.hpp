#pragma once

#include "blowsphere/polynomial.hpp"

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace blowsphere {

struct ParseError : std::runtime_error {
    size_t position;
    ParseError(const std::string& what, size_t pos)
        : std::runtime_error(what + " (at position " + std::to_string(pos) + ")"),
          position(pos) {}
};

/// Parse under a fixed variable convention; names map to variable slots in
/// the given order. Grammar: sums of '*'-separated factors with optional
/// '^' powers; factors are variables, integers, fractions, 'i', or
/// parenthesized expressions. Implicit multiplication is rejected.
Polynomial parse_polynomial(std::string_view text, const std::vector<std::string>& var_names);

struct ParsedInput {
    Polynomial poly;
    std::vector<std::string> var_names;
};

/// Parse with the convention inferred from the identifiers present:
/// {x, y} means a plane curve, {z1..zn} a hypersurface in n variables.
ParsedInput parse_auto(std::string_view text);

/// Family input: the polynomial convention of parse_auto extended with the
/// parameter variable `t`, stored as the last variable slot.
ParsedInput parse_family_input(std::string_view text);

}  // namespace blowsphere

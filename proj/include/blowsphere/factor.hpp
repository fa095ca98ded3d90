#pragma once

#include "blowsphere/polynomial.hpp"

namespace blowsphere {

/// Exact quotient a/b; throws std::domain_error if b does not divide a.
Polynomial divide_exact(const Polynomial& a, const Polynomial& b);

/// Gcd over Q(i)[x1..xn] via primitive pseudo-remainder sequences,
/// normalized so the lexicographically smallest term has coefficient 1.
Polynomial gcd(const Polynomial& a, const Polynomial& b);

/// Squarefree decomposition f = prod parts[k].first ^ parts[k].second with
/// pairwise coprime squarefree parts (Musser, char 0). Constant content is
/// dropped; f must be nonzero.
std::vector<std::pair<Polynomial, int>> squarefree_decomposition(const Polynomial& f);

}  // namespace blowsphere

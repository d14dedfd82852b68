#pragma once

// Exact all-integer LLL (de Weger / Cohen Alg. 2.6.3 style) with delta = 99/100.

#include <vector>

#include "ftlv/numtheory.hpp"

namespace ftlv {

using LatticeBasis = std::vector<std::vector<Int>>;

// spec op: lll_reduce. Input rows must be linearly independent
// (DependentInput otherwise). Output spans the same lattice, is
// size-reduced and satisfies the Lovasz condition with delta = 99/100.
LatticeBasis lll_reduce(LatticeBasis basis);

// exact rational verification of size-reduction and the Lovasz condition;
// used by the property tests as the independent oracle
bool lll_satisfies_conditions(const LatticeBasis& basis, const Rat& delta = Rat(99, 100));

}  // namespace ftlv

#pragma once

// Recognition of complex floats as elements of Q(zeta_M) via lattice reduction.
//
// Two-tier acceptance: the candidate found at `digits` must pass the residual
// test and be reproduced identically by a second reduction at digits+15.
// The input must therefore carry at least digits+15 accurate digits.

#include "ftlv/cyclotomic.hpp"
#include "ftlv/real.hpp"

namespace ftlv {

struct Recognition {
  Cyclotomic value;
  Real residual;  // |value(c) - z| at the escalated precision
};

// spec op: recognize_cyclotomic. Throws NoRelation / Unstable.
Recognition recognize_cyclotomic(const Complex& z, unsigned long M, const Int& height_bound,
                                 long digits);

}  // namespace ftlv

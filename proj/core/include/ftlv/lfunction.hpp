#pragma once

// Degree-d L-function specifications and the smoothed approximate functional
// equation evaluator.
//
// Conventions: Lambda(s) = q^{s/2} * prod_j Gamma_R(s + mu_j) * L(s) with the
// reflection s <-> w+1-s and Lambda(s) = eps * Lambda_dual(w+1-s), the dual
// carrying conjugate coefficients. For any scaling A > 0,
//
//   Lambda(s) = q^{s/2} sum_n a_n n^{-s} G_s(n/(A sqrt q))
//             + eps * q^{(w+1-s)/2} sum_n conj(a_n) n^{-(w+1-s)} G_{w+1-s}(n A / sqrt q)
//             - P(A, s),
//
// P the pole terms (only the zeta spec has them). A-independence of the left
// side is what the engine certifies: the root number is solved from two
// values of A and the fe_residual is the defect at a third.

#include <functional>
#include <memory>
#include <optional>
#include <string>

#include "ftlv/cyclotomic.hpp"
#include "ftlv/gammafactor.hpp"
#include "ftlv/numtheory.hpp"

namespace ftlv {
namespace lf {

struct LocalFactor {
  Int prime;
  std::vector<Cyclotomic> coeffs;  // polynomial in X, coeffs[0] = 1
};

// coefficient streams are shared (an orbit of evaluations, and every
// conductor candidate, reads the same array); generators are memoized
using CoeffVec = std::shared_ptr<const std::vector<Complex>>;
using CoeffFn = std::function<CoeffVec(size_t, mpfr_prec_t)>;

// wrap a generator with a cache: copies of the spec share the stream
CoeffFn memoize_coeffs(std::function<std::vector<Complex>(size_t, mpfr_prec_t)> gen);

struct LFunctionSpec {
  int degree = 1;
  Int conductor = 1;
  std::vector<int> gamma_shifts;
  long weight = 0;  // functional equation s <-> weight + 1 - s
  std::optional<Complex> root_number;
  CoeffFn coeffs;
  bool self_dual = true;
  bool zeta_pole = false;
  double coeff_log_growth = 0.55;  // |a_n| = O(n^this), with a modest constant
  std::string label;
  std::vector<Int> conductor_candidates;
};

struct EvalResult {
  Complex value;  // L(s0)
  Real fe_residual;
  size_t terms_used = 0;
  std::optional<Complex> solved_root_number;
};

// weight tables shared across evaluations with identical (shifts, s, digits, q-scale)
struct WeightPair {
  std::shared_ptr<const WeightFunction> at_s;
  std::shared_ptr<const WeightFunction> at_dual;
};

WeightPair make_weights(const LFunctionSpec& spec, long s2, long digits);

// spec op: evaluate_L at s0 = s2/2. Throws NeedMoreCoefficients /
// NoRootNumberConverged / ResidualTooLarge per the engine contract.
EvalResult evaluate_L(const LFunctionSpec& spec, long s2, long digits,
                      const WeightPair* shared = nullptr);

// batched evaluation of a family sharing (gamma, weight, conductor) but not
// coefficients -- a Galois orbit of twists; the weight kernels are evaluated
// once for the whole family
std::vector<EvalResult> evaluate_L_many(const std::vector<const LFunctionSpec*>& specs, long s2,
                                        long digits, const WeightPair* shared = nullptr);

struct ConductorResult {
  Int conductor;
  Complex root_number;
  Real residual;
};

// spec op: conductor_search over spec.conductor_candidates.
ConductorResult conductor_search(const LFunctionSpec& spec, long digits);

}  // namespace lf
}  // namespace ftlv

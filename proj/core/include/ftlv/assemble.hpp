#pragma once

// Building LFunctionSpecs: Euler factors of E over K_n, of Artin
// representations, of twists E (x) rho, and the assembled coefficient streams
// (Artin formalism: primes of K_n grouped over the rational prime below,
// X -> X^{f_v}).

#include "ftlv/dirichlet.hpp"
#include "ftlv/elliptic.hpp"
#include "ftlv/falsetate.hpp"
#include <map>
#include <mutex>

#include "ftlv/lfunction.hpp"

namespace ftlv {
namespace lf {

// spec op: euler_factor_E_over_Kn. P_v(E/K, X) at a prime v of K_n.
LocalFactor euler_factor_E_over_Kn(const ec::CurveModel& E, const ft::PrimeOfKn& v);

// spec op: euler_factor_twist. P_v(E/K, xi, X); JointAdditiveRamification
// when E is additive and xi ramified at the same v.
LocalFactor euler_factor_twist(const ec::CurveModel& E, const ft::FalseTateChar& xi,
                               const ft::PrimeOfKn& v);

// P_v(xi, X) = 1 - xi(v) X (unramified v)
LocalFactor euler_factor_artin(const ft::FalseTateChar& xi, const ft::PrimeOfKn& v);

// rational-prime local polynomial of the induced twist: prod_{v|ell} P_v(X^{f_v});
// handles the prime over p and the bad primes of E
std::vector<Cyclotomic> twist_local_rational(const ec::CurveModel& E, const ft::FalseTateChar& xi,
                                             u64 ell);
std::vector<Cyclotomic> artin_local_rational(const ft::FalseTateChar& xi, u64 ell);

// shared a_p store so orbits / precisions / candidate probes count each prime
// once; the cli-store layer file-backs it
struct ApStore {
  std::mutex mu;
  std::map<u64, i64> m;
};
using ApCache = std::shared_ptr<ApStore>;
i64 ap_cached(const ec::CurveModel& E, const ApCache& cache, u64 ell);

// ---- spec constructors -------------------------------------------------

LFunctionSpec zeta_spec();
LFunctionSpec dirichlet_spec(const ft::DirichletChar& psi);            // psi primitive
LFunctionSpec elliptic_spec(const ec::CurveModel& E, ApCache cache = nullptr);
LFunctionSpec elliptic_twist_dirichlet(const ec::CurveModel& E, const ft::DirichletChar& psi,
                                       ApCache cache = nullptr);
LFunctionSpec artin_spec(const ft::ArtinRepFT& rho);                   // dim >= 2 entries
LFunctionSpec symsq_spec(const ec::CurveModel& E, ApCache cache = nullptr);
// L(E (x) Ind xi): degree 2 * [K_n : Q]. perturb_prime (criterion-8 falsifier):
// swap xi(v) -> xi(v)^2 at one prime above that split rational prime.
LFunctionSpec twist_spec(const ec::CurveModel& E, const ft::ArtinRepFT& rho,
                         std::optional<u64> perturb_prime = std::nullopt,
                         ApCache cache = nullptr);
// product of constituents (e.g. L(E/F) = prod L(E, rho_i)); conductor multiplies
LFunctionSpec product_spec(std::vector<LFunctionSpec> parts, const std::string& label);

// generic multiplicative expansion: local_poly(ell) gives the coefficients
// (constant 1 first) of P_ell(X); result indices 0..n with [0] unused
std::vector<Complex> expand_euler_product(
    size_t n, mpfr_prec_t prec,
    const std::function<std::vector<Complex>(u64, mpfr_prec_t)>& local_poly);

}  // namespace lf
}  // namespace ftlv

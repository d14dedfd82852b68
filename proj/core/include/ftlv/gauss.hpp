#pragma once

// Gauss sums tau_Q and tau_K, archimedean epsilon factors, global epsilon via
// inductivity, and the two Galois-equivariance identity checks.
//
// Conventions are fixed empirically: among the four candidate normalizations
// of tau_Q, the one under which the engine's solved root numbers satisfy
// W(psi) = tau(psi) / (i^a sqrt(q)) on a control set of characters is
// adopted (and the equivariance theorems are the downstream arbiter). The
// Hecke tau_K candidates are matched against the FE-numeric root number of
// the induced degree-2 L-function; disagreement raises ConventionMismatch.

#include <optional>

#include "ftlv/assemble.hpp"
#include "ftlv/cyclotomic.hpp"
#include "ftlv/dirichlet.hpp"
#include "ftlv/falsetate.hpp"

namespace ftlv {
namespace eps {

struct EpsilonFactor {
  Complex value;
  std::optional<Cyclotomic> exact;
  std::string field_tag;  // "Q", "K1"
  std::string source;     // "gauss_sum", "fe_numeric", "inductivity"
};

// the raw Gauss sum sum_{a mod q} psi(a) e^{2 pi i a / q}, exact in
// Q(mu_{lcm(q, ord psi)}); psi must be primitive (ImprimitiveCharacter)
Cyclotomic gauss_sum_exact(const ft::DirichletChar& psi);

// spec op: gauss_sum_dirichlet
EpsilonFactor gauss_sum_dirichlet(const ft::DirichletChar& psi, long digits = 25);

// tau_Q under the empirically resolved convention (control set cached)
enum class TauConvention { Psi, PsiBar };
TauConvention resolved_tau_convention();
Cyclotomic tau_Q(const ft::DirichletChar& psi);

// finite Gauss sum over K_1 = Q(mu_3): sum over invertible residues x mod f
// of xi((x)) e^{2 pi i Tr(x / (sqrt(-3) f))}; nf is the conductor norm, the
// ideal is f = lambda^a (rad m) with 3^a * rad(m)^2 = nf
Cyclotomic hecke_gauss_sum_exact(const ft::FalseTateChar& xi, const Int& nf);

// spec op: hecke_gauss_sum. Route (a) finite sum and route (b) FE-numeric
// cross check; ConventionMismatch when no candidate matches.
EpsilonFactor hecke_gauss_sum(const ft::FalseTateChar& xi, const Int& nf, long digits);

// spec op: eps_infinity -- i^{d_minus} per real place, 1 per complex place
EpsilonFactor eps_infinity(unsigned d_minus, unsigned real_places, mpfr_prec_t prec);

struct GlobalEpsilon {
  Complex value;
  std::optional<Cyclotomic> exact;
  Int conductor;         // resolved conductor of rho
  Complex root_number;   // engine W with eps = W sqrt(N)
  std::string source;
};

// spec op: global_epsilon (dimension 1 via i^{d^-} tau_Q, induced via tau_K;
// both cross-checked against the FE-numeric route)
GlobalEpsilon global_epsilon(const ft::ArtinRepFT& rho, long digits,
                             lf::ApCache cache = nullptr);

struct IdentityCheck {
  bool pass = false;
  bool exact_equal = false;
  Real residual;
  Complex lhs, rhs;
};

// spec op: check_tau_sigma (Jacobi-sum equivariance of tau_Q)
IdentityCheck check_tau_sigma(const ft::DirichletChar& psi1, const ft::DirichletChar& psi2,
                              long a, long digits);

// spec op: check_tau_vs_epsilon over K_1/Q:
// (eps_K(chi psi) / (i tau_Q(phi^2 eps)))^sigma_a = eps_K(chi^a psi^a)/(i tau_Q((phi^a)^2 eps))
IdentityCheck check_tau_vs_epsilon(const ft::FalseTateChar& chi_psi_base,
                                   const ft::DirichletChar& phi, long a, long digits);

// exact sqrt(3) = zeta_12 + zeta_12^{-1} and i = zeta_4
Cyclotomic cyclo_sqrt3();
Cyclotomic cyclo_i();

}  // namespace eps
}  // namespace ftlv

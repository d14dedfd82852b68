#include "ftlv/lfunction.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <thread>

namespace ftlv {
namespace lf {

CoeffFn memoize_coeffs(std::function<std::vector<Complex>(size_t, mpfr_prec_t)> gen) {
  struct Cache {
    std::mutex mu;
    std::map<mpfr_prec_t, CoeffVec> by_prec;
  };
  auto cache = std::make_shared<Cache>();
  return [cache, gen](size_t n, mpfr_prec_t prec) -> CoeffVec {
    std::lock_guard<std::mutex> lk(cache->mu);
    auto it = cache->by_prec.find(prec);
    if (it != cache->by_prec.end() && it->second->size() > n) return it->second;
    auto fresh = std::make_shared<std::vector<Complex>>(gen(n + n / 4 + 8, prec));
    cache->by_prec[prec] = fresh;
    return fresh;
  };
}

namespace {

// n^{-s} for s = s2/2 (s2 any integer)

// rough decay-based estimate of where G_s drops below 10^{-D}
double cutoff_estimate(int degree, long D) {
  double d = degree;
  return std::pow(static_cast<double>(D) * 2.302585 / (3.14159265358979 * d), d / 2.0) * 1.35 + 2.0;
}

// one scaled sum for a family of coefficient streams sharing everything but
// the coefficients: S(A) = q^{s/2} sum_n c_n n^{-s} G_s(n * mult), with
// c_n = a_n (primary) or conj(a_n) (dual side)
std::vector<Complex> family_sum(const std::vector<const std::vector<Complex>*>& streams,
                                size_t N, const WeightFunction& W, long se2, const Real& mult,
                                const Real& sqrtq, bool dual, mpfr_prec_t prec) {
  const size_t K = streams.size();
  const unsigned nth = 2;
  std::vector<std::vector<Complex>> partial(nth, std::vector<Complex>(K, Complex(prec)));
  std::vector<std::thread> th;
  for (unsigned t = 0; t < nth; ++t) {
    th.emplace_back([&, t]() {
      std::vector<Complex> acc(K, Complex(prec));
      mpfr_t x, fac, tmp;
      mpfr_inits2(prec, x, fac, tmp, static_cast<mpfr_ptr>(nullptr));
      Real xr(prec);
      for (size_t n = 1 + t; n <= N; n += nth) {
        bool any = false;
        for (size_t k = 0; k < K && !any; ++k) any = !(*streams[k])[n].is_zero();
        if (!any) continue;
        mpfr_mul_ui(xr.raw(), mult.raw(), static_cast<unsigned long>(n), MPFR_RNDN);
        Real g = W.eval(xr);
        if (g.is_zero()) continue;
        // fac = n^{-s} * g in place
        if (se2 >= 0) {
          mpfr_set_ui(tmp, static_cast<unsigned long>(n), MPFR_RNDN);
          if (se2 % 2 != 0) {
            mpfr_pow_si(tmp, tmp, se2 / 2, MPFR_RNDN);
            mpfr_sqrt_ui(fac, static_cast<unsigned long>(n), MPFR_RNDN);
            mpfr_mul(tmp, tmp, fac, MPFR_RNDN);
          } else {
            mpfr_pow_si(tmp, tmp, se2 / 2, MPFR_RNDN);
          }
          mpfr_div(fac, g.raw(), tmp, MPFR_RNDN);
        } else {
          mpfr_set_ui(tmp, static_cast<unsigned long>(n), MPFR_RNDN);
          if ((-se2) % 2 != 0) {
            mpfr_pow_si(tmp, tmp, (-se2) / 2, MPFR_RNDN);
            mpfr_sqrt_ui(fac, static_cast<unsigned long>(n), MPFR_RNDN);
            mpfr_mul(tmp, tmp, fac, MPFR_RNDN);
          } else {
            mpfr_pow_si(tmp, tmp, (-se2) / 2, MPFR_RNDN);
          }
          mpfr_mul(fac, g.raw(), tmp, MPFR_RNDN);
        }
        for (size_t k = 0; k < K; ++k) {
          const Complex& an = (*streams[k])[n];
          if (an.is_zero()) continue;
          mpfr_fma(acc[k].re.raw(), an.re.raw(), fac, acc[k].re.raw(), MPFR_RNDN);
          mpfr_fma(acc[k].im.raw(), an.im.raw(), fac, acc[k].im.raw(), MPFR_RNDN);
        }
      }
      // the dual side sums conjugate coefficients: negate the imaginary part once
      if (dual)
        for (size_t k = 0; k < K; ++k) mpfr_neg(acc[k].im.raw(), acc[k].im.raw(), MPFR_RNDN);
      mpfr_clears(x, fac, tmp, static_cast<mpfr_ptr>(nullptr));
      partial[t] = std::move(acc);
    });
  }
  for (auto& x : th) x.join();
  Real qs = exp(log(sqrtq) * Real(se2, prec) / 2L);
  std::vector<Complex> out(K, Complex(prec));
  for (unsigned t = 0; t < nth; ++t)
    for (size_t k = 0; k < K; ++k) out[k] += partial[t][k];
  for (size_t k = 0; k < K; ++k) out[k] = out[k] * qs;
  return out;
}

struct SumSet {
  // indexed [A-index][spec]; A0 = 1, A1 = 11/10, A2 = 5/4
  std::vector<std::vector<Complex>> S1, S2;
  size_t N = 0;
};

SumSet compute_sums(const std::vector<const LFunctionSpec*>& specs, long s2, long digits,
                    const WeightPair& wp, int n_scalings, mpfr_prec_t prec) {
  const LFunctionSpec& head = *specs[0];
  const long sp2 = 2 * (head.weight + 1) - s2;
  Real sqrtq = sqrt(int_to_real(head.conductor, prec));

  double x_cut;
  {
    double lg_bound = -(digits + 8.0);
    double xc = std::max(wp.at_s->cutoff_x(lg_bound), wp.at_dual->cutoff_x(lg_bound));
    double n_est = xc * sqrtq.to_double() * 1.25 + 16;
    double margin = (head.coeff_log_growth + 1.0) * std::log10(n_est) + 2.0;
    // the tables promise ~digits+6+17 absolute digits; do not probe deeper
    double lg2 = std::max(lg_bound - margin, -(digits + 6.0 + 15.0));
    x_cut = std::max(wp.at_s->cutoff_x(lg2), wp.at_dual->cutoff_x(lg2));
  }
  const Real As[3] = {Real(1L, prec), Real("1.1", prec), Real("1.25", prec)};
  size_t N = static_cast<size_t>(x_cut * sqrtq.to_double() * As[2].to_double()) + 16;

  std::vector<CoeffVec> keep;
  std::vector<const std::vector<Complex>*> streams;
  for (const LFunctionSpec* s : specs) {
    keep.push_back(s->coeffs(N, prec));
    if (keep.back()->size() < N + 1)
      raise(ErrorKind::NeedMoreCoefficients, "coefficient stream too short");
    streams.push_back(keep.back().get());
  }

  SumSet out;
  out.N = N;
  out.S1.resize(n_scalings);
  out.S2.resize(n_scalings);
  for (int ai = 0; ai < n_scalings; ++ai) {
    Real mult1 = Real(1L, prec) / (sqrtq * As[ai]);
    Real mult2 = As[ai] / sqrtq;
    out.S1[ai] = family_sum(streams, N, *wp.at_s, s2, mult1, sqrtq, false, prec);
    out.S2[ai] = family_sum(streams, N, *wp.at_dual, sp2, mult2, sqrtq, true, prec);
  }
  return out;
}

Real pole_term(const LFunctionSpec& spec, long s2, const Real& A, mpfr_prec_t prec) {
  if (!spec.zeta_pole) return Real(0L, prec);
  // Lambda_zeta has residues +1 at s = 1, -1 at s = 0:
  // Lambda(s) = S1 + eps S2 - A^{1-s}/(1-s) - A^{-s}/s
  if (s2 == 2 || s2 == 0) raise(ErrorKind::Internal, "zeta evaluation at a pole");
  Real s = Real(s2, prec) / 2L;
  Real one(1L, prec);
  Real la = log(A);
  return exp(la * (one - s)) / (one - s) + exp(la * (-s)) / s;
}

}  // namespace

WeightPair make_weights(const LFunctionSpec& spec, long s2, long digits) {
  long sp2 = 2 * (spec.weight + 1) - s2;
  // size the series tables past the largest argument the sums will request:
  // the cutoff for the margin-refined bound, inflated by the A-range (5/4)
  double x0 = cutoff_estimate(spec.degree, digits + 12);
  double n_est = x0 * std::sqrt(std::max(1.0, mpz_get_d(spec.conductor.get_mpz_t()))) * 1.25 + 16;
  double margin = (spec.coeff_log_growth + 1.0) * std::log10(n_est) + 3.0;
  // dual-side arguments reach x_cut * (5/4)^2; build with headroom
  double xm = cutoff_estimate(spec.degree, digits + 12 + static_cast<long>(margin)) * 1.8 + 4.0;
  WeightPair wp;
  wp.at_s = std::make_shared<WeightFunction>(spec.gamma_shifts, s2, digits + 6, xm);
  if (sp2 == s2)
    wp.at_dual = wp.at_s;
  else
    wp.at_dual = std::make_shared<WeightFunction>(spec.gamma_shifts, sp2, digits + 6, xm);
  return wp;
}

std::vector<EvalResult> evaluate_L_many(const std::vector<const LFunctionSpec*>& specs, long s2,
                                        long digits, const WeightPair* shared) {
  if (specs.empty()) return {};
  const mpfr_prec_t prec = bits_for_digits(digits + 15);
  const LFunctionSpec& head = *specs[0];
  for (const LFunctionSpec* s : specs) {
    if (s->gamma_shifts != head.gamma_shifts || s->weight != head.weight ||
        !(s->conductor == head.conductor))
      raise(ErrorKind::Internal, "evaluate_L_many: incompatible family");
  }

  WeightPair local_wp;
  const WeightPair* wp = shared;
  if (!wp) {
    local_wp = make_weights(head, s2, digits);
    wp = &local_wp;
  }

  SumSet sums = compute_sums(specs, s2, digits, *wp, 3, prec);
  const Real As[3] = {Real(1L, prec), Real("1.1", prec), Real("1.25", prec)};

  Real gam = gamma_product(head.gamma_shifts, s2, prec);
  Real sqrtq = sqrt(int_to_real(head.conductor, prec));
  Real qs = exp(log(sqrtq) * Real(s2, prec) / 2L);
  Real scale = abs(gam) * qs;

  std::vector<EvalResult> out;
  for (size_t k = 0; k < specs.size(); ++k) {
    const LFunctionSpec& spec = *specs[k];
    Complex F[3];
    for (int ai = 0; ai < 3; ++ai)
      F[ai] = sums.S1[ai][k] - Complex(pole_term(spec, s2, As[ai], prec), Real(0L, prec));

    Complex eps(prec);
    std::optional<Complex> solved;
    if (spec.root_number) {
      eps = *spec.root_number;
    } else {
      Complex num = F[0] - F[1];
      Complex den = sums.S2[1][k] - sums.S2[0][k];
      if (den.abs() < pow10(-(digits + 2), prec))
        raise(ErrorKind::NoRootNumberConverged, "root-number system is degenerate");
      eps = num / den;
      solved = eps;
    }
    Complex lambda = F[0] + eps * sums.S2[0][k];
    Complex lambda3 = F[2] + eps * sums.S2[2][k];

    EvalResult r;
    r.value = lambda / (gam * qs);
    r.fe_residual = (lambda3 - lambda).abs() / scale;
    r.terms_used = sums.N;
    r.solved_root_number = solved;
    out.push_back(std::move(r));
  }
  return out;
}

EvalResult evaluate_L(const LFunctionSpec& spec, long s2, long digits, const WeightPair* shared) {
  std::vector<const LFunctionSpec*> one{&spec};
  return evaluate_L_many(one, s2, digits, shared)[0];
}

ConductorResult conductor_search(const LFunctionSpec& spec, long digits) {
  if (spec.conductor_candidates.empty())
    raise(ErrorKind::NoCandidate, "conductor_search: empty candidate set");
  long probe_digits = std::min<long>(digits, 9);
  long s2_probe = 2 * (spec.weight + 1) - 1;  // near-central half-integer point
  const mpfr_prec_t pprec = bits_for_digits(probe_digits + 15);

  // candidates sorted largest-first so the shared coefficient stream is
  // generated once at full length; weight tables shared across candidates
  std::vector<Int> cands = spec.conductor_candidates;
  std::sort(cands.begin(), cands.end(), [](const Int& a, const Int& b) { return a > b; });
  cands.erase(std::unique(cands.begin(), cands.end()), cands.end());
  WeightPair probe_wp;
  {
    LFunctionSpec s = spec;
    s.conductor = cands.front();
    probe_wp = make_weights(s, s2_probe, probe_digits);
  }

  // stage 1: cheap filter on |eps| = 1 (two scalings, no residual point)
  std::vector<Int> stage1;
  for (const Int& q : cands) {
    LFunctionSpec s = spec;
    s.conductor = q;
    s.root_number.reset();
    try {
      std::vector<const LFunctionSpec*> one{&s};
      SumSet sums = compute_sums(one, s2_probe, probe_digits, probe_wp, 2, pprec);
      Complex num = sums.S1[0][0] - sums.S1[1][0];
      Complex den = sums.S2[1][0] - sums.S2[0][0];
      if (den.abs() < pow10(-(probe_digits + 2), pprec)) continue;
      Complex eps = num / den;
      Real dev = abs(eps.abs2() - Real(1L, pprec));
      if (dev < Real("1e-4", pprec)) stage1.push_back(q);
    } catch (const Error&) {
      // a wrong conductor may make the solve degenerate; that is a rejection
    }
  }
  if (stage1.empty()) raise(ErrorKind::NoCandidate, "conductor_search: no candidate satisfied the FE");

  // stage 2: full residual at probe precision if several remain
  std::vector<std::pair<Int, Complex>> survivors;
  for (const Int& q : stage1) {
    LFunctionSpec s = spec;
    s.conductor = q;
    s.root_number.reset();
    try {
      EvalResult r = evaluate_L(s, s2_probe, probe_digits, &probe_wp);
      Real dev = abs(r.solved_root_number->abs2() - Real(1L, pprec));
      if (dev < Real("1e-4", pprec) && r.fe_residual < pow10(-(probe_digits - 4), pprec))
        survivors.emplace_back(q, *r.solved_root_number);
    } catch (const Error&) {
    }
  }
  if (survivors.empty()) raise(ErrorKind::NoCandidate, "conductor_search: no candidate satisfied the FE");
  if (survivors.size() > 1)
    raise(ErrorKind::AmbiguousCandidates,
          "conductor_search: several candidates satisfied the FE (raise digits)");

  LFunctionSpec s = spec;
  s.conductor = survivors[0].first;
  s.root_number.reset();
  EvalResult r = evaluate_L(s, s2_probe, std::min<long>(digits, 16));
  mpfr_prec_t prec = bits_for_digits(std::min<long>(digits, 16) + 15);
  Real tol_res = pow10(-(std::min<long>(digits, 16) - 5), prec);
  if (!(r.fe_residual < tol_res))
    raise(ErrorKind::ResidualTooLarge, "conductor_search: survivor failed the certification");
  return ConductorResult{survivors[0].first, *r.solved_root_number, r.fe_residual};
}

}  // namespace lf
}  // namespace ftlv

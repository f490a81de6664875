#pragma once

#include "flatzeta/asym.hpp"
#include "flatzeta/zeta.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace flatzeta {

/// Outcome of one check. A scalar target passes when |observed - target| <=
/// tolerance; an interval target passes when observed lies inside it.
struct VerificationReport {
  std::string check_id;
  double target = 0;
  std::optional<double> target_lo, target_hi;
  double observed = 0;
  double tolerance = 0;
  bool passed = false;
  std::vector<double> residual_log;
  double runtime_seconds = 0;
  std::string detail;

  bool is_interval() const { return target_lo.has_value(); }
  /// Recomputes `passed` from target, observed and tolerance.
  bool recompute() const;
};

/// Overrides for the theorem targets, used to inject expectations.
struct Targets {
  std::optional<double> A;
  std::optional<double> one_over_pq;
};

struct TheoremOptions {
  Targets targets;
  int window = 6;
  int threads = 0;
};

VerificationReport verify_theorem31(const FamilyParams& params, const SigmaSchedule& schedule, const NumericConfig& cfg,
                                    const TheoremOptions& opt = {});

VerificationReport verify_theorem21(const FamilyParams& params, const BumpSpec& bump, const SigmaSchedule& schedule,
                                    const NumericConfig& cfg, const TheoremOptions& opt = {});

/// The inequality chains around Z1, Z2 and Z at every (lambda, sigma) pair.
VerificationReport verify_sandwich(const FamilyParams& params, const std::vector<double>& lambdas,
                                   const std::vector<double>& sigmas, const NumericConfig& cfg);

/// Randomized parameters, lambda and sigma; `count` cases.
VerificationReport verify_sandwich_random(int count, std::uint64_t seed, const NumericConfig& cfg, int threads = 0);

/// Identity residuals at one (lambda, sigma). observed is the largest relative
/// residual; residual_log lists each one in the order given by `detail`.
VerificationReport verify_decompositions(const FamilyParams& params, double lambda, double sigma,
                                         const NumericConfig& cfg);

/// psi monotonicity and limits, the second-order flat bound, E = e^q and
/// rho(e(x)) = x over `samples` random draws.
VerificationReport verify_psi_and_flat(int samples, std::uint64_t seed);

/// Trends of L, M and the weighted forms toward their limits at lambda ->
/// 0 and infinity.
VerificationReport verify_LM_limits(const FamilyParams& params, const NumericConfig& cfg);

/// Regime gating, fit recovery on synthetic data, and the optimizer bracket.
VerificationReport verify_asym_invariants(const FamilyParams& subcritical, const NumericConfig& cfg, int samples,
                                          std::uint64_t seed);

/// Flat-suppressed zeta_quadrant against the monomial closed form at each
/// sigma; relative tolerance 1e-8.
VerificationReport verify_monomial_oracle(const FamilyParams& params, const std::vector<double>& sigmas,
                                          const NumericConfig& cfg);

/// Slope of log Z against log X over the last 4 schedule points compared with
/// -blowup_exponent (tolerance 0.05), and its distance from the nearest
/// integer in units of the slope's standard error (must exceed 3).
VerificationReport verify_nonpolar(const FamilyParams& params, const SigmaSchedule& schedule, const NumericConfig& cfg,
                                   int threads = 0);

struct LandauOptions {
  double rel_tol = 1e-6;
  bool check_derivatives = true;
};

/// Taylor partial sum of the monomial zeta function about s0, evaluated at
/// s_target and compared with direct quadrature.
VerificationReport landau_taylor_rebuild(const Monomial& m, const BumpSpec& bump, double s0, double s_target, int J,
                                         const NumericConfig& cfg, const LandauOptions& opt = {});

}  // namespace flatzeta

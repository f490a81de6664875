#pragma once

#include "flatzeta/model.hpp"
#include "flatzeta/zeta.hpp"

#include <vector>

namespace flatzeta {

/// A = int_0^inf x^{-a/b} (1 - exp(-1/(q x^p))) dx. Supercritical only.
/// Depends on (a,b,q,p) alone.
double constant_A(const FamilyParams& params, const NumericConfig& cfg);

/// L(lambda). Subcritical only.
double constant_L(const FamilyParams& params, double lambda);

/// M(lambda). Throws DegenerateLowerLimit when rho(lambda r2) underflows.
double constant_M(const FamilyParams& params, double lambda, const NumericConfig& cfg);

/// Objectives bounding the subcritical limit from below and above.
double case3_lower_objective(const FamilyParams& params, double lambda, const NumericConfig& cfg);
double case3_upper_objective(const FamilyParams& params, double lambda, const NumericConfig& cfg);

struct Case3Bounds {
  double lower = 0;
  double upper = 0;
  double lambda_lower = 1;
  double lambda_upper = 1;
};

/// Maximized lower and minimized upper bound over log(lambda) in [log_lo, log_hi].
Case3Bounds case3_bounds(const FamilyParams& params, const NumericConfig& cfg, double log_lo = -12,
                         double log_hi = 12);

enum class ScalingKind { PowerLaw, LogLaw, Raw };

std::string to_string(ScalingKind kind);

struct BlowupSequence {
  SigmaSchedule schedule;
  std::vector<double> scaled;
  ScalingKind kind = ScalingKind::Raw;
};

BlowupSequence scale_sequence(const FamilyParams& params, const std::vector<ZetaSample>& samples);

struct LimitEstimate {
  double limit = 0;
  double uncertainty = 0;
  double rms_residual = 0;
  double condition = 0;
};

/// Least-squares extrapolation to X = 0 over the last `window` points.
LimitEstimate extract_limit(const BlowupSequence& seq, int window = 6);

/// Slope of log Z against log X over the last `count` samples, with its
/// standard error.
struct SlopeFit {
  double slope = 0;
  double stderr_ = 0;
};
SlopeFit local_exponent(const std::vector<ZetaSample>& samples, int count = 4);

}  // namespace flatzeta

#pragma once

#include "flatzeta/model.hpp"

namespace flatzeta {

/// log e(x) = -1/(q x^p); -inf at x = 0. No cutoff is applied.
double log_e_flat(const FamilyParams& params, double x);

/// e(x) = exp(-1/(q x^p)), exactly 0 at x = 0 and whenever 1/(q x^p) > cutoff.
double e_flat(const FamilyParams& params, double x, double cutoff = kDefaultFlatCutoff);

/// E(x) = exp(-1/x^p) = e(x)^q, with the same cutoff point as e_flat.
double E_flat(const FamilyParams& params, double x, double cutoff = kDefaultFlatCutoff);

/// psi_alpha(x) = (1 - alpha^x)/x.
double psi(double alpha, double x);

/// Inverse of e on [0, e(r1)), saturating at r1.
double rho(const FamilyParams& params, double y);

struct BumpSpec {
  double R1 = 0.5;
  double R2 = 0.5;
  double amplitude = 7.38905609893065;  // e^2, so that phi(0,0) = 1

  void validate() const;
};

double bump_eval(const BumpSpec& spec, double x, double y);

/// One-dimensional factor e * exp(1/((u/R)^2 - 1)), equal to 1 at u = 0.
double bump_factor(double R, double u);

}  // namespace flatzeta

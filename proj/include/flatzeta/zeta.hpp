#pragma once

#include "flatzeta/funcs.hpp"
#include "flatzeta/model.hpp"
#include "flatzeta/quad.hpp"

#include <optional>
#include <vector>

namespace flatzeta {

struct ZetaSample {
  double sigma = 0;
  double X = 0;
  double value = 0;
  double error = 0;
};

/// A computed quantity with its absolute error estimate.
struct Estimate {
  double value = 0;
  double error = 0;
};

struct DecompositionTrace {
  double lambda = 1;
  Estimate z1, z2;            // region integrals over U1, U2
  Estimate ztilde1, ztilde2;  // auxiliary integrals
  std::optional<Estimate> G1, G2, G3, H1, H2, J1, J2;
};

/// x^{a s} y^{(b-q) s} (y^q + E(x))^s on the open quadrant, evaluated in the log
/// domain. E(x) is treated as 0 below the flat cutoff.
double integrand(const FamilyParams& params, double x, double y, double sigma, double cutoff = kDefaultFlatCutoff);

/// Throws OutOfWindow unless -1/b < sigma < 0.
void check_window(const FamilyParams& params, double sigma);

/// Z(sigma) over [0,r1] x [0,r2] by an exact scaled inner integral and 1D
/// quadrature in x.
ZetaSample zeta_quadrant(const FamilyParams& params, double sigma, const NumericConfig& cfg);

/// Z(sigma) by iterated 2D quadrature split along y = e(x). Slower; used as a
/// cross-check.
ZetaSample zeta_quadrant_2d(const FamilyParams& params, double sigma, const NumericConfig& cfg);

/// Integral of |f|^sigma phi over the plane. q must be even.
ZetaSample zeta_weighted(const FamilyParams& params, const BumpSpec& bump, double sigma, const NumericConfig& cfg);

/// Integral of |f|^sigma over the box [-R1,R1] x [-R2,R2], i.e. phi = 1 there.
ZetaSample zeta_weighted_indicator(const FamilyParams& params, double R1, double R2, double sigma,
                                   const NumericConfig& cfg);

/// Exact integral of x^{a s} y^{b s} over [0,r1] x [0,r2].
double monomial_closed_form(int a, int b, double r1, double r2, double sigma);

Estimate ztilde1(const FamilyParams& params, double lambda, double sigma, const NumericConfig& cfg);
Estimate ztilde2(const FamilyParams& params, double lambda, double sigma, const NumericConfig& cfg);

/// Direct 2D evaluations of the auxiliary integrals (cross-checks).
Estimate ztilde1_2d(const FamilyParams& params, double lambda, double sigma, const NumericConfig& cfg);
Estimate ztilde2_2d(const FamilyParams& params, double lambda, double sigma, const NumericConfig& cfg);

struct RegionSplit {
  Estimate z1, z2;
};

/// Z1, Z2 via the scaled inner integral (fast path).
RegionSplit region_split(const FamilyParams& params, double lambda, double sigma, const NumericConfig& cfg);

/// Z1, Z2 by split 2D quadrature along y = e(x)/lambda, the auxiliaries, and
/// the regime-matched sub-decomposition.
DecompositionTrace region_pieces(const FamilyParams& params, double lambda, double sigma, const NumericConfig& cfg);

struct GParts {
  Estimate G1, G2, G3;
  double scale = 0;  // lambda^{-X} X^{-1+(1+a sigma)/p}
  double U = 0;
};
GParts g_parts(const FamilyParams& params, double lambda, double sigma, const NumericConfig& cfg);

struct HParts {
  Estimate H1, H2;
  double U = 0;
};
HParts h_parts(const FamilyParams& params, double lambda, double sigma, const NumericConfig& cfg);

struct JParts {
  Estimate J1, J2;
};
JParts j_parts(const FamilyParams& params, double lambda, double sigma, const NumericConfig& cfg);

/// f = x^a y^b, used for the log-derivative and continuation checks.
struct Monomial {
  int a = 1;
  int b = 2;
};

/// Weighted zeta of a monomial by 2D quadrature over the bump support.
double monomial_weighted(const Monomial& m, const BumpSpec& bump, double s, const NumericConfig& cfg);

/// D_j(s) = integral of |f|^s (log|f|)^j phi for a monomial.
double log_derivative_integral(const Monomial& m, const BumpSpec& bump, double s, int j, const NumericConfig& cfg);

/// All D_0..D_J at once (shares the one-dimensional moments).
std::vector<double> log_derivative_integrals(const Monomial& m, const BumpSpec& bump, double s, int J,
                                             const NumericConfig& cfg);

/// D_j(s) for the family by 2D quadrature; q must be even.
double log_derivative_integral(const FamilyParams& params, const BumpSpec& bump, double s, int j,
                               const NumericConfig& cfg);

/// Z over a schedule, one worker per sigma.
std::vector<ZetaSample> zeta_schedule(const FamilyParams& params, const SigmaSchedule& schedule,
                                      const NumericConfig& cfg, int threads = 0);
std::vector<ZetaSample> zeta_weighted_schedule(const FamilyParams& params, const BumpSpec& bump,
                                               const SigmaSchedule& schedule, const NumericConfig& cfg,
                                               int threads = 0);

}  // namespace flatzeta

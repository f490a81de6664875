#include "flatzeta/funcs.hpp"

#include "flatzeta/error.hpp"

#include <cmath>
#include <limits>

namespace flatzeta {

namespace {

// x^p for rational p; uses integer powers when p is an integer.
double rpow(double x, const Rational& p) {
  if (p.den() == 1 && p.num() >= 1 && p.num() <= 8) {
    double r = x;
    for (std::int64_t i = 1; i < p.num(); ++i) r *= x;
    return r;
  }
  return std::pow(x, p.to_double());
}

void require_nonneg(double x, const char* what) {
  if (!(x >= 0)) throw DomainError(std::string(what) + ": argument must be >= 0");
}

}  // namespace

double log_e_flat(const FamilyParams& params, double x) {
  require_nonneg(x, "log_e_flat");
  if (x == 0) return -std::numeric_limits<double>::infinity();
  return -1.0 / (params.q * rpow(x, params.p));
}

double e_flat(const FamilyParams& params, double x, double cutoff) {
  double le = log_e_flat(params, x);
  if (-le > cutoff) return 0.0;
  return std::exp(le);
}

double E_flat(const FamilyParams& params, double x, double cutoff) {
  double le = log_e_flat(params, x);
  if (-le > cutoff) return 0.0;
  return std::exp(params.q * le);
}

double psi(double alpha, double x) {
  if (!(alpha > 0) || !(x > 0)) throw DomainError("psi needs alpha > 0 and x > 0");
  double la = std::log(alpha);
  if (x < 1e-8) return -la - x * la * la / 2;
  return -std::expm1(x * la) / x;
}

double rho(const FamilyParams& params, double y) {
  require_nonneg(y, "rho");
  if (y == 0) return 0.0;
  long double er1 = std::exp(-1.0L / (params.q * std::pow(static_cast<long double>(params.r1), static_cast<long double>(params.pd()))));
  if (static_cast<long double>(y) >= er1) return params.r1;
  double v = std::pow(-1.0 / (params.q * std::log(y)), 1.0 / params.pd());
  return v < params.r1 ? v : params.r1;
}

void BumpSpec::validate() const {
  if (!(R1 > 0) || !(R2 > 0)) throw InvalidParams("bump half-widths must be positive");
  if (!(amplitude > 0)) throw InvalidParams("bump amplitude must be positive");
}

double bump_factor(double R, double u) {
  double t = u / R;
  double t2 = t * t;
  if (!(t2 < 1)) return 0.0;
  return std::exp(1.0 + 1.0 / (t2 - 1.0));
}

double bump_eval(const BumpSpec& spec, double x, double y) {
  double tx = x / spec.R1, ty = y / spec.R2;
  double tx2 = tx * tx, ty2 = ty * ty;
  if (!(tx2 < 1) || !(ty2 < 1)) return 0.0;
  return spec.amplitude * std::exp(1.0 / (tx2 - 1.0) + 1.0 / (ty2 - 1.0));
}

}  // namespace flatzeta

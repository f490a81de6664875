#include "flatzeta/model.hpp"

#include "flatzeta/error.hpp"

#include <cmath>
#include <sstream>

namespace flatzeta {

FamilyParams::FamilyParams(int a_, int b_, int q_, Rational p_, double r1_, double r2_)
    : a(a_), b(b_), q(q_), p(p_), r1(r1_), r2(r2_) {
  validate();
}

void FamilyParams::validate() const {
  if (a < 0 || a >= b) throw InvalidParams("need 0 <= a < b");
  if (b < 2) throw InvalidParams("need b >= 2");
  if (q < 1 || q > b) throw InvalidParams("need 1 <= q <= b");
  if (p.sign() <= 0) throw InvalidParams("need p > 0");
  if (!(r1 > 0 && r1 < 1)) throw InvalidParams("need 0 < r1 < 1");
  if (!(r2 > 0 && r2 < 1)) throw InvalidParams("need 0 < r2 < 1");
}

std::string FamilyParams::str() const {
  std::ostringstream os;
  os.precision(17);
  os << "(a=" << a << ", b=" << b << ", q=" << q << ", p=" << p.str() << ", r1=" << r1 << ", r2=" << r2 << ")";
  return os.str();
}

std::string to_string(RegimeKind kind) {
  switch (kind) {
    case RegimeKind::SupercriticalFlat: return "supercritical";
    case RegimeKind::CriticalFlat: return "critical";
    case RegimeKind::SubcriticalFlat: return "subcritical";
  }
  return "unknown";
}

Regime classify_regime(const FamilyParams& params) {
  Regime r;
  Rational ab(params.a, params.b);
  r.epsilon0_exact = ab + params.p - Rational(1);
  r.epsilon0 = r.epsilon0_exact.to_double();
  int s = r.epsilon0_exact.sign();
  if (s > 0) {
    r.kind = RegimeKind::SupercriticalFlat;
    r.blowup_exponent = (Rational(1) - (Rational(1) - ab) / params.p).to_double();
  } else if (s == 0) {
    r.kind = RegimeKind::CriticalFlat;
  } else {
    r.kind = RegimeKind::SubcriticalFlat;
  }
  return r;
}

NewtonDistance newton_distance(int a, int b) {
  if (a < 0 || b <= 0 || a >= b) throw InvalidParams("newton_distance needs 0 <= a < b");
  return {b, Rational(1, b)};
}

SigmaSchedule make_schedule(ScheduleKind, double X_start, double ratio, int count, int b) {
  if (b < 1) throw InvalidParams("schedule needs b >= 1");
  if (count < 4) throw InvalidParams("schedule needs at least 4 points");
  if (!(ratio > 0 && ratio < 1)) throw InvalidParams("schedule ratio must lie in (0,1)");
  if (!(X_start > 0)) throw InvalidParams("schedule start must be positive");
  if (X_start >= 1) throw InvalidParams("largest sigma of the schedule is not below 0");
  SigmaSchedule s;
  s.b = b;
  for (int k = 0; k < count; ++k) {
    double X = X_start * std::pow(ratio, k);
    if (!(X > 0)) throw InvalidParams("schedule underflows");
    s.X.push_back(X);
    s.sigma.push_back((X - 1) / b);
  }
  return s;
}

SigmaSchedule default_schedule(int b) { return make_schedule(ScheduleKind::Geometric, 0.125, 0.5, 14, b); }

void NumericConfig::validate() const {
  if (!(tol_1d > 0 && tol_1d <= 1e-2)) throw InvalidParams("tol_1d must lie in (0, 1e-2]");
  if (!(tol_2d > 0 && tol_2d <= 1e-2)) throw InvalidParams("tol_2d must lie in (0, 1e-2]");
  if (!(flat_cutoff_exponent >= 500)) throw InvalidParams("flat cutoff exponent must be >= 500");
  if (max_subdivisions < 1) throw InvalidParams("max_subdivisions must be positive");
}

}  // namespace flatzeta

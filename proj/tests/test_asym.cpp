#include <doctest.h>

#include "flatzeta/asym.hpp"
#include "flatzeta/error.hpp"
#include "flatzeta/zeta.hpp"

#include <cmath>

using namespace flatzeta;

// Reference values come from the mpmath scripts in tests/oracles.

namespace {
const FamilyParams kSup(0, 2, 2, Rational(2), 0.5, 0.5);
const FamilyParams kCrit(0, 2, 2, Rational(1), 0.5, 0.5);
const FamilyParams kSub(1, 2, 2, Rational(1, 4), 0.5, 0.5);
const NumericConfig kCfg;

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

BlowupSequence synthetic(double (*S)(double), int n, int first) {
  BlowupSequence seq;
  seq.schedule = make_schedule(ScheduleKind::Geometric, std::ldexp(1.0, -first), 0.5, n, 2);
  for (double X : seq.schedule.X) seq.scaled.push_back(S(X));
  seq.kind = ScalingKind::PowerLaw;
  return seq;
}
}  // namespace

TEST_CASE("constant A") {
  CHECK(rel(constant_A(kSup, kCfg), std::sqrt(M_PI / 2)) < 1e-9);
  CHECK(rel(constant_A(FamilyParams(0, 2, 1, Rational(2), 0.5, 0.5), kCfg), std::sqrt(M_PI)) < 1e-9);
  CHECK_THROWS_AS(constant_A(kCrit, kCfg), WrongRegime);
  CHECK_THROWS_AS(constant_A(kSub, kCfg), WrongRegime);
  // no dependence on the box
  FamilyParams moved(0, 2, 2, Rational(2), 0.3, 0.7);
  CHECK(constant_A(moved, kCfg) == constant_A(kSup, kCfg));
  // a > 0: int_0^inf x^(-1/3)(1 - exp(-1/(2x))) dx = Gamma(1/3) 2^(-2/3) / (2/3)... checked numerically
  FamilyParams third(1, 3, 2, Rational(1), 0.5, 0.5);
  double expect = std::tgamma(1.0 / 3) * std::pow(0.5, 2.0 / 3) * 1.5;
  CHECK(rel(constant_A(third, kCfg), expect) < 1e-8);
}

TEST_CASE("constant L") {
  CHECK(constant_L(kSub, 2 * std::exp(-2.0)) == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(rel(constant_L(kSub, 1), 0.72134752044448170) < 1e-9);
  // saturated branch
  double lam = 4;
  double c = 0.5;
  double expect = std::pow(0.5, c) * std::log(lam * 0.5) / c + std::pow(0.5, c - 0.25) / (2 * (c - 0.25));
  CHECK(rel(constant_L(kSub, lam), expect) < 1e-13);
  CHECK(constant_L(kSub, 1e-300) < constant_L(kSub, 1e-6));
  CHECK_THROWS_AS(constant_L(kSup, 1), WrongRegime);
}

TEST_CASE("constant M") {
  CHECK(rel(constant_M(kSub, 1, kCfg), 1.3950594060599476) < 1e-9);
  CHECK(rel(constant_M(kSub, std::exp(-4.0), kCfg), 4.0643168) < 1e-7);
  CHECK(rel(constant_M(kSub, std::exp(8.0), kCfg), 0.0004744158) < 1e-7);
  CHECK(constant_M(kSub, 1e6, kCfg) < constant_M(kSub, 1, kCfg));
  CHECK_THROWS_AS(constant_M(kSub, 1e-320, kCfg), DegenerateLowerLimit);
}

TEST_CASE("case three bounds") {
  Case3Bounds b = case3_bounds(kSub, kCfg);
  CHECK(b.lower > 0);
  CHECK(b.lower <= b.upper);
  // the mpmath grid at integer log lambda never beats the optimum
  CHECK(b.upper <= 2.1164069 + 1e-7);
  CHECK(b.lower >= 1.4965257 - 1e-7);
  CHECK(b.upper == doctest::Approx(case3_upper_objective(kSub, b.lambda_upper, kCfg)).epsilon(1e-12));
  CHECK(b.lower == doctest::Approx(case3_lower_objective(kSub, b.lambda_lower, kCfg)).epsilon(1e-12));
  for (double t : {-12.0, 12.0}) {
    CHECK(case3_upper_objective(kSub, std::exp(t), kCfg) > b.upper);
    CHECK(case3_lower_objective(kSub, std::exp(t), kCfg) < b.lower);
  }
  CHECK(rel(case3_upper_objective(kSub, 1, kCfg), 2.1164069) < 1e-7);
  CHECK(rel(case3_lower_objective(kSub, 1, kCfg), 1.4965257) < 1e-7);
  CHECK(case3_lower_objective(kSub, std::exp(-12.0), kCfg) < 0.05);
  CHECK(case3_lower_objective(kSub, std::exp(12.0), kCfg) < 0.05);
  CHECK_THROWS_AS(case3_bounds(kCrit, kCfg), WrongRegime);
  // a bracket that excludes the optimum is reported
  CHECK_THROWS_AS(case3_bounds(kSub, kCfg, 3, 6), OptimizerBracketFailure);
}

TEST_CASE("scaling") {
  std::vector<ZetaSample> z;
  for (double X : {0.1, 0.01}) z.push_back({(X - 1) / 2, X, 7.0, 0});
  BlowupSequence s = scale_sequence(kSup, z);
  CHECK(s.kind == ScalingKind::PowerLaw);
  CHECK(s.scaled[1] == doctest::Approx(7 * std::sqrt(0.01)));
  BlowupSequence c = scale_sequence(kCrit, z);
  CHECK(c.kind == ScalingKind::LogLaw);
  CHECK(c.scaled[0] == doctest::Approx(7 / std::abs(std::log(0.1))));
  BlowupSequence r = scale_sequence(kSub, z);
  CHECK(r.kind == ScalingKind::Raw);
  CHECK(r.scaled[0] == 7.0);
  CHECK(to_string(ScalingKind::LogLaw) == "log");
}

TEST_CASE("limit extraction") {
  LimitEstimate a = extract_limit(synthetic([](double X) { return 3 + 0.1 * X * std::log(X); }, 10, 4));
  CHECK(std::abs(a.limit - 3) < 1e-8);
  CHECK(a.uncertainty < 1e-8);
  LimitEstimate b = extract_limit(synthetic([](double) { return 5.0; }, 6, 4));
  CHECK(b.limit == doctest::Approx(5.0).epsilon(1e-13));
  LimitEstimate c = extract_limit(synthetic([](double X) { return 1.5 - 0.2 * X * std::log(X) + 0.7 * X; }, 8, 3));
  CHECK(std::abs(c.limit - 1.5) < 1e-8);

  BlowupSequence lg = synthetic([](double X) { return 0.5 + 0.3 / std::abs(std::log(X)) + X; }, 8, 3);
  lg.kind = ScalingKind::LogLaw;
  CHECK(std::abs(extract_limit(lg).limit - 0.5) < 1e-8);

  BlowupSequence three = synthetic([](double) { return 1.0; }, 6, 4);
  three.schedule.X.resize(3);
  three.scaled.resize(3);
  CHECK_THROWS_AS(extract_limit(three), InvalidParams);
  // repeated abscissae make the design matrix singular
  BlowupSequence tiny = synthetic([](double) { return 1.0; }, 6, 4);
  for (double& X : tiny.schedule.X) X = 0.01;
  CHECK_THROWS_AS(extract_limit(tiny), IllConditionedFit);
}

TEST_CASE("local exponent") {
  std::vector<ZetaSample> z;
  for (int k = 0; k < 6; ++k) {
    double X = std::ldexp(1.0, -3 - k);
    z.push_back({(X - 1) / 2, X, 2 * std::pow(X, -0.75), 0});
  }
  SlopeFit f = local_exponent(z);
  CHECK(f.slope == doctest::Approx(-0.75).epsilon(1e-12));
  CHECK(f.stderr_ < 1e-12);
}

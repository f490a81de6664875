#include <doctest.h>

#include "flatzeta/error.hpp"
#include "flatzeta/verify.hpp"
#include "flatzeta/zeta.hpp"

#include <cmath>

using namespace flatzeta;

namespace {
const FamilyParams kSup(0, 2, 2, Rational(2), 0.5, 0.5);
const FamilyParams kCrit(0, 2, 2, Rational(1), 0.5, 0.5);
const FamilyParams kSub(1, 2, 2, Rational(1, 4), 0.5, 0.5);
const NumericConfig kCfg;

SigmaSchedule acceptance_schedule() { return make_schedule(ScheduleKind::Geometric, 0.125, 0.5, 12, 2); }
}  // namespace

TEST_CASE("reports are pure data") {
  VerificationReport r;
  r.target = 1;
  r.tolerance = 0.1;
  r.observed = 1.05;
  CHECK(r.recompute());
  r.observed = 1.2;
  CHECK_FALSE(r.recompute());
  r.target_lo = 0.5;
  r.target_hi = 1.5;
  CHECK(r.is_interval());
  CHECK(r.recompute());
  r.observed = 1.6;
  CHECK_FALSE(r.recompute());
  r.observed = NAN;
  CHECK_FALSE(r.recompute());
}

TEST_CASE("theorem checks on the three presets") {
  SigmaSchedule s = acceptance_schedule();
  VerificationReport sup = verify_theorem31(kSup, s, kCfg);
  CHECK(sup.check_id == "thm31.supercritical");
  CHECK(sup.passed);
  CHECK(sup.passed == sup.recompute());
  CHECK(sup.target == doctest::Approx(std::sqrt(M_PI / 2)).epsilon(1e-9));

  VerificationReport crit = verify_theorem31(kCrit, s, kCfg);
  CHECK(crit.passed);
  CHECK(crit.target == 0.5);

  VerificationReport sub = verify_theorem31(kSub, s, kCfg);
  CHECK(sub.passed);
  CHECK(sub.is_interval());

  // a wrong target fails
  TheoremOptions opt;
  opt.targets.A = 2.0;
  VerificationReport wrong = verify_theorem31(kSup, s, kCfg, opt);
  CHECK_FALSE(wrong.passed);
  CHECK(wrong.target == 2.0);
}

TEST_CASE("supercritical and critical limits do not depend on the box") {
  SigmaSchedule s = acceptance_schedule();
  for (const FamilyParams* P : {&kSup, &kCrit}) {
    FamilyParams moved = *P;
    moved.r1 = 0.3;
    moved.r2 = 0.7;
    VerificationReport a = verify_theorem31(*P, s, kCfg), b = verify_theorem31(moved, s, kCfg);
    CHECK(b.passed);
    // the leading limit is shared; drift is within a few fit uncertainties
    CHECK(std::abs(a.observed - b.observed) < 0.02 * a.target);
  }
}

TEST_CASE("failures inside a check become failed reports") {
  FamilyParams odd(0, 3, 1, Rational(2), 0.5, 0.5);
  VerificationReport r = verify_theorem21(odd, BumpSpec{}, make_schedule(ScheduleKind::Geometric, 0.125, 0.5, 6, 3), kCfg);
  CHECK_FALSE(r.passed);
  CHECK(r.detail.find("error") != std::string::npos);
}

TEST_CASE("sandwich") {
  VerificationReport r = verify_sandwich(kSub, {0.25, 1, 4}, {-0.49, -0.45, -0.4, -0.3, -0.2, -0.1}, kCfg);
  CHECK(r.passed);
  CHECK(r.residual_log.size() == 18);
  NumericConfig off = kCfg;
  off.flat_term = false;
  CHECK(verify_sandwich(kSub, {0.5, 2}, {-0.4, -0.2}, off).passed);
  VerificationReport rnd = verify_sandwich_random(25, 99, kCfg);
  CHECK(rnd.passed);
  CHECK(rnd.residual_log.size() == 25);
}

TEST_CASE("decomposition identities") {
  for (const FamilyParams* P : {&kSup, &kCrit, &kSub}) {
    VerificationReport r = verify_decompositions(*P, 1, -0.49, kCfg);
    CHECK(r.passed);
    CHECK(r.observed < 1e-5);
    CHECK(r.residual_log.size() >= 6);
  }
}

TEST_CASE("lemma suites") {
  CHECK(verify_psi_and_flat(200, 5).passed);
  CHECK(verify_LM_limits(kSub, kCfg).passed);
  CHECK(verify_asym_invariants(kSub, kCfg, 50, 5).passed);
}

TEST_CASE("monomial oracle") {
  std::vector<double> sig;
  for (int i = 1; i <= 20; ++i) sig.push_back(-0.5 + 0.49 * i / 20.0);
  NumericConfig off = kCfg;
  off.flat_term = false;
  VerificationReport r = verify_monomial_oracle(kSub, sig, off);
  CHECK(r.passed);
  CHECK(r.observed < 1e-8);
}

TEST_CASE("non-polar signature") {
  VerificationReport r = verify_nonpolar(kSup, acceptance_schedule(), kCfg);
  CHECK(r.passed);
  CHECK(r.observed == doctest::Approx(-0.5).epsilon(0.1));
}

TEST_CASE("Taylor rebuild of the monomial zeta function") {
  Monomial m{1, 2};
  BumpSpec bump;
  VerificationReport same = landau_taylor_rebuild(m, bump, 0.5, 0.5, 0, kCfg);
  CHECK(same.passed);
  CHECK_THROWS_AS(landau_taylor_rebuild(m, bump, 0.5, -0.6, 40, kCfg), OutsideDisc);

  // the error decreases with J, geometrically with ratio 0.8
  LandauOptions opt;
  opt.check_derivatives = false;
  double prev = INFINITY;
  for (int J : {10, 20, 30, 40}) {
    VerificationReport r = landau_taylor_rebuild(m, bump, 0.5, -0.3, J, kCfg, opt);
    double err = std::abs(r.observed - r.target) / r.target;
    CHECK(err < prev);
    prev = err;
  }
  VerificationReport full = landau_taylor_rebuild(m, bump, 0.5, -0.3, 80, kCfg);
  CHECK(full.passed);
  CHECK(full.target == doctest::Approx(3.70493533344485).epsilon(1e-10));
  // closer targets converge much faster
  CHECK(landau_taylor_rebuild(m, bump, 0.5, 0.1, 40, kCfg).passed);
}

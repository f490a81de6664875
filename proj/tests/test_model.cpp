#include <doctest.h>

#include "flatzeta/error.hpp"
#include "flatzeta/model.hpp"

#include <cmath>
#include <random>

using namespace flatzeta;

TEST_CASE("rational arithmetic stays exact") {
  Rational a(1, 3), b(1, 6);
  CHECK(a + b == Rational(1, 2));
  CHECK(a - b == Rational(1, 6));
  CHECK(a * b == Rational(1, 18));
  CHECK(a / b == Rational(2));
  CHECK(Rational(4, -8) == Rational(-1, 2));
  CHECK(Rational(2, 4).str() == "1/2");
  CHECK(Rational(3).str() == "3");
  CHECK(Rational::parse("6/4") == Rational(3, 2));
  CHECK(Rational::parse("-2") == Rational(-2));
  CHECK_THROWS_AS(Rational::parse("0.1"), InvalidParams);
  CHECK_THROWS_AS(Rational::parse("1/0"), InvalidParams);
  CHECK_THROWS_AS(Rational::parse("abc"), InvalidParams);
}

TEST_CASE("parameter invariants are enforced at construction") {
  CHECK_NOTHROW(FamilyParams(1, 2, 2, Rational(1, 4), 0.5, 0.5));
  CHECK_THROWS_AS(FamilyParams(2, 2, 2, Rational(1), 0.5, 0.5), InvalidParams);
  CHECK_THROWS_AS(FamilyParams(0, 1, 1, Rational(1), 0.5, 0.5), InvalidParams);
  CHECK_THROWS_AS(FamilyParams(0, 2, 3, Rational(1), 0.5, 0.5), InvalidParams);
  CHECK_THROWS_AS(FamilyParams(0, 2, 0, Rational(1), 0.5, 0.5), InvalidParams);
  CHECK_THROWS_AS(FamilyParams(0, 2, 2, Rational(0), 0.5, 0.5), InvalidParams);
  CHECK_THROWS_AS(FamilyParams(0, 2, 2, Rational(1), 1.0, 0.5), InvalidParams);
  CHECK_THROWS_AS(FamilyParams(0, 2, 2, Rational(1), 0.5, 0.0), InvalidParams);
}

TEST_CASE("regime classification") {
  Regime sup = classify_regime(FamilyParams(0, 2, 2, Rational(2), 0.5, 0.5));
  CHECK(sup.kind == RegimeKind::SupercriticalFlat);
  REQUIRE(sup.blowup_exponent.has_value());
  // 1 - (1 - 0/2)/2
  CHECK(*sup.blowup_exponent == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(sup.epsilon0_exact == Rational(1));

  Regime crit = classify_regime(FamilyParams(0, 2, 2, Rational(1), 0.5, 0.5));
  CHECK(crit.kind == RegimeKind::CriticalFlat);
  CHECK_FALSE(crit.blowup_exponent.has_value());
  CHECK(crit.epsilon0 == 0.0);

  Regime sub = classify_regime(FamilyParams(1, 2, 2, Rational(1, 4), 0.5, 0.5));
  CHECK(sub.kind == RegimeKind::SubcriticalFlat);
  CHECK(sub.epsilon0_exact == Rational(-1, 4));

  // p = 2/3 = 1 - 1/3 is critical exactly, although 2.0/3 != 1 - 1.0/3 in doubles.
  CHECK(classify_regime(FamilyParams(1, 3, 1, Rational(2, 3), 0.5, 0.5)).kind == RegimeKind::CriticalFlat);
  CHECK(classify_regime(FamilyParams(1, 3, 1, Rational(6, 9), 0.5, 0.5)).kind == RegimeKind::CriticalFlat);
  CHECK(to_string(RegimeKind::SubcriticalFlat) == "subcritical");
}

TEST_CASE("blow-up exponent lies in (0,1) for random supercritical params") {
  std::mt19937 rng(7);
  int seen = 0;
  for (int i = 0; i < 2000; ++i) {
    int b = 2 + static_cast<int>(rng() % 6);
    int a = static_cast<int>(rng() % b);
    int q = 1 + static_cast<int>(rng() % b);
    Rational p(1 + static_cast<int>(rng() % 20), 1 + static_cast<int>(rng() % 10));
    Regime r = classify_regime(FamilyParams(a, b, q, p, 0.5, 0.5));
    if (r.kind != RegimeKind::SupercriticalFlat) continue;
    ++seen;
    REQUIRE(r.blowup_exponent.has_value());
    CHECK(*r.blowup_exponent > 0);
    CHECK(*r.blowup_exponent < 1);
  }
  CHECK(seen > 100);
}

TEST_CASE("newton distance") {
  CHECK(newton_distance(1, 2).d == 2);
  CHECK(newton_distance(1, 2).c0 == Rational(1, 2));
  CHECK(newton_distance(0, 3).c0 == Rational(1, 3));
  CHECK(newton_distance(2, 5).d == 5);
  for (int b = 2; b < 12; ++b)
    for (int a = 0; a < b; ++a) CHECK(newton_distance(a, b).c0 == Rational(1, b));
  CHECK_THROWS_AS(newton_distance(2, 2), InvalidParams);
}

TEST_CASE("geometric schedules") {
  CHECK_THROWS_AS(make_schedule(ScheduleKind::Geometric, 1.0 / 16, 0.5, 3, 2), InvalidParams);
  CHECK_THROWS_AS(make_schedule(ScheduleKind::Geometric, 1.0, 0.5, 6, 2), InvalidParams);
  CHECK_THROWS_AS(make_schedule(ScheduleKind::Geometric, 0.5, 1.0, 6, 2), InvalidParams);

  SigmaSchedule s = make_schedule(ScheduleKind::Geometric, 1.0 / 16, 0.5, 12, 2);
  REQUIRE(s.size() == 12);
  for (int k = 0; k < 12; ++k) {
    CHECK(s.X[k] == std::ldexp(1.0, -4 - k));
    CHECK(s.sigma[k] == std::ldexp(1.0, -5 - k) - 0.5);
  }
  SigmaSchedule t = make_schedule(ScheduleKind::Geometric, 0.9, 0.5, 6, 3);
  CHECK(t.sigma[0] == doctest::Approx(-0.1 / 3).epsilon(1e-14));

  SigmaSchedule d = default_schedule(2);
  CHECK(d.size() == 14);
  CHECK(d.X[0] == 0.125);
}

TEST_CASE("numeric config validation") {
  NumericConfig c;
  CHECK_NOTHROW(c.validate());
  c.tol_1d = 0.1;
  CHECK_THROWS_AS(c.validate(), InvalidParams);
  c = NumericConfig{};
  c.flat_cutoff_exponent = 100;
  CHECK_THROWS_AS(c.validate(), InvalidParams);
}

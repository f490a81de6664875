#include <doctest.h>

#include "flatzeta/error.hpp"
#include "flatzeta/funcs.hpp"

#include <cmath>
#include <random>

using namespace flatzeta;

namespace {
const FamilyParams kCrit(0, 2, 2, Rational(1), 0.5, 0.5);
const FamilyParams kSup(0, 2, 2, Rational(2), 0.5, 0.5);
}  // namespace

TEST_CASE("flat exponential") {
  CHECK(e_flat(kCrit, 0.0) == 0.0);
  CHECK(e_flat(kCrit, 0.5) == doctest::Approx(std::exp(-1.0)).epsilon(1e-15));
  CHECK(e_flat(kSup, 1e-3) == 0.0);
  CHECK_THROWS_AS(e_flat(kCrit, -0.1), DomainError);

  CHECK(E_flat(kCrit, 0.0) == 0.0);
  CHECK(E_flat(FamilyParams(0, 2, 1, Rational(1), 0.5, 0.5), 1.0) == doctest::Approx(std::exp(-1.0)));
  CHECK(E_flat(kCrit, 0.5) == doctest::Approx(std::exp(-2.0)).epsilon(1e-15));
  CHECK_THROWS_AS(E_flat(kCrit, -1.0), DomainError);

  double prev = 0;
  for (double x = 1e-4; x < 0.99; x *= 1.1) {
    double e = e_flat(kCrit, x), E = E_flat(kCrit, x);
    CHECK(e >= prev);
    prev = e;
    if (e > 0 && E > 0) CHECK(std::abs(E - e * e) <= 1e-14 * E);
  }
}

TEST_CASE("psi") {
  CHECK(psi(1.0, 3.0) == 0.0);
  CHECK(psi(std::exp(-1.0), 1e-12) == doctest::Approx(1.0).epsilon(1e-11));
  CHECK(psi(std::exp(-1.0), 1.0) == doctest::Approx(1 - std::exp(-1.0)).epsilon(1e-15));
  CHECK_THROWS_AS(psi(0.0, 1.0), DomainError);
  CHECK_THROWS_AS(psi(0.5, 0.0), DomainError);
}

TEST_CASE("psi is decreasing, bounded and has the right limits") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> U(0, 1);
  for (int i = 0; i < 200; ++i) {
    double alpha = 0.01 + 0.98 * U(rng);
    double la = -std::log(alpha);
    double prev = la;
    for (double x = 1e-9; x < 1e3; x *= 3) {
      double v = psi(alpha, x);
      CHECK(v > 0);
      CHECK(v < la);
      CHECK(v < prev);
      prev = v;
    }
    double C = la * la * std::exp(la);
    for (double x = 0.01; x < 1; x += 0.07) CHECK(std::abs(psi(alpha, x) - la) <= C * x);
    // psi ~ 1/x far out, so the far point scales with 1/|log alpha|.
    CHECK(psi(alpha, 1e6 * std::max(1.0, 1.0 / la)) < 1e-5 * la);
  }
}

TEST_CASE("second-order expansion of 1 - e(x)") {
  for (int q = 1; q <= 4; ++q)
    for (Rational p : {Rational(1, 4), Rational(1), Rational(3, 2), Rational(2)}) {
      FamilyParams P(0, 4, q, p, 0.5, 0.5);
      for (double x = 1; x < 1e4; x *= 1.7) {
        double t = std::pow(x, -P.pd());
        double lhs = std::abs(-std::expm1(log_e_flat(P, x)) - t / q);
        CHECK(lhs <= t * t / (2.0 * q * q) + 8e-16 * t / q);
      }
    }
}

TEST_CASE("rho") {
  CHECK(rho(kCrit, std::exp(-2.0)) == doctest::Approx(0.25).epsilon(1e-14));
  CHECK(rho(kCrit, 0.9) == 0.5);
  CHECK(rho(kCrit, e_flat(kCrit, 0.5)) == 0.5);
  CHECK(rho(kCrit, 0.0) == 0.0);
  CHECK_THROWS_AS(rho(kCrit, -1e-3), DomainError);

  FamilyParams sub(1, 2, 2, Rational(1, 4), 0.5, 0.5);
  double prev = 0;
  for (double x = 1e-5; x < 0.5; x *= 1.3) {
    double y = e_flat(sub, x);
    if (y == 0) continue;
    CHECK(std::abs(rho(sub, y) - x) <= 1e-10 * x);
    CHECK(rho(sub, y) >= prev);
    prev = rho(sub, y);
  }
}

TEST_CASE("bump") {
  BumpSpec b;
  CHECK(bump_eval(b, 0, 0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(bump_eval(b, b.R1, 0) == 0.0);
  CHECK(bump_eval(b, 0, -b.R2) == 0.0);
  CHECK(bump_eval(b, 2.0, 0.1) == 0.0);
  CHECK(bump_eval(b, b.R1 / 2, 0) == doctest::Approx(std::exp(-1.0 / 3)).epsilon(1e-14));
  CHECK(bump_eval(b, -0.1, 0.2) == bump_eval(b, 0.1, -0.2));
  for (double x = -0.6; x < 0.6; x += 0.01) CHECK(bump_eval(b, x, 0.3 * x) >= 0);
  CHECK(bump_factor(0.5, 0) == doctest::Approx(1.0));
  BumpSpec bad;
  bad.R1 = 0;
  CHECK_THROWS_AS(bad.validate(), InvalidParams);
}

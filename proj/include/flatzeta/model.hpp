#pragma once

#include "flatzeta/rational.hpp"

#include <optional>
#include <string>
#include <vector>

namespace flatzeta {

/// Parameters of f(x,y) = x^a y^b + x^a y^(b-q) exp(-1/|x|^p) on the box
/// [0,r1] x [0,r2].
struct FamilyParams {
  int a = 0;
  int b = 2;
  int q = 2;
  Rational p{1};
  double r1 = 0.5;
  double r2 = 0.5;

  FamilyParams() = default;
  FamilyParams(int a, int b, int q, Rational p, double r1, double r2);

  /// Throws InvalidParams when the invariants do not hold.
  void validate() const;
  double pd() const { return p.to_double(); }
  std::string str() const;
};

enum class RegimeKind { SupercriticalFlat, CriticalFlat, SubcriticalFlat };

std::string to_string(RegimeKind kind);

struct Regime {
  RegimeKind kind = RegimeKind::SupercriticalFlat;
  std::optional<double> blowup_exponent;  // only for SupercriticalFlat
  double epsilon0 = 0;
  Rational epsilon0_exact{0};
};

Regime classify_regime(const FamilyParams& params);

struct NewtonDistance {
  int d = 0;
  Rational c0{0};
};

NewtonDistance newton_distance(int a, int b);

enum class ScheduleKind { Geometric };

/// sigma_k in (-1/b, 0) with X_k = b sigma_k + 1 strictly decreasing to 0.
struct SigmaSchedule {
  int b = 2;
  std::vector<double> sigma;
  std::vector<double> X;

  std::size_t size() const { return X.size(); }
};

SigmaSchedule make_schedule(ScheduleKind kind, double X_start, double ratio, int count, int b);
SigmaSchedule default_schedule(int b);

inline constexpr double kDefaultFlatCutoff = 690.0;

struct NumericConfig {
  double tol_1d = 1e-10;
  double tol_2d = 1e-7;
  double flat_cutoff_exponent = kDefaultFlatCutoff;
  int max_subdivisions = 200;
  /// When false the flat term is dropped and f reduces to x^a y^b.
  bool flat_term = true;

  void validate() const;
};

}  // namespace flatzeta

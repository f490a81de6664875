#include "flatzeta/asym.hpp"

#include "flatzeta/error.hpp"
#include "flatzeta/funcs.hpp"
#include "flatzeta/quad.hpp"

#include <Eigen/Dense>

#include <cmath>

namespace flatzeta {

namespace {

void require(const FamilyParams& params, RegimeKind kind, const char* what) {
  if (classify_regime(params).kind != kind)
    throw WrongRegime(std::string(what) + " is only defined in the " + to_string(kind) + " regime");
}

}  // namespace

double constant_A(const FamilyParams& params, const NumericConfig& cfg) {
  require(params, RegimeKind::SupercriticalFlat, "A");
  const double ab = static_cast<double>(params.a) / params.b;
  const double p = params.pd();
  const int q = params.q;
  auto f = [=](double x) { return std::exp(-ab * std::log(x)) * -std::expm1(-1.0 / (q * std::pow(x, p))); };
  QuadResult head = integrate_1d(f, 0.0, 1.0, EndpointSpec{-ab, 0.0}, cfg.tol_1d, cfg.max_subdivisions);
  // 1 - e^{-t} <= t gives |f(x)| <= x^{-a/b-p}/q.
  QuadResult tail = integrate_tail(f, 1.0, -ab - p, 1.0 / q, cfg.tol_1d, cfg.max_subdivisions);
  return head.value + tail.value;
}

double constant_L(const FamilyParams& params, double lambda) {
  require(params, RegimeKind::SubcriticalFlat, "L");
  if (!(lambda > 0)) throw DomainError("lambda must be positive");
  const double c = 1 - static_cast<double>(params.a) / params.b;
  const double p = params.pd();
  const double r = rho(params, lambda * params.r2);
  if (r == 0) return 0.0;
  return std::pow(r, c) / c * std::log(lambda * params.r2) + std::pow(r, c - p) / (params.q * (c - p));
}

double constant_M(const FamilyParams& params, double lambda, const NumericConfig& cfg) {
  params.validate();
  if (!(lambda > 0)) throw DomainError("lambda must be positive");
  const int a = params.a, b = params.b, q = params.q;
  const double p = params.pd();
  const double r = rho(params, lambda * params.r2);
  if (!(r > 0) || 1.0 / (b * std::pow(r, p)) > 700)
    throw DegenerateLowerLimit("rho(lambda r2) underflows; M is not computable at this lambda");
  const double ab = static_cast<double>(a) / b;
  double first = static_cast<double>(b) * b / (q * (b - a)) * std::exp(-static_cast<double>(q) / b * std::log(lambda)) *
                 std::pow(r, 1 - ab);
  double second = 0;
  if (r < params.r1) {
    auto f = [=](double x) { return std::exp(-ab * std::log(x) + 1.0 / (b * std::pow(x, p))); };
    std::vector<double> pts{r};
    for (double v = std::pow(10.0, std::ceil(std::log10(r))); v < params.r1; v *= 10)
      if (v > r * (1 + 1e-9)) pts.push_back(v);
    pts.push_back(params.r1);
    QuadResult I = integrate_1d(f, pts, EndpointSpec{}, cfg.tol_1d, cfg.max_subdivisions);
    second = static_cast<double>(b) / q * std::pow(params.r2, static_cast<double>(q) / b) * I.value;
  }
  return first + second;
}

double case3_lower_objective(const FamilyParams& params, double lambda, const NumericConfig& cfg) {
  const double ib = 1.0 / params.b;
  const double lq = params.q * std::log(lambda);
  // (1 + lambda^{+-q})^{-1/b} computed as exp(-log1p(.)/b) without overflow.
  auto damp = [&](double l) { return std::exp(-ib * (l > 0 ? l + std::log1p(std::exp(-l)) : std::log1p(std::exp(l)))); };
  return constant_L(params, lambda) * damp(lq) + constant_M(params, lambda, cfg) * damp(-lq);
}

double case3_upper_objective(const FamilyParams& params, double lambda, const NumericConfig& cfg) {
  return constant_L(params, lambda) + constant_M(params, lambda, cfg);
}

namespace {

// Maximizes g over [lo, hi] by a grid scan followed by golden-section search.
std::pair<double, double> maximize(const std::function<double(double)>& g, double lo, double hi, const char* what) {
  const int n = 49;
  std::vector<double> t(n), v(n);
  int best = 0;
  for (int i = 0; i < n; ++i) {
    t[i] = lo + (hi - lo) * i / (n - 1);
    v[i] = g(t[i]);
    if (v[i] > v[best]) best = i;
  }
  if (best == 0 || best == n - 1)
    throw OptimizerBracketFailure(std::string(what) + ": optimum sits at the edge of the search bracket");
  double a = t[best - 1], b = t[best + 1];
  const double invphi = (std::sqrt(5.0) - 1) / 2;
  double c = b - invphi * (b - a), d = a + invphi * (b - a);
  double gc = g(c), gd = g(d);
  while (b - a > 1e-6 * std::max(1.0, std::abs(a + b) / 2)) {
    if (gc > gd) {
      b = d;
      d = c;
      gd = gc;
      c = b - invphi * (b - a);
      gc = g(c);
    } else {
      a = c;
      c = d;
      gc = gd;
      d = a + invphi * (b - a);
      gd = g(d);
    }
  }
  double tm = (a + b) / 2;
  double vm = g(tm);
  if (v[best] > vm) return {t[best], v[best]};
  return {tm, vm};
}

}  // namespace

Case3Bounds case3_bounds(const FamilyParams& params, const NumericConfig& cfg, double log_lo, double log_hi) {
  require(params, RegimeKind::SubcriticalFlat, "case (iii) bounds");
  if (!(log_lo < log_hi)) throw DomainError("empty lambda bracket");
  auto lower = [&](double t) { return case3_lower_objective(params, std::exp(t), cfg); };
  auto upper = [&](double t) { return -case3_upper_objective(params, std::exp(t), cfg); };
  auto [tl, vl] = maximize(lower, log_lo, log_hi, "lower bound");
  auto [tu, vu] = maximize(upper, log_lo, log_hi, "upper bound");
  Case3Bounds b;
  b.lower = vl;
  b.upper = -vu;
  b.lambda_lower = std::exp(tl);
  b.lambda_upper = std::exp(tu);
  return b;
}

std::string to_string(ScalingKind kind) {
  switch (kind) {
    case ScalingKind::PowerLaw: return "power";
    case ScalingKind::LogLaw: return "log";
    case ScalingKind::Raw: return "raw";
  }
  return "unknown";
}

BlowupSequence scale_sequence(const FamilyParams& params, const std::vector<ZetaSample>& samples) {
  Regime r = classify_regime(params);
  BlowupSequence seq;
  seq.schedule.b = params.b;
  switch (r.kind) {
    case RegimeKind::SupercriticalFlat: seq.kind = ScalingKind::PowerLaw; break;
    case RegimeKind::CriticalFlat: seq.kind = ScalingKind::LogLaw; break;
    case RegimeKind::SubcriticalFlat: seq.kind = ScalingKind::Raw; break;
  }
  for (const auto& s : samples) {
    seq.schedule.sigma.push_back(s.sigma);
    seq.schedule.X.push_back(s.X);
    double v = s.value;
    if (seq.kind == ScalingKind::PowerLaw)
      v *= std::pow(s.X, *r.blowup_exponent);
    else if (seq.kind == ScalingKind::LogLaw)
      v /= std::abs(std::log(s.X));
    seq.scaled.push_back(v);
  }
  return seq;
}

namespace {

struct Fit {
  double intercept = 0;
  double rms = 0;
  double condition = 0;
};

Fit fit(const std::vector<double>& X, const std::vector<double>& S, ScalingKind kind) {
  const Eigen::Index n = static_cast<Eigen::Index>(X.size());
  Eigen::MatrixXd A(n, 3);
  Eigen::VectorXd y(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    double x = X[static_cast<std::size_t>(i)];
    A(i, 0) = 1;
    A(i, 1) = kind == ScalingKind::LogLaw ? 1 / std::abs(std::log(x)) : x * std::log(x);
    A(i, 2) = x;
    y(i) = S[static_cast<std::size_t>(i)];
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(A, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  Fit f;
  f.condition = sv(sv.size() - 1) > 0 ? sv(0) / sv(sv.size() - 1) : std::numeric_limits<double>::infinity();
  if (!(f.condition <= 1e12)) throw IllConditionedFit("extrapolation design matrix is ill-conditioned");
  Eigen::VectorXd c = svd.solve(y);
  f.intercept = c(0);
  Eigen::VectorXd res = A * c - y;
  f.rms = std::sqrt(res.squaredNorm() / static_cast<double>(n));
  return f;
}

}  // namespace

LimitEstimate extract_limit(const BlowupSequence& seq, int window) {
  const std::size_t n = seq.scaled.size();
  if (n < 4 || seq.schedule.X.size() != n) throw InvalidParams("limit extraction needs at least 4 matching points");
  std::size_t w = std::min<std::size_t>(std::max(window, 4), n);
  std::vector<double> X(seq.schedule.X.end() - static_cast<std::ptrdiff_t>(w), seq.schedule.X.end());
  std::vector<double> S(seq.scaled.end() - static_cast<std::ptrdiff_t>(w), seq.scaled.end());
  Fit full = fit(X, S, seq.kind);
  // Refit without the largest-X point.
  X.erase(X.begin());
  S.erase(S.begin());
  Fit drop = fit(X, S, seq.kind);
  LimitEstimate out;
  out.limit = full.intercept;
  out.rms_residual = full.rms;
  out.condition = full.condition;
  out.uncertainty = full.rms + std::abs(full.intercept - drop.intercept);
  return out;
}

SlopeFit local_exponent(const std::vector<ZetaSample>& samples, int count) {
  if (count < 3 || samples.size() < static_cast<std::size_t>(count))
    throw InvalidParams("local exponent needs at least 3 samples");
  const std::size_t n = static_cast<std::size_t>(count);
  double mx = 0, my = 0;
  std::vector<double> lx(n), ly(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& s = samples[samples.size() - n + i];
    lx[i] = std::log(s.X);
    ly[i] = std::log(s.value);
    mx += lx[i];
    my += ly[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (lx[i] - mx) * (lx[i] - mx);
    sxy += (lx[i] - mx) * (ly[i] - my);
  }
  SlopeFit f;
  f.slope = sxy / sxx;
  double ss = 0;
  for (std::size_t i = 0; i < n; ++i) {
    double r = ly[i] - my - f.slope * (lx[i] - mx);
    ss += r * r;
  }
  f.stderr_ = std::sqrt(ss / (n - 2) / sxx);
  return f;
}

}  // namespace flatzeta

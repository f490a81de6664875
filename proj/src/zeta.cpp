#include "flatzeta/zeta.hpp"

#include "flatzeta/error.hpp"
#include "flatzeta/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace flatzeta {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double logaddexp(double u, double v) {
  if (u < v) std::swap(u, v);
  if (v == -kInf) return u;
  return u + std::log1p(std::exp(v - u));
}

// (1+z)^s minus its first m binomial terms, accurate for small z.
double binom_rem(double s, double z, int m) {
  if (z < 0.125) {
    double c = 1, zk = 1, sum = 0;
    for (int k = 1; k < 400; ++k) {
      c *= (s - k + 1) / k;
      zk *= z;
      if (k < m) continue;
      double term = c * zk;
      sum += term;
      if (std::abs(term) <= 1e-18 * std::abs(sum)) break;
    }
    return sum;
  }
  double v = std::expm1(s * std::log1p(z));
  double c = 1, zk = 1;
  for (int k = 1; k < m; ++k) {
    c *= (s - k + 1) / k;
    zk *= z;
    v -= c * zk;
  }
  return v;
}

std::vector<double> sorted_points(double lo, double hi, std::initializer_list<double> inner) {
  std::vector<double> pts{lo};
  std::vector<double> mid(inner);
  std::sort(mid.begin(), mid.end());
  for (double v : mid)
    if (std::isfinite(v) && v > pts.back() * (1 + 1e-12) && v < hi * (1 - 1e-12)) pts.push_back(v);
  pts.push_back(hi);
  return pts;
}

// Breakpoints at every decade between lo > 0 and hi, merged with extra points.
std::vector<double> decade_points(double lo, double hi, std::initializer_list<double> extra) {
  std::vector<double> mid(extra);
  double start = lo;
  for (double v : mid)
    if (v > 0 && (start <= 0 || v < start)) start = v;
  if (start > 0)
    for (double v = std::pow(10.0, std::ceil(std::log10(start))); v < hi; v *= 10) mid.push_back(v);
  std::sort(mid.begin(), mid.end());
  std::vector<double> pts{lo};
  for (double v : mid)
    if (std::isfinite(v) && v > pts.back() * (1 + 1e-9) && v < hi * (1 - 1e-9)) pts.push_back(v);
  pts.push_back(hi);
  return pts;
}

struct Ctx {
  const FamilyParams& P;
  double sigma, X, p;
  int a, b, q;
  double tol, cutoff;
  int maxsub;

  Ctx(const FamilyParams& params, double s, const NumericConfig& cfg)
      : P(params),
        sigma(s),
        X(params.b * s + 1),
        p(params.pd()),
        a(params.a),
        b(params.b),
        q(params.q),
        tol(cfg.tol_1d),
        cutoff(cfg.flat_cutoff_exponent),
        maxsub(cfg.max_subdivisions) {}

  double le(double x) const { return log_e_flat(P, x); }
  double xpow(double x) const { return a == 0 ? 1.0 : std::exp(a * sigma * std::log(x)); }
  // x where X / (q x^p) equals the cutoff: below it e(x)^X is exactly 0.
  double x_cut() const { return std::pow(X / (q * cutoff), 1 / p); }
  // Transition scale of e(x)^X.
  double x_T() const { return std::pow(X / q, 1 / p); }
  // x with e(x) = y, for 0 < y < 1.
  double x_of_e(double y) const { return y > 0 && y < 1 ? std::pow(-1 / (q * std::log(y)), 1 / p) : -1.0; }
};

// Scaled inner integral. With e = e(x) and y = e t:
//   int_0^{r} y^{(b-q)s} (y^q + e^q)^s dy = e^X G(r/e),
//   G(T) = int_0^T t^{(b-q)s} (1+t^q)^s dt.
// For T >= 1, G(T) = (T^X - 1)/X + A(T) with A bounded.
class Kernel {
public:
  Kernel(const Ctx& c) : c_(c), tol_(std::max(c.tol * 0.1, 1e-14)) {
    const double s = c.sigma;
    QuadResult i0 = integrate_1d([this](double t) { return kern(t); }, 0.0, 1.0,
                                 EndpointSpec{(c.b - c.q) * s, 0.0}, 1e-14, c.maxsub);
    I0_ = i0.value;
    // W = int_1^inf t^{bs}((1+t^-q)^s - 1) dt = int_0^1 u^{-bs-2}((1+u^q)^s - 1) du,
    // with the leading s u^q term integrated exactly.
    QuadResult w = integrate_1d(
        [this](double u) {
          double v = binom_rem(c_.sigma, std::pow(u, c_.q), 2);
          if (v == 0) return 0.0;
          return std::copysign(std::exp(std::log(std::abs(v)) + (-c_.b * c_.sigma - 2) * std::log(u)), v);
        },
        0.0, 1.0, EndpointSpec{2.0 * c.q - 1 - c.X, 0.0}, 1e-14, c.maxsub);
    W_ = s / (c.q - c.X) + w.value;
  }

  double I0() const { return I0_; }
  double W() const { return W_; }

  double kern(double t) const {
    if (t <= 0) return 0.0;
    double lt = std::log(t);
    return std::exp((c_.b - c_.q) * c_.sigma * lt + c_.sigma * std::log1p(std::exp(c_.q * lt)));
  }

  // Sum_{k>=1} C(s,k) T^{X-qk}/(qk-X) for T >= 2.
  double tail(double lnT) const {
    if (lnT > 700) return 0.0;
    double c = 1, sum = 0;
    for (int k = 1; k < 2000; ++k) {
      c *= (c_.sigma - k + 1) / k;
      double term = c * std::exp((c_.X - c_.q * k) * lnT) / (c_.q * k - c_.X);
      sum += term;
      if (std::abs(term) <= 1e-18 * std::abs(sum) || term == 0) break;
    }
    return sum;
  }

  // A(T) = G(T) - (T^X - 1)/X for T >= 1.
  double A(double lnT) const {
    if (lnT >= std::log(2.0)) return I0_ + W_ - tail(lnT);
    if (lnT <= 0) return I0_;
    double T = std::exp(lnT);
    if (!(T > 1)) return I0_;
    QuadResult r = integrate_1d(
        [this](double t) {
          return std::exp(c_.b * c_.sigma * std::log(t)) * std::expm1(c_.sigma * std::log1p(std::pow(t, -c_.q)));
        },
        1.0, T, EndpointSpec{}, tol_, c_.maxsub);
    return I0_ + r.value;
  }

  // G(T) for T <= 1 (or any moderate T) by direct quadrature.
  double G_direct(double T) const {
    if (T <= 0) return 0.0;
    return integrate_1d([this](double t) { return kern(t); }, 0.0, T, EndpointSpec{(c_.b - c_.q) * c_.sigma, 0.0},
                        tol_, c_.maxsub)
        .value;
  }

  // int_{T0}^{T1} kern, 0 < T0 < T1.
  double G_between(double T0, double T1) const {
    if (!(T1 > T0)) return 0.0;
    return integrate_1d([this](double t) { return kern(t); }, T0, T1, EndpointSpec{}, tol_, c_.maxsub).value;
  }

  // e^X G(r/e) with le = log e(x), lr = log r.
  double scaled_G(double le, double lr) const {
    double lx = c_.X * le;
    double eX = -lx > c_.cutoff ? 0.0 : std::exp(lx);
    double lnT = lr - le;
    if (lnT <= 0) return eX == 0 ? 0.0 : eX * G_direct(std::exp(lnT));
    double first = std::exp(c_.X * lr) * (-std::expm1(-c_.X * lnT)) / c_.X;
    if (eX == 0) return first;
    return first + eX * A(lnT);
  }

  // e^X (G(r/e) - G(T0)) for r/e >= T0, with A(T0) (T0 >= 1) or G(T0) supplied.
  double scaled_G_diff(double le, double lr, double lnT0, double cached0) const {
    double lx = c_.X * le;
    double eX = -lx > c_.cutoff ? 0.0 : std::exp(lx);
    double lnT1 = lr - le;
    if (lnT0 >= 0) {
      double first = std::exp(c_.X * lr) * (-std::expm1(-c_.X * (lnT1 - lnT0))) / c_.X;
      if (eX == 0) return first;
      return first + eX * (A(lnT1) - cached0);
    }
    if (lnT1 <= 0) return eX == 0 ? 0.0 : eX * G_between(std::exp(lnT0), std::exp(lnT1));
    return scaled_G(le, lr) - eX * cached0;
  }

private:
  const Ctx& c_;
  double tol_;
  double I0_ = 0, W_ = 0;
};

Estimate from(const QuadResult& r, double extra_rel = 0) {
  return {r.value, r.abs_error_estimate + extra_rel * std::abs(r.value)};
}

void require_even_q(const FamilyParams& params) {
  if (params.q % 2 != 0) throw OddQNotSupported("weighted zeta needs even q (quadrant symmetry)");
}

void check_bump(const BumpSpec& bump) {
  bump.validate();
  if (!(bump.R1 < 1) || !(bump.R2 < 1)) throw InvalidParams("bump support must lie inside (-1,1)^2");
}

void check_lambda(double lambda) {
  if (!(lambda > 0) || !std::isfinite(lambda)) throw DomainError("lambda must be positive and finite");
}

double bump_minus_one(double R, double u) {
  double t = u / R;
  double t2 = t * t;
  if (!(t2 < 1)) return -1.0;
  return std::expm1(t2 / (t2 - 1.0));
}

// log(1 - phi_R(u)) for the normalized one-dimensional bump.
double log_one_minus_bump(double R, double u) {
  double t = u / R;
  double t2 = t * t;
  if (!(t2 < 1)) return 0.0;
  if (t2 < 1e-10) return 2 * std::log(t) - std::log1p(-t2);
  return std::log(-std::expm1(t2 / (t2 - 1.0)));
}

// x^{a s} integrated over [lo, hi].
double power_integral(double e, double lo, double hi) {
  return (std::pow(hi, e + 1) - (lo > 0 ? std::pow(lo, e + 1) : 0.0)) / (e + 1);
}

}  // namespace

double integrand(const FamilyParams& params, double x, double y, double sigma, double cutoff) {
  if (!(x > 0) || !(y > 0)) throw DomainError("integrand is defined on the open quadrant");
  double lx = std::log(x), ly = std::log(y);
  double lE = -std::pow(x, -params.pd());  // log E(x)
  double v = params.a * sigma * lx;
  if (-lE / params.q > cutoff) return std::exp(v + params.b * sigma * ly);
  v += (params.b - params.q) * sigma * ly + sigma * logaddexp(params.q * ly, lE);
  return std::exp(v);
}

void check_window(const FamilyParams& params, double sigma) {
  if (!(sigma > -1.0 / params.b) || !(sigma < 0) || !(params.b * sigma + 1 > 0)) {
    std::ostringstream os;
    os.precision(17);
    os << "sigma=" << sigma << " outside (-1/" << params.b << ", 0)";
    throw OutOfWindow(os.str());
  }
}

double monomial_closed_form(int a, int b, double r1, double r2, double sigma) {
  double ea = a * sigma + 1, eb = b * sigma + 1;
  if (ea == 0 || eb == 0) throw PoleHit("monomial integral has a pole at this sigma");
  if (ea < 0 || eb < 0) throw DomainError("monomial integral diverges at this sigma");
  return std::pow(r1, ea) * std::pow(r2, eb) / (ea * eb);
}

ZetaSample zeta_quadrant(const FamilyParams& params, double sigma, const NumericConfig& cfg) {
  params.validate();
  cfg.validate();
  check_window(params, sigma);
  Ctx c(params, sigma, cfg);
  const double as = c.a * sigma;
  const double r2X = std::exp(c.X * std::log(params.r2)) / c.X;
  ZetaSample out{sigma, c.X, 0, 0};
  if (!cfg.flat_term) {
    QuadResult r = integrate_1d([&](double x) { return c.xpow(x); }, 0.0, params.r1, EndpointSpec{as, 0.0}, c.tol,
                                c.maxsub);
    out.value = r.value * r2X;
    out.error = r.abs_error_estimate * r2X;
    return out;
  }
  Kernel K(c);
  const double lr2 = std::log(params.r2);
  const double xc = c.x_cut(), xT = c.x_T();
  if (xc >= params.r1) {
    out.value = power_integral(as, 0, params.r1) * r2X;
    return out;
  }
  double closed = power_integral(as, 0, xc) * r2X;
  auto f = [&](double x) {
    double le = c.le(x);
    return c.xpow(x) * K.scaled_G(le, lr2);
  };
  QuadResult r = integrate_1d(
      f, decade_points(xc, params.r1, {0.1 * xT, xT, 10 * xT, c.x_of_e(params.r2), c.x_of_e(params.r2 / 2)}),
      EndpointSpec{}, c.tol, c.maxsub);
  out.value = closed + r.value;
  out.error = r.abs_error_estimate + c.tol * 0.1 * std::abs(r.value);
  return out;
}

ZetaSample zeta_quadrant_2d(const FamilyParams& params, double sigma, const NumericConfig& cfg) {
  params.validate();
  cfg.validate();
  check_window(params, sigma);
  const double X = params.b * sigma + 1;
  const double cut = cfg.flat_cutoff_exponent;
  Fn2 g;
  Fn1 split;
  if (cfg.flat_term) {
    g = [&](double x, double y) { return integrand(params, x, y, sigma, cut); };
    split = [&](double x) { return e_flat(params, x, cut); };
  } else {
    g = [&](double x, double y) { return std::exp(params.a * sigma * std::log(x) + params.b * sigma * std::log(y)); };
    split = [](double) { return 0.0; };
  }
  double xT = std::pow(X / params.q, 1 / params.pd());
  double xcut = std::pow(1 / (params.q * cut), 1 / params.pd());
  SplitResult r = integrate_2d_split_points(g, decade_points(0, params.r1, {xcut, 0.1 * xT, xT, 10 * xT}),
                                            {0.0, params.r2}, split, EndpointSpec{params.a * sigma, 0.0},
                                            EndpointSpec{std::min((params.b - params.q) * sigma, params.b * sigma), 0.0},
                                            cfg.tol_2d, cfg.max_subdivisions);
  return {sigma, X, r.total.value, r.total.abs_error_estimate};
}

ZetaSample zeta_weighted_indicator(const FamilyParams& params, double R1, double R2, double sigma,
                                   const NumericConfig& cfg) {
  require_even_q(params);
  FamilyParams Q = params;
  Q.r1 = R1;
  Q.r2 = R2;
  ZetaSample s = zeta_quadrant(Q, sigma, cfg);
  s.value *= 4;
  s.error *= 4;
  return s;
}

ZetaSample zeta_weighted(const FamilyParams& params, const BumpSpec& bump, double sigma, const NumericConfig& cfg) {
  require_even_q(params);
  params.validate();
  cfg.validate();
  check_window(params, sigma);
  check_bump(bump);
  FamilyParams Q = params;
  Q.r1 = bump.R1;
  Q.r2 = bump.R2;
  Ctx c(Q, sigma, cfg);
  const double as = c.a * sigma, bs = c.b * sigma;
  const double amp = bump.amplitude / std::exp(2.0);
  const double tol_in = std::max(c.tol * 0.1, 1e-14);
  ZetaSample out{sigma, c.X, 0, 0};

  auto phix = [&](double x) { return bump_factor(bump.R1, x); };
  auto phiy = [&](double y) { return bump_factor(bump.R2, y); };
  if (!cfg.flat_term) {
    QuadResult mx = integrate_1d([&](double x) { return c.xpow(x) * phix(x); }, 0.0, bump.R1, EndpointSpec{as, 0.0},
                                 c.tol, c.maxsub);
    QuadResult my = integrate_1d([&](double y) { return std::exp(bs * std::log(y)) * phiy(y); }, 0.0, bump.R2,
                                 EndpointSpec{bs, 0.0}, c.tol, c.maxsub);
    out.value = 4 * amp * mx.value * my.value;
    out.error = 4 * amp * (mx.abs_error_estimate * my.value + my.abs_error_estimate * mx.value);
    return out;
  }
  Kernel K(c);
  const double lR2 = std::log(bump.R2);
  // Correction for phi_y - 1 once e(x) is negligible.
  const double H0 = integrate_1d([&](double y) { return std::exp(bs * std::log(y)) * bump_minus_one(bump.R2, y); },
                                 0.0, bump.R2, EndpointSpec{}, tol_in, c.maxsub)
                        .value;
  auto hcorr = [&](double le) {
    double e = std::exp(le);
    double lE = c.q * le;
    auto g = [&](double y) {
      double ly = std::log(y);
      // E^sigma can overflow while phi - 1 ~ -y^2 underflows: multiply in logs.
      return -std::exp((c.b - c.q) * sigma * ly + sigma * logaddexp(c.q * ly, lE) + log_one_minus_bump(bump.R2, y));
    };
    return integrate_1d(g, sorted_points(0, bump.R2, {e}), EndpointSpec{}, tol_in, c.maxsub).value;
  };
  auto f = [&](double x) {
    double le = c.le(x);
    double ph = phix(x);
    if (ph == 0) return 0.0;
    double h = -c.X * le > c.cutoff ? H0 : hcorr(le);
    return c.xpow(x) * ph * (K.scaled_G(le, lR2) + h);
  };
  const double xc = c.x_cut(), xT = c.x_T();
  QuadResult r = integrate_1d(f, decade_points(0, bump.R1, {xc, 0.1 * xT, xT, 10 * xT, 0.5 * bump.R1, c.x_of_e(bump.R2), c.x_of_e(bump.R2 / 2)}),
                              EndpointSpec{as, 0.0}, c.tol, c.maxsub);
  out.value = 4 * amp * r.value;
  out.error = 4 * amp * (r.abs_error_estimate + tol_in * std::abs(r.value));
  return out;
}

Estimate ztilde1(const FamilyParams& params, double lambda, double sigma, const NumericConfig& cfg) {
  params.validate();
  cfg.validate();
  check_window(params, sigma);
  check_lambda(lambda);
  Ctx c(params, sigma, cfg);
  const double as = c.a * sigma;
  const double r2X = std::exp(c.X * std::log(params.r2)) / c.X;
  if (!cfg.flat_term) return {r2X * power_integral(as, 0, params.r1), 0.0};
  const double llr = std::log(lambda * params.r2);
  const double rho_l = std::min(rho(params, lambda * params.r2), params.r1);
  const double xc = std::min(c.x_cut(), params.r1), xT = c.x_T();
  if (xc >= rho_l) return {r2X * power_integral(as, 0, rho_l), 0.0};
  double closed = r2X * power_integral(as, 0, xc);
  auto f = [&](double x) { return c.xpow(x) * -std::expm1(c.X * (c.le(x) - llr)); };
  QuadResult r = integrate_1d(f, decade_points(xc, rho_l, {0.1 * xT, xT, 10 * xT, c.x_of_e(params.r2), c.x_of_e(params.r2 / 2)}), EndpointSpec{}, c.tol, c.maxsub);
  return {closed + r2X * r.value, r2X * r.abs_error_estimate};
}

Estimate ztilde2(const FamilyParams& params, double lambda, double sigma, const NumericConfig& cfg) {
  params.validate();
  cfg.validate();
  check_window(params, sigma);
  check_lambda(lambda);
  if (!cfg.flat_term) return {0.0, 0.0};
  Ctx c(params, sigma, cfg);
  const double k = c.X - c.q * sigma;  // (b-q) sigma + 1
  const double rho_l = std::min(rho(params, lambda * params.r2), params.r1);
  const double xc = std::min(c.x_cut(), params.r1), xT = c.x_T();
  Estimate out;
  if (rho_l > xc) {
    auto f1 = [&](double x) { return c.xpow(x) * std::exp(c.X * c.le(x)); };
    QuadResult r1 = integrate_1d(f1, decade_points(xc, rho_l, {0.1 * xT, xT, 10 * xT, c.x_of_e(params.r2), c.x_of_e(params.r2 / 2)}), EndpointSpec{}, c.tol,
                                 c.maxsub);
    double pre = std::exp(-k * std::log(lambda)) / k;
    out.value += pre * r1.value;
    out.error += pre * r1.abs_error_estimate;
  }
  if (rho_l < params.r1) {
    double lo = std::max(rho_l, xc);
    auto f2 = [&](double x) { return c.xpow(x) * std::exp(c.q * sigma * c.le(x)); };
    QuadResult r2 = integrate_1d(f2, decade_points(lo, params.r1, {0.1 * xT, xT, 10 * xT}), EndpointSpec{}, c.tol,
                                 c.maxsub);
    double pre = std::exp(k * std::log(params.r2)) / k;
    out.value += pre * r2.value;
    out.error += pre * r2.abs_error_estimate;
  }
  return out;
}

namespace {

SplitResult split_2d(const FamilyParams& params, double lambda, double sigma, const NumericConfig& cfg, const Fn2& g,
                     double ey) {
  const double X = params.b * sigma + 1;
  const double cut = cfg.flat_cutoff_exponent;
  Fn1 split = [&](double x) { return e_flat(params, x, cut) / lambda; };
  double xT = std::pow(X / params.q, 1 / params.pd());
  double xcut = std::pow(1 / (params.q * cut), 1 / params.pd());
  double rho_l = rho(params, lambda * params.r2);
  return integrate_2d_split_points(g, decade_points(0, params.r1, {xcut, 0.1 * xT, xT, 10 * xT, rho_l}),
                                   {0.0, params.r2}, split, EndpointSpec{params.a * sigma, 0.0},
                                   EndpointSpec{ey, 0.0}, cfg.tol_2d, cfg.max_subdivisions);
}

}  // namespace

Estimate ztilde1_2d(const FamilyParams& params, double lambda, double sigma, const NumericConfig& cfg) {
  params.validate();
  check_window(params, sigma);
  check_lambda(lambda);
  Fn2 g = [&](double x, double y) {
    return std::exp(params.a * sigma * std::log(x) + params.b * sigma * std::log(y));
  };
  SplitResult r = split_2d(params, lambda, sigma, cfg, g, params.b * sigma);
  return from(r.above);
}

Estimate ztilde2_2d(const FamilyParams& params, double lambda, double sigma, const NumericConfig& cfg) {
  params.validate();
  check_window(params, sigma);
  check_lambda(lambda);
  const double cut = cfg.flat_cutoff_exponent;
  Fn2 g = [&](double x, double y) {
    double lE = -std::pow(x, -params.pd());
    if (-lE / params.q > cut) return 0.0;
    return std::exp(params.a * sigma * std::log(x) + (params.b - params.q) * sigma * std::log(y) + sigma * lE);
  };
  SplitResult r = split_2d(params, lambda, sigma, cfg, g, (params.b - params.q) * sigma);
  return from(r.below);
}

RegionSplit region_split(const FamilyParams& params, double lambda, double sigma, const NumericConfig& cfg) {
  params.validate();
  cfg.validate();
  check_window(params, sigma);
  check_lambda(lambda);
  if (!cfg.flat_term) {
    ZetaSample z = zeta_quadrant(params, sigma, cfg);
    return {{z.value, z.error}, {0.0, 0.0}};
  }
  Ctx c(params, sigma, cfg);
  Kernel K(c);
  const double as = c.a * sigma;
  const double lr2 = std::log(params.r2);
  const double r2X = std::exp(c.X * lr2) / c.X;
  const double lT0 = -std::log(lambda);
  const double cached0 = lT0 >= 0 ? K.A(lT0) : K.G_direct(std::exp(lT0));
  // U1 is empty past rho, so both breakpoints are clamped to the quadrant.
  const double rho_l = std::min(rho(params, lambda * params.r2), params.r1);
  const double xc = std::min(c.x_cut(), params.r1), xT = c.x_T();

  auto z2_part = [&](double le) {
    double lT = lr2 - le;
    if (lT <= lT0) return K.scaled_G(le, lr2);
    double lx = c.X * le;
    double eX = -lx > c.cutoff ? 0.0 : std::exp(lx);
    if (lT0 >= 0) {
      double first = std::exp(c.X * (le + lT0)) * (-std::expm1(-c.X * lT0)) / c.X;
      return first + eX * cached0;
    }
    return eX * cached0;
  };
  auto z1_part = [&](double le) {
    double lT = lr2 - le;
    if (lT <= lT0) return 0.0;
    return K.scaled_G_diff(le, lr2, lT0, cached0);
  };

  RegionSplit out;
  // Below xc the inner integral is r2^X/X and lies entirely in U1 up to rho.
  double lo1 = std::min(xc, rho_l);
  out.z1.value = r2X * power_integral(as, 0, lo1);
  if (xc < rho_l) {
    QuadResult r = integrate_1d([&](double x) { return c.xpow(x) * z1_part(c.le(x)); },
                                decade_points(xc, rho_l, {0.1 * xT, xT, 10 * xT, c.x_of_e(params.r2), c.x_of_e(params.r2 / 2)}), EndpointSpec{}, c.tol, c.maxsub);
    out.z1.value += r.value;
    out.z1.error = r.abs_error_estimate + c.tol * 0.1 * std::abs(r.value);
  }
  if (rho_l < xc) out.z2.value = r2X * (power_integral(as, 0, xc) - power_integral(as, 0, rho_l));
  if (xc < params.r1) {
    QuadResult r = integrate_1d([&](double x) { return c.xpow(x) * z2_part(c.le(x)); },
                                decade_points(xc, params.r1, {0.1 * xT, xT, 10 * xT, rho_l, c.x_of_e(params.r2), c.x_of_e(params.r2 / 2)}), EndpointSpec{}, c.tol,
                                c.maxsub);
    out.z2.value += r.value;
    out.z2.error = r.abs_error_estimate + c.tol * 0.1 * std::abs(r.value);
  }
  return out;
}

GParts g_parts(const FamilyParams& params, double lambda, double sigma, const NumericConfig& cfg) {
  params.validate();
  check_window(params, sigma);
  check_lambda(lambda);
  const double X = params.b * sigma + 1, p = params.pd(), as = params.a * sigma;
  const double rt = lambda * params.r2;
  GParts g;
  g.U = rho(params, rt) / std::pow(X, 1 / p);
  g.scale = std::exp(-X * std::log(lambda) + (-1 + (1 + as) / p) * std::log(X));
  const double rtX = std::exp(X * std::log(rt));
  auto eu = [&](double u) { return std::exp(log_e_flat(params, u)); };
  auto upow = [&](double u) { return params.a == 0 ? 1.0 : std::exp(as * std::log(u)); };
  double top = std::min(1.0, g.U);
  g.G1 = from(integrate_1d([&](double u) { return upow(u) * (rtX - eu(u)); }, 0.0, top, EndpointSpec{as, 0.0},
                           cfg.tol_1d, cfg.max_subdivisions));
  if (g.U > 1) {
    std::vector<double> pts{1.0};
    for (double v = 10; v < g.U; v *= 10) pts.push_back(v);
    pts.push_back(g.U);
    g.G2 = from(integrate_1d([&](double u) { return upow(u) * -std::expm1(log_e_flat(params, u)); }, pts,
                             EndpointSpec{}, cfg.tol_1d, cfg.max_subdivisions));
    g.G3 = {std::expm1(X * std::log(rt)) * std::expm1((as + 1) * std::log(g.U)) / (as + 1), 0.0};
  }
  return g;
}

HParts h_parts(const FamilyParams& params, double lambda, double sigma, const NumericConfig& cfg) {
  params.validate();
  check_window(params, sigma);
  check_lambda(lambda);
  const double X = params.b * sigma + 1, p = params.pd(), as = params.a * sigma;
  HParts h;
  double r = rho(params, lambda * params.r2);
  h.U = r / std::pow(X, 1 / p);
  h.H1 = {(std::log(r) - std::log(X) / p) / params.q, 0.0};
  if (h.U > 1) {
    std::vector<double> pts{1.0};
    for (double v = 10; v < h.U; v *= 10) pts.push_back(v);
    pts.push_back(h.U);
    auto f = [&](double u) {
      double upow = params.a == 0 ? 1.0 : std::exp(as * std::log(u));
      return 1.0 / (params.q * u) - upow * -std::expm1(log_e_flat(params, u));
    };
    h.H2 = from(integrate_1d(f, pts, EndpointSpec{}, cfg.tol_1d, cfg.max_subdivisions));
  }
  return h;
}

JParts j_parts(const FamilyParams& params, double lambda, double sigma, const NumericConfig& cfg) {
  params.validate();
  check_window(params, sigma);
  check_lambda(lambda);
  const double X = params.b * sigma + 1, p = params.pd(), as = params.a * sigma;
  const double alpha = std::exp(-1.0 / params.q);
  const double r = rho(params, lambda * params.r2);
  const double lamX = std::exp(-X * std::log(lambda));
  JParts j;
  auto f = [&](double x) {
    double xmp = std::pow(x, -p);
    double arg = X * xmp;
    double v = arg < 1e8 ? psi(alpha, arg) * xmp : -std::expm1(arg * std::log(alpha)) / X;
    return (params.a == 0 ? 1.0 : std::exp(as * std::log(x))) * v;
  };
  double xT = std::pow(X / params.q, 1 / p);
  QuadResult q1 = integrate_1d(f, decade_points(0, r, {0.1 * xT, xT, 10 * xT}), EndpointSpec{as, 0.0}, cfg.tol_1d,
                               cfg.max_subdivisions);
  j.J1 = {lamX * q1.value, lamX * q1.abs_error_estimate};
  j.J2 = {lamX * std::expm1(X * std::log(lambda * params.r2)) / X * power_integral(as, 0, r), 0.0};
  return j;
}

DecompositionTrace region_pieces(const FamilyParams& params, double lambda, double sigma, const NumericConfig& cfg) {
  params.validate();
  cfg.validate();
  check_window(params, sigma);
  check_lambda(lambda);
  DecompositionTrace t;
  t.lambda = lambda;
  if (cfg.flat_term) {
    Fn2 g = [&](double x, double y) { return integrand(params, x, y, sigma, cfg.flat_cutoff_exponent); };
    SplitResult r = split_2d(params, lambda, sigma, cfg, g,
                             std::min((params.b - params.q) * sigma, params.b * sigma));
    t.z1 = from(r.above);
    t.z2 = from(r.below);
  } else {
    ZetaSample z = zeta_quadrant_2d(params, sigma, cfg);
    t.z1 = {z.value, z.error};
    t.z2 = {0.0, 0.0};
  }
  t.ztilde1 = ztilde1(params, lambda, sigma, cfg);
  t.ztilde2 = ztilde2(params, lambda, sigma, cfg);
  if (!cfg.flat_term) return t;
  switch (classify_regime(params).kind) {
    case RegimeKind::SupercriticalFlat: {
      GParts g = g_parts(params, lambda, sigma, cfg);
      t.G1 = g.G1;
      t.G2 = g.G2;
      t.G3 = g.G3;
      break;
    }
    case RegimeKind::CriticalFlat: {
      HParts h = h_parts(params, lambda, sigma, cfg);
      t.H1 = h.H1;
      t.H2 = h.H2;
      break;
    }
    case RegimeKind::SubcriticalFlat: {
      JParts j = j_parts(params, lambda, sigma, cfg);
      t.J1 = j.J1;
      t.J2 = j.J2;
      break;
    }
  }
  return t;
}

double monomial_weighted(const Monomial& m, const BumpSpec& bump, double s, const NumericConfig& cfg) {
  check_bump(bump);
  if (m.a < 0 || m.b < 1) throw InvalidParams("monomial exponents must satisfy a >= 0, b >= 1");
  if (!(m.a * s > -1) || !(m.b * s > -1)) throw OutOfWindow("monomial weighted integral diverges at this s");
  const double amp = bump.amplitude / std::exp(2.0);
  Fn2 g = [&](double x, double y) {
    return std::exp(m.a * s * std::log(x) + m.b * s * std::log(y)) * bump_factor(bump.R1, x) *
           bump_factor(bump.R2, y);
  };
  double tol = std::min(cfg.tol_1d * 10, cfg.tol_2d);
  SplitResult r = integrate_2d_split(g, {0.0, bump.R1}, {0.0, bump.R2}, [&](double) { return bump.R2; },
                                     EndpointSpec{m.a * s, 0.0}, EndpointSpec{m.b * s, 0.0}, tol,
                                     cfg.max_subdivisions);
  return 4 * amp * r.total.value;
}

namespace {

// int_0^R x^e (log x)^k phi_R(x) dx.
double log_moment(double R, double e, int k, int maxsub) {
  auto f = [&](double x) {
    double lx = std::log(x);
    double ph = bump_factor(R, x);
    if (ph == 0) return 0.0;
    double mag = e * lx + (k > 0 ? k * std::log(-lx) : 0.0);
    double v = std::exp(mag) * ph;
    return (k % 2 == 0) ? v : -v;
  };
  std::vector<double> pts{0.0};
  double peak = std::exp(-k / (e + 1));
  for (double v : {peak * std::exp(-4.0), peak, peak * std::exp(2.0), R / 2})
    if (v > pts.back() * (1 + 1e-9) && v < R * (1 - 1e-9)) pts.push_back(v);
  pts.push_back(R);
  return integrate_1d(f, pts, EndpointSpec{e, 0.0}, 1e-13, maxsub).value;
}

}  // namespace

std::vector<double> log_derivative_integrals(const Monomial& m, const BumpSpec& bump, double s, int J,
                                             const NumericConfig& cfg) {
  check_bump(bump);
  if (J < 0) throw InvalidParams("derivative order must be >= 0");
  if (m.a < 0 || m.b < 1) throw InvalidParams("monomial exponents must satisfy a >= 0, b >= 1");
  if (!(m.a * s > -1) || !(m.b * s > -1)) throw OutOfWindow("log-derivative integral diverges at this s");
  if (std::pow(bump.R1, m.a) * std::pow(bump.R2, m.b) >= 1) throw DomainError("|f| must stay below 1 on the support");
  const double amp = bump.amplitude / std::exp(2.0);
  std::vector<double> mx(J + 1), my(J + 1);
  for (int k = 0; k <= J; ++k) {
    mx[k] = log_moment(bump.R1, m.a * s, k, cfg.max_subdivisions);
    my[k] = log_moment(bump.R2, m.b * s, k, cfg.max_subdivisions);
  }
  std::vector<double> D(J + 1);
  for (int j = 0; j <= J; ++j) {
    double sum = 0, binom = 1;
    for (int k = 0; k <= j; ++k) {
      if (k > 0) binom = binom * (j - k + 1) / k;
      double ak = (k == 0) ? 1.0 : std::pow(static_cast<double>(m.a), k);
      if (ak == 0) continue;
      sum += binom * ak * std::pow(static_cast<double>(m.b), j - k) * mx[k] * my[j - k];
    }
    D[j] = 4 * amp * sum;
  }
  return D;
}

double log_derivative_integral(const Monomial& m, const BumpSpec& bump, double s, int j, const NumericConfig& cfg) {
  return log_derivative_integrals(m, bump, s, j, cfg).back();
}

double log_derivative_integral(const FamilyParams& params, const BumpSpec& bump, double s, int j,
                               const NumericConfig& cfg) {
  require_even_q(params);
  params.validate();
  check_bump(bump);
  if (j < 0) throw InvalidParams("derivative order must be >= 0");
  if (!(s > -1.0 / params.b)) throw OutOfWindow("log-derivative integral diverges at this s");
  {
    double lf = params.a * std::log(bump.R1) + (params.b - params.q) * std::log(bump.R2) +
                logaddexp(params.q * std::log(bump.R2), -std::pow(bump.R1, -params.pd()));
    if (lf >= 0) throw DomainError("|f| must stay below 1 on the support");
  }
  const double amp = bump.amplitude / std::exp(2.0);
  const double cut = cfg.flat_cutoff_exponent;
  Fn2 g = [&](double x, double y) {
    double lx = std::log(x), ly = std::log(y);
    double lE = -std::pow(x, -params.pd());
    double L = params.a * lx;
    if (-lE / params.q > cut || !cfg.flat_term)
      L += params.b * ly;
    else
      L += (params.b - params.q) * ly + logaddexp(params.q * ly, lE);
    return std::exp(s * L) * std::pow(L, j) * bump_factor(bump.R1, x) * bump_factor(bump.R2, y);
  };
  Fn1 split = [&](double x) { return cfg.flat_term ? e_flat(params, x, cut) : 0.0; };
  double ey = s < 0 ? params.b * s : 0.0;
  SplitResult r = integrate_2d_split(g, {0.0, bump.R1}, {0.0, bump.R2}, split,
                                     EndpointSpec{std::min(0.0, params.a * s), 0.0}, EndpointSpec{ey, 0.0},
                                     cfg.tol_2d, cfg.max_subdivisions);
  return 4 * amp * r.total.value;
}

std::vector<ZetaSample> zeta_schedule(const FamilyParams& params, const SigmaSchedule& schedule,
                                      const NumericConfig& cfg, int threads) {
  std::vector<ZetaSample> out(schedule.size());
  parallel_for(schedule.size(), threads, [&](std::size_t i) { out[i] = zeta_quadrant(params, schedule.sigma[i], cfg); });
  return out;
}

std::vector<ZetaSample> zeta_weighted_schedule(const FamilyParams& params, const BumpSpec& bump,
                                               const SigmaSchedule& schedule, const NumericConfig& cfg, int threads) {
  std::vector<ZetaSample> out(schedule.size());
  parallel_for(schedule.size(), threads,
               [&](std::size_t i) { out[i] = zeta_weighted(params, bump, schedule.sigma[i], cfg); });
  return out;
}

}  // namespace flatzeta

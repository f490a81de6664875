#include "flatzeta/quad.hpp"

#include "flatzeta/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace flatzeta {

namespace {

constexpr int kMaxLevel = 7;
constexpr int kFine = 1 << kMaxLevel;  // nodes per unit of t at the finest level
constexpr double kTMax = 6.0;          // complement c(t) ~ 1e-275 here
constexpr int kMaxK = static_cast<int>(kTMax * kFine);
constexpr double kEps = std::numeric_limits<double>::epsilon();

// Node data on [-1,1] for t = k / kFine, k = 0..kMaxK.
// c: distance to the nearer endpoint, w: dx/dt, up: du/dt, th: tanh t.
struct DeTable {
  std::vector<double> c, w, up, th;
  DeTable() {
    c.resize(kMaxK + 1);
    w.resize(kMaxK + 1);
    up.resize(kMaxK + 1);
    th.resize(kMaxK + 1);
    const double hp = std::numbers::pi / 2;
    for (int k = 0; k <= kMaxK; ++k) {
      double t = static_cast<double>(k) / kFine;
      double u = hp * std::sinh(t);
      double e = std::exp(-2 * u);
      c[k] = 2 * e / (1 + e);
      up[k] = hp * std::cosh(t);
      w[k] = up[k] * 4 * e / ((1 + e) * (1 + e));
      th[k] = std::tanh(t);
    }
  }
};

const DeTable& table() {
  static const DeTable t;
  return t;
}

template <std::size_t N>
using Vec = std::array<double, N>;

template <std::size_t N>
double max_abs(const Vec<N>& v) {
  double m = 0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

template <std::size_t N>
struct Panel {
  double lo = 0, hi = 0;
  double beta_lo = 0, beta_hi = 0;
  Vec<N> value{};
  Vec<N> err{};
  Vec<N> l1{};
};

template <std::size_t N>
struct Engine {
  const std::function<Vec<N>(double)>& f;
  long evaluations = 0;

  Vec<N> eval(double x) {
    Vec<N> v;
    if (!try_eval(x, v)) {
      for (double y : v) {
        if (std::isfinite(y)) continue;
        std::ostringstream os;
        os.precision(17);
        os << "non-finite integrand value at x=" << x;
        throw NonConvergence(os.str());
      }
    }
    return v;
  }

  bool try_eval(double x, Vec<N>& v) {
    v = f(x);
    ++evaluations;
    for (double y : v)
      if (!std::isfinite(y)) return false;
    return true;
  }

  // Runs one tanh-sinh panel until the level-to-level change drops below
  // max(tol*|S|, target) or the finest level is reached.
  void run(Panel<N>& p, double tol, const Vec<N>& target) {
    const DeTable& tb = table();
    const double half = (p.hi - p.lo) / 2;
    const double mid = p.lo + half;
    // g values (f times dx/dt) and f values on both sides, finest indexing.
    std::vector<Vec<N>> gl(kMaxK + 1), gr(kMaxK + 1), fl(kMaxK + 1), fr(kMaxK + 1);
    std::vector<char> have_l(kMaxK + 1, 0), have_r(kMaxK + 1, 0);
    int kl = kMaxK, kr = kMaxK;      // last usable index per side
    bool decay_l = false, decay_r = false;  // truncated because the tail decayed

    Vec<N> g0 = eval(mid);
    for (std::size_t i = 0; i < N; ++i) g0[i] *= half * tb.w[0];

    auto eval_side = [&](int k, bool left) {
      int& klim = left ? kl : kr;
      if (k > klim) return;
      double d = half * tb.c[k];
      double x = left ? p.lo + d : p.hi - d;
      const double beta = left ? p.beta_lo : p.beta_hi;
      if (beta == 0 && d > 0 && !(x > p.lo && x < p.hi)) {
        // Regular endpoint: the integrand is continuous there, so use the
        // nearest representable interior abscissa.
        x = left ? std::nextafter(p.lo, p.hi) : std::nextafter(p.hi, p.lo);
      }
      // Offsets below 1e-290 would reach subnormal abscissas where a singular
      // power overflows; the end correction models the remainder instead.
      auto stop_before = [&] {
        int prev = k - 1;
        while (prev > 0 && !(left ? have_l[prev] : have_r[prev])) --prev;
        klim = std::min(klim, prev);
      };
      if (!(d > 1e-290) || x == (left ? p.lo : p.hi) || x <= p.lo || x >= p.hi) {
        // Node collapsed onto the endpoint; stop this side before it.
        stop_before();
        return;
      }
      Vec<N> fv;
      if (beta < 0 && d < 1e-100 * half) {
        // Deep inside a singular end the integrand may overflow; the power-law
        // end correction covers the rest.
        if (!try_eval(x, fv)) {
          stop_before();
          return;
        }
      } else {
        fv = eval(x);
      }
      if (beta != 0) {
        // x was rounded, so its true distance to the end differs from d; shift
        // the sample back to d along the local power law.
        const double da = left ? x - p.lo : p.hi - x;
        if (da != d) {
          const double scale = std::pow(d / da, beta);
          for (std::size_t i = 0; i < N; ++i) fv[i] *= scale;
        }
      }
      Vec<N> gv;
      for (std::size_t i = 0; i < N; ++i) gv[i] = fv[i] * half * tb.w[k];
      if (left) {
        gl[k] = gv;
        fl[k] = fv;
        have_l[k] = 1;
      } else {
        gr[k] = gv;
        fr[k] = fv;
        have_r[k] = 1;
      }
    };

    // Power-law end model: remainder beyond the last node plus Euler-Maclaurin
    // terms for the truncated trapezoid sum.
    auto end_correction = [&](int k, bool left, double h, Vec<N>& acc) {
      double beta = left ? p.beta_lo : p.beta_hi;
      const Vec<N>& g = left ? gl[k] : gr[k];
      const Vec<N>& fv = left ? fl[k] : fr[k];
      double d = half * tb.c[k];
      double dlog = (1 + beta) * (-2 * tb.up[k]) + tb.th[k];
      for (std::size_t i = 0; i < N; ++i) {
        double gp = g[i] * dlog;
        acc[i] += -0.5 * h * g[i] - h * h / 12 * gp + fv[i] * d / (1 + beta);
      }
    };

    Vec<N> prev{}, prev_delta{};
    bool have_prev = false, have_delta = false;
    for (int level = 0; level <= kMaxLevel; ++level) {
      const int stride = 1 << (kMaxLevel - level);
      const double h = static_cast<double>(stride) / kFine;
      const int start = level == 0 ? stride : stride;
      const int step = level == 0 ? stride : 2 * stride;
      for (int k = start; k <= kMaxK; k += step) {
        eval_side(k, true);
        eval_side(k, false);
      }
      if (level == 1) {
        // Decide decay truncation once the h = 1/2 grid is known.
        // Each component is judged against its own scale.
        Vec<N> gmax;
        for (std::size_t i = 0; i < N; ++i) gmax[i] = std::abs(g0[i]);
        for (int k = stride; k <= kMaxK; k += stride)
          for (std::size_t i = 0; i < N; ++i) {
            if (have_l[k]) gmax[i] = std::max(gmax[i], std::abs(gl[k][i]));
            if (have_r[k]) gmax[i] = std::max(gmax[i], std::abs(gr[k][i]));
          }
        auto significant = [&](const Vec<N>& g) {
          for (std::size_t i = 0; i < N; ++i)
            if (std::abs(g[i]) > 1e-22 * gmax[i]) return true;
          return false;
        };
        auto trunc = [&](std::vector<Vec<N>>& g, std::vector<char>& have, int& klim, bool& decayed) {
          int last = 0;
          for (int k = stride; k <= klim; k += stride)
            if (have[k] && significant(g[k])) last = k;
          int lim = last + 2 * stride;
          if (lim < klim) {
            klim = lim;
            decayed = true;
          }
        };
        trunc(gl, have_l, kl, decay_l);
        trunc(gr, have_r, kr, decay_r);
      }
      Vec<N> s = g0, a{};
      for (std::size_t i = 0; i < N; ++i) a[i] = std::abs(g0[i]);
      int last_l = 0, last_r = 0;
      for (int k = stride; k <= kMaxK; k += stride) {
        if (k <= kl && have_l[k]) {
          for (std::size_t i = 0; i < N; ++i) {
            s[i] += gl[k][i];
            a[i] += std::abs(gl[k][i]);
          }
          last_l = k;
        }
        if (k <= kr && have_r[k]) {
          for (std::size_t i = 0; i < N; ++i) {
            s[i] += gr[k][i];
            a[i] += std::abs(gr[k][i]);
          }
          last_r = k;
        }
      }
      for (std::size_t i = 0; i < N; ++i) {
        s[i] *= h;
        a[i] *= h;
      }
      if (!decay_l && last_l > 0) end_correction(last_l, true, h, s);
      if (!decay_r && last_r > 0) end_correction(last_r, false, h, s);

      p.value = s;
      p.l1 = a;
      if (have_prev) {
        Vec<N> delta;
        bool ok = level >= 3;
        for (std::size_t i = 0; i < N; ++i) {
          delta[i] = std::abs(s[i] - prev[i]);
          double est = delta[i];
          if (have_delta && prev_delta[i] > 0) est = std::min(est, delta[i] * delta[i] / prev_delta[i]);
          double floor = 10 * kEps * a[i] + std::numeric_limits<double>::min();
          p.err[i] = std::max(est, floor);
          if (p.err[i] > std::max(tol * std::abs(s[i]), target[i])) ok = false;
        }
        prev_delta = delta;
        have_delta = true;
        if (ok) return;
      } else {
        for (std::size_t i = 0; i < N; ++i) p.err[i] = std::abs(s[i]) + a[i];
      }
      prev = s;
      have_prev = true;
    }
  }
};

template <std::size_t N>
struct VecResult {
  Vec<N> value{};
  Vec<N> err{};
  Vec<N> l1{};
  long evaluations = 0;
};

void check_exponent(double beta) {
  if (!(beta > -1)) throw DomainError("endpoint exponent must exceed -1");
}

template <std::size_t N>
VecResult<N> adaptive(const std::function<Vec<N>(double)>& f, std::vector<double> pts, EndpointSpec ep, double tol,
                      int max_subdivisions) {
  if (pts.size() < 2 || !(pts.front() < pts.back()))
    throw DomainError("integration needs lo < hi");
  if (!std::isfinite(pts.front()) || !std::isfinite(pts.back())) throw DomainError("integration limits must be finite");
  if (!(tol > 0)) throw DomainError("tolerance must be positive");
  check_exponent(ep.exponent_lo);
  check_exponent(ep.exponent_hi);
  // Keep only strictly increasing interior points.
  std::vector<double> cuts{pts.front()};
  for (std::size_t i = 1; i + 1 < pts.size(); ++i)
    if (pts[i] > cuts.back() && pts[i] < pts.back()) cuts.push_back(pts[i]);
  cuts.push_back(pts.back());

  Engine<N> eng{f};
  // Intervals only a few ulps wide: the integrand is effectively constant.
  const double width = cuts.back() - cuts.front();
  if (width <= 1e-12 * std::max(std::abs(cuts.front()), std::abs(cuts.back()))) {
    const double half = width / 2, mid = cuts.front() + half;
    const double node = half * std::sqrt(0.6);
    Vec<N> a = eng.eval(mid - node), b = eng.eval(mid), c = eng.eval(mid + node);
    VecResult<N> r;
    for (std::size_t i = 0; i < N; ++i) {
      r.value[i] = half * (5 * a[i] + 8 * b[i] + 5 * c[i]) / 9;
      r.l1[i] = half * (5 * std::abs(a[i]) + 8 * std::abs(b[i]) + 5 * std::abs(c[i])) / 9;
      r.err[i] = 1e-12 * r.l1[i];
    }
    r.evaluations = eng.evaluations;
    return r;
  }
  // Intervals [0, h] so short that tanh-sinh nodes would be subnormal: fit a
  // local power law f ~ C y^g from samples at h/2, h/4, h/8. The declared
  // exponent is only an upper bound on the singularity, so it is the fallback.
  if (cuts.front() == 0 && cuts.back() < 1e-250) {
    const double h = cuts.back();
    Vec<N> f2 = eng.eval(h / 2), f4 = eng.eval(h / 4), f8 = eng.eval(h / 8);
    auto power = [&](double u, double v) {
      double g = (u > 0 && v > 0) || (u < 0 && v < 0) ? std::log2(u / v) : ep.exponent_lo;
      return g > -1 + 1e-6 ? g : ep.exponent_lo;
    };
    VecResult<N> r;
    for (std::size_t i = 0; i < N; ++i) {
      double g1 = power(f2[i], f4[i]), g2 = power(f4[i], f8[i]);
      double i1 = f2[i] * h * std::pow(2.0, g1) / (1 + g1);
      double i2 = f4[i] * h * std::pow(4.0, g2) / (1 + g2);
      r.value[i] = i1;
      r.l1[i] = std::abs(i1);
      r.err[i] = std::abs(i1 - i2) + 10 * kEps * std::abs(i1);
    }
    r.evaluations = eng.evaluations;
    return r;
  }
  std::vector<Panel<N>> panels;
  Vec<N> zero{};
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    Panel<N> p;
    p.lo = cuts[i];
    p.hi = cuts[i + 1];
    p.beta_lo = i == 0 ? ep.exponent_lo : 0.0;
    p.beta_hi = i + 2 == cuts.size() ? ep.exponent_hi : 0.0;
    eng.run(p, tol, zero);
    panels.push_back(p);
  }
  const int cap = std::max<int>(max_subdivisions, static_cast<int>(panels.size()));
  // Panels a few ulps wide cannot be refined; their error is a resolution
  // floor (like the roundoff floor below) rather than something to bisect.
  std::vector<char> frozen(panels.size(), 0);
  auto too_narrow = [](const Panel<N>& p) {
    double scale = std::max(std::abs(p.lo), std::abs(p.hi));
    return p.hi - p.lo <= 64 * kEps * scale;
  };
  while (true) {
    Vec<N> total{}, err{}, l1{}, floor{};
    for (std::size_t j = 0; j < panels.size(); ++j)
      for (std::size_t i = 0; i < N; ++i) {
        total[i] += panels[j].value[i];
        err[i] += panels[j].err[i];
        l1[i] += panels[j].l1[i];
        if (frozen[j]) floor[i] += panels[j].err[i];
      }
    Vec<N> goal;
    bool done = true;
    for (std::size_t i = 0; i < N; ++i) {
      // Each panel may carry a DBL_MIN error even when the component is identically zero.
      goal[i] = std::max(tol * std::abs(total[i]),
                         10 * kEps * l1[i] + 2 * std::numeric_limits<double>::min() * panels.size());
      if (err[i] - floor[i] > goal[i]) done = false;
    }
    if (done) return {total, err, l1, eng.evaluations};
    if (static_cast<int>(panels.size()) >= cap) {
      std::ostringstream os;
      os.precision(3);
      os << "quadrature did not converge on [" << cuts.front() << ", " << cuts.back() << "] within " << cap
         << " panels (error " << max_abs(err) << ", value " << max_abs(total) << ")";
      throw NonConvergence(os.str());
    }
    std::size_t worst = 0;
    double worst_ratio = -1;
    for (std::size_t j = 0; j < panels.size(); ++j) {
      if (frozen[j]) continue;
      double r = 0;
      for (std::size_t i = 0; i < N; ++i) r = std::max(r, panels[j].err[i] / goal[i]);
      if (r > worst_ratio) {
        worst_ratio = r;
        worst = j;
      }
    }
    Panel<N> old = panels[worst];
    if (too_narrow(old)) {
      // At a singular end the mass inside the last few ulps is not small; model
      // it as C d^beta with C fitted at the far edge and at the midpoint.
      const bool at_hi = old.beta_hi != 0, at_lo = old.beta_lo != 0;
      if (at_hi != at_lo) {
        const double beta = at_hi ? old.beta_hi : old.beta_lo;
        const double end = at_hi ? old.hi : old.lo, far = at_hi ? old.lo : old.hi;
        const double mid = old.lo + (old.hi - old.lo) / 2;
        const double w = std::abs(end - far), wm = std::abs(end - mid);
        Vec<N> ff, fm;
        if (wm > 0 && eng.try_eval(far, ff) && eng.try_eval(mid, fm)) {
          Panel<N>& p = panels[worst];
          for (std::size_t i = 0; i < N; ++i) {
            double v1 = ff[i] * w / (1 + beta);
            double v2 = fm[i] * std::pow(w / wm, beta) * w / (1 + beta);
            p.value[i] = v1;
            p.l1[i] = std::abs(v1);
            p.err[i] = std::abs(v1 - v2) + 10 * kEps * std::abs(v1);
          }
        }
      }
      frozen[worst] = 1;
      continue;
    }
    double m = old.lo + (old.hi - old.lo) / 2;
    if (!(m > old.lo && m < old.hi)) throw NonConvergence("quadrature panel cannot be bisected further");
    Panel<N> left, right;
    left.lo = old.lo;
    left.hi = m;
    left.beta_lo = old.beta_lo;
    right.lo = m;
    right.hi = old.hi;
    right.beta_hi = old.beta_hi;
    Vec<N> target;
    for (std::size_t i = 0; i < N; ++i) target[i] = goal[i] / 4;
    eng.run(left, tol, target);
    eng.run(right, tol, target);
    panels[worst] = left;
    panels.insert(panels.begin() + static_cast<std::ptrdiff_t>(worst) + 1, right);
    frozen.insert(frozen.begin() + static_cast<std::ptrdiff_t>(worst) + 1, 0);
  }
}

QuadResult scalar(const VecResult<1>& r) { return {r.value[0], r.err[0], r.evaluations}; }

}  // namespace

QuadResult integrate_1d(const Fn1& f, double lo, double hi, EndpointSpec endpoints, double tol, int max_subdivisions) {
  return integrate_1d(f, std::vector<double>{lo, hi}, endpoints, tol, max_subdivisions);
}

QuadResult integrate_1d(const Fn1& f, const std::vector<double>& points, EndpointSpec endpoints, double tol,
                        int max_subdivisions) {
  std::function<Vec<1>(double)> fv = [&f](double x) { return Vec<1>{f(x)}; };
  return scalar(adaptive<1>(fv, points, endpoints, tol, max_subdivisions));
}

QuadResult integrate_tail(const Fn1& f, double lo, double gamma, double K, double tol, int max_subdivisions,
                          double x0) {
  if (!(lo > 0)) throw DomainError("tail integration needs lo > 0");
  if (!(gamma < -1)) throw DomainError("tail exponent must be < -1");
  if (!(K >= 0)) throw DomainError("envelope constant must be >= 0");
  if (x0 < 0) x0 = lo;
  double umin = std::numeric_limits<double>::infinity();
  auto g = [&](double u) {
    double x = 1 / u;
    double fx = f(x);
    if (x >= x0) {
      double env = K * std::pow(x, gamma);
      if (std::abs(fx) > env * (1 + 1e-9) + 1e-300) {
        std::ostringstream os;
        os.precision(17);
        os << "integrand exceeds the envelope at x=" << x << ": |f|=" << std::abs(fx) << " > " << env;
        throw EnvelopeViolation(os.str());
      }
    }
    umin = std::min(umin, u);
    return fx / u / u;
  };
  QuadResult r = integrate_1d(g, 0.0, 1 / lo, EndpointSpec{-gamma - 2, 0.0}, tol, max_subdivisions);
  // Certified bound for the part beyond the outermost node.
  double xmax = 1 / umin;
  double bound = K * std::pow(xmax, gamma + 1) / std::abs(gamma + 1);
  r.abs_error_estimate += bound;
  return r;
}

SplitResult integrate_2d_split(const Fn2& g, std::array<double, 2> x_range, std::array<double, 2> y_range,
                               const Fn1& split_curve, EndpointSpec endpoints_x, EndpointSpec endpoints_y, double tol,
                               int max_subdivisions) {
  return integrate_2d_split_points(g, std::vector<double>{x_range[0], x_range[1]}, y_range, split_curve, endpoints_x,
                            endpoints_y, tol, max_subdivisions);
}

SplitResult integrate_2d_split_points(const Fn2& g, const std::vector<double>& x_points, std::array<double, 2> y_range,
                               const Fn1& split_curve, EndpointSpec endpoints_x, EndpointSpec endpoints_y, double tol,
                               int max_subdivisions) {
  const double ylo = y_range[0], yhi = y_range[1];
  if (!(ylo < yhi)) throw DomainError("integration needs y_lo < y_hi");
  check_exponent(endpoints_y.exponent_lo);
  check_exponent(endpoints_y.exponent_hi);
  const double inner_tol = tol / 10;
  long inner_evals = 0;
  std::function<Vec<2>(double)> outer = [&](double x) {
    auto gy = [&](double y) { return g(x, y); };
    double s = split_curve(x);
    Vec<2> out{0.0, 0.0};
    if (!(s > ylo)) s = ylo;
    if (s > yhi) s = yhi;
    if (s > ylo) {
      QuadResult b = integrate_1d(gy, ylo, s, EndpointSpec{endpoints_y.exponent_lo, 0.0}, inner_tol, max_subdivisions);
      out[0] = b.value;
      inner_evals += b.evaluations;
    }
    if (s > ylo && ylo == 0 && s < 1e-8 * yhi && endpoints_y.exponent_lo != 0) {
      // The split sits many decades above the singular endpoint at 0: integrate
      // in log y, where the power law becomes a smooth exponential.
      auto gt = [&](double t) {
        double y = std::exp(t);
        return g(x, y) * y;
      };
      const double t0 = std::log(s), t1 = std::log(yhi);
      const int pieces = static_cast<int>(std::ceil((t1 - t0) / 8));
      std::vector<double> cuts;
      for (int i = 0; i <= pieces; ++i) cuts.push_back(t0 + (t1 - t0) * i / pieces);
      QuadResult a = integrate_1d(gt, cuts, EndpointSpec{}, inner_tol, max_subdivisions);
      out[1] = a.value;
      inner_evals += a.evaluations;
    } else if (s < yhi) {
      QuadResult a = integrate_1d(gy, s, yhi, EndpointSpec{s > ylo ? 0.0 : endpoints_y.exponent_lo,
                                                           endpoints_y.exponent_hi},
                                  inner_tol, max_subdivisions);
      out[1] = a.value;
      inner_evals += a.evaluations;
    }
    return out;
  };
  VecResult<2> r = adaptive<2>(outer, x_points, endpoints_x, tol, max_subdivisions);
  SplitResult res;
  res.below = {r.value[0], r.err[0] + inner_tol * r.l1[0], inner_evals};
  res.above = {r.value[1], r.err[1] + inner_tol * r.l1[1], inner_evals};
  res.total = {r.value[0] + r.value[1], res.below.abs_error_estimate + res.above.abs_error_estimate, inner_evals};
  return res;
}

}  // namespace flatzeta

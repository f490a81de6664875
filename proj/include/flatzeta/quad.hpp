#pragma once

#include <array>
#include <functional>
#include <vector>

namespace flatzeta {

struct QuadResult {
  double value = 0;
  double abs_error_estimate = 0;
  long evaluations = 0;
};

/// Integrand behaves like (x-lo)^exponent_lo near lo and (hi-x)^exponent_hi near hi.
struct EndpointSpec {
  double exponent_lo = 0;
  double exponent_hi = 0;
};

using Fn1 = std::function<double(double)>;
using Fn2 = std::function<double(double, double)>;

/// Tanh-sinh quadrature with global adaptive bisection. Throws DomainError on
/// bad limits/exponents and NonConvergence when max_subdivisions panels do
/// not reach the relative tolerance.
QuadResult integrate_1d(const Fn1& f, double lo, double hi, EndpointSpec endpoints, double tol,
                        int max_subdivisions = 200);

/// Same, with the interval pre-split at the given increasing breakpoints.
/// Points outside (lo,hi) are ignored. Endpoint exponents refer to lo and hi.
QuadResult integrate_1d(const Fn1& f, const std::vector<double>& points, EndpointSpec endpoints, double tol,
                        int max_subdivisions = 200);

/// Integral over [lo, inf) of f with a caller-certified envelope |f(x)| <= K x^gamma
/// for x >= x0 (x0 defaults to lo), gamma < -1.
QuadResult integrate_tail(const Fn1& f, double lo, double gamma, double K, double tol, int max_subdivisions = 200,
                          double x0 = -1);

struct SplitResult {
  QuadResult below;  // y between y_lo and the split curve
  QuadResult above;  // y between the split curve and y_hi
  QuadResult total;
};

/// Iterated integral, outer in x and inner in y, with the inner interval cut
/// at split_curve(x) (clamped to [y_lo, y_hi]).
SplitResult integrate_2d_split(const Fn2& g, std::array<double, 2> x_range, std::array<double, 2> y_range,
                               const Fn1& split_curve, EndpointSpec endpoints_x, EndpointSpec endpoints_y,
                               double tol, int max_subdivisions = 200);

/// As above with extra outer breakpoints in x.
SplitResult integrate_2d_split_points(const Fn2& g, const std::vector<double>& x_points, std::array<double, 2> y_range,
                               const Fn1& split_curve, EndpointSpec endpoints_x, EndpointSpec endpoints_y,
                               double tol, int max_subdivisions = 200);

}  // namespace flatzeta

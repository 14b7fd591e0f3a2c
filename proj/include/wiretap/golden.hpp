#pragma once

#include <cmath>
#include <utility>

namespace wiretap {

struct ScalarMaximum {
  double arg;
  double value;
  bool at_boundary;  // maximizer landed on (or tied with) an interval endpoint
};

/// Golden-section maximization of a concave function on [lo, hi].
///
/// Ties between an interior point and an endpoint resolve toward the
/// endpoint so callers can detect clamped searches.
template <typename F>
ScalarMaximum maximize_concave(F&& f, double lo, double hi,
                               double arg_tol = 1e-9) {
  constexpr double kInvPhi = 0.6180339887498949;  // 1/phi
  double a = lo, b = hi;
  double c = b - kInvPhi * (b - a);
  double d = a + kInvPhi * (b - a);
  double fc = f(c), fd = f(d);
  while (b - a > arg_tol) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kInvPhi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kInvPhi * (b - a);
      fd = f(d);
    }
  }
  double x = 0.5 * (a + b);
  double fx = f(x);
  double flo = f(lo), fhi = f(hi);
  ScalarMaximum best{x, fx, false};
  if (fhi >= best.value) best = {hi, fhi, true};
  if (flo >= best.value) best = {lo, flo, true};
  if (!best.at_boundary &&
      (best.arg - lo <= arg_tol || hi - best.arg <= arg_tol)) {
    best.at_boundary = true;
  }
  return best;
}

}  // namespace wiretap

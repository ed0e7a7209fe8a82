#pragma once

#include <cmath>
#include <utility>

namespace curveflow {

/// Bisection on a sign-changing bracket [lo, hi]; stops when the bracket is
/// narrower than rel_tol·|x| (or after 300 halvings).
template <class F>
double bisect(F&& f, double lo, double hi, double rel_tol = 1e-12) {
  double flo = f(lo);
  if (flo == 0.0) return lo;
  if (f(hi) == 0.0) return hi;
  for (int it = 0; it < 300; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (hi - lo <= rel_tol * std::max(std::abs(lo), std::abs(hi)) || mid == lo || mid == hi) break;
    const double fmid = f(mid);
    if (fmid == 0.0) return mid;
    if ((fmid < 0.0) == (flo < 0.0)) {
      lo = mid;
      flo = fmid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace curveflow

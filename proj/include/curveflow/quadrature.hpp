#pragma once

#include <functional>
#include <span>
#include <vector>

namespace curveflow {

/// Composite Simpson rule on a (possibly non-uniform) grid. An odd number of
/// intervals closes with a three-point rule on the last interval.
double simpson(std::span<const double> x, std::span<const double> f);

/// Running Simpson integral on a uniform grid of spacing h; result[0] = 0.
std::vector<double> cumulative_simpson(std::span<const double> f, double h);

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;
};

/// Adaptive 31-point Gauss-Kronrod quadrature.
QuadratureResult gauss_kronrod(const std::function<double(double)>& f, double lo, double hi,
                               double tol = 1e-13);

}  // namespace curveflow

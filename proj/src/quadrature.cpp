#include "curveflow/quadrature.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <stdexcept>

namespace curveflow {

double simpson(std::span<const double> x, std::span<const double> f) {
  const std::size_t n = x.size();
  if (n != f.size()) throw std::invalid_argument("simpson: size mismatch");
  if (n < 2) return 0.0;
  if (n == 2) return 0.5 * (x[1] - x[0]) * (f[0] + f[1]);
  double total = 0.0;
  std::size_t i = 0;
  for (; i + 2 < n; i += 2) {
    const double h0 = x[i + 1] - x[i];
    const double h1 = x[i + 2] - x[i + 1];
    const double hs = h0 + h1;
    total += hs / 6.0 *
             ((2.0 - h1 / h0) * f[i] + hs * hs / (h0 * h1) * f[i + 1] + (2.0 - h0 / h1) * f[i + 2]);
  }
  if (i + 1 < n) {
    // Quadratic through the last three samples, integrated over the last interval.
    const double h0 = x[n - 2] - x[n - 3];
    const double h1 = x[n - 1] - x[n - 2];
    total += h1 / 6.0 *
             ((3.0 - h1 / (h0 + h1)) * f[n - 1] + (3.0 + h1 / h0) * f[n - 2] - h1 * h1 / (h0 * (h0 + h1)) * f[n - 3]);
  }
  return total;
}

std::vector<double> cumulative_simpson(std::span<const double> f, double h) {
  const std::size_t n = f.size();
  std::vector<double> out(n, 0.0);
  if (n < 2) return out;
  if (n == 2) {
    out[1] = 0.5 * h * (f[0] + f[1]);
    return out;
  }
  for (std::size_t i = 1; i < n; ++i) {
    if (i % 2 == 0) {
      out[i] = out[i - 2] + h / 3.0 * (f[i - 2] + 4.0 * f[i - 1] + f[i]);
    } else if (i + 1 < n) {
      out[i] = out[i - 1] + h / 12.0 * (5.0 * f[i - 1] + 8.0 * f[i] - f[i + 1]);
    } else {
      out[i] = out[i - 1] + h / 12.0 * (-f[i - 2] + 8.0 * f[i - 1] + 5.0 * f[i]);
    }
  }
  return out;
}

QuadratureResult gauss_kronrod(const std::function<double(double)>& f, double lo, double hi, double tol) {
  double error = 0.0;
  const double value =
      boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, lo, hi, 8, tol, &error);
  return {value, error};
}

}  // namespace curveflow

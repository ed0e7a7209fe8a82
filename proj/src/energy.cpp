#include "curveflow/energy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "curveflow/errors.hpp"
#include "curveflow/roots.hpp"

namespace curveflow {
namespace {

bool is_nonnegative_integer(double p) { return p >= 0.0 && std::floor(p) == p; }

// c·κ^e with the convention that a vanishing coefficient kills the term even
// where κ^e is singular.
double monomial(double c, double kappa, double e) { return c == 0.0 ? 0.0 : c * std::pow(kappa, e); }

void require_domain(bool positive_required, double kappa, const char* where) {
  if (!std::isfinite(kappa))
    throw DomainError(std::string(where) + ": curvature is not finite");
  if (positive_required && kappa <= 0.0)
    throw DomainError(std::string(where) + ": curvature must be positive, got " + std::to_string(kappa));
}

}  // namespace

bool CurvatureEnergy::requires_positive_curvature() const {
  return kind != EnergyKind::Power || !is_nonnegative_integer(p);
}

bool CurvatureEnergy::is_degenerate() const {
  return kind == EnergyKind::Power && (p == 0.0 || p == 1.0);
}

void SolitonProblem::validate() const {
  if (a == 0.0 || !std::isfinite(a)) throw DomainError("soliton problem: a must be finite and nonzero");
  if (!std::isfinite(b)) throw DomainError("soliton problem: b must be finite");
  if (std::abs(norm(V) - 1.0) > 1e-12) throw DomainError("soliton problem: V must be a unit vector");
}

bool SolitonProblem::requires_positive_curvature() const {
  return mode == FlowMode::Log || !is_nonnegative_integer(p);
}

EnergyJet evaluate(const CurvatureEnergy& energy, double kappa) {
  require_domain(energy.requires_positive_curvature(), kappa, "evaluate");
  const double lambda = energy.lambda;
  switch (energy.kind) {
    case EnergyKind::Power: {
      const double p = energy.p;
      return {monomial(1.0, kappa, p) + lambda, monomial(p, kappa, p - 1.0),
              monomial(p * (p - 1.0), kappa, p - 2.0), monomial(p * (p - 1.0) * (p - 2.0), kappa, p - 3.0)};
    }
    case EnergyKind::Entropy: {
      const double log_k = std::log(kappa);
      return {kappa * log_k + lambda, log_k + 1.0, 1.0 / kappa, -1.0 / (kappa * kappa)};
    }
    case EnergyKind::Log:
      return {std::log(kappa) + lambda, 1.0 / kappa, -1.0 / (kappa * kappa), 2.0 / (kappa * kappa * kappa)};
  }
  return {};
}

CurvatureEnergy energy_from_flow(const SolitonProblem& problem) {
  if (problem.mode == FlowMode::Log) return CurvatureEnergy::log(problem.b + 1.0);
  if (problem.p == 1.0) return CurvatureEnergy::entropy(-problem.b);
  return CurvatureEnergy::power(problem.p, problem.b * (1.0 - problem.p));
}

SolitonProblem flow_from_energy(const CurvatureEnergy& energy, double d) {
  if (!(d > 0.0) || !std::isfinite(d)) throw DomainError("flow_from_energy: d must be positive");
  const double root_d = std::sqrt(d);
  switch (energy.kind) {
    case EnergyKind::Power:
      if (energy.p == 0.0)
        throw DegenerateEnergy("p = 0 gives the length functional; its only critical curves are straight lines");
      if (energy.p == 1.0)
        throw DegenerateEnergy("P(κ) = κ + λ is affine in the curvature and has no nonconstant critical curves");
      return SolitonProblem::power_flow(energy.p, root_d / (energy.p - 1.0), energy.lambda / (1.0 - energy.p));
    case EnergyKind::Entropy:
      return SolitonProblem::power_flow(1.0, root_d, -energy.lambda);
    case EnergyKind::Log:
      return SolitonProblem::log_flow(-root_d, energy.lambda - 1.0);
  }
  return {};
}

double el_residual(const CurvatureEnergy& energy, double kappa, double kappa_s, double kappa_ss) {
  const EnergyJet j = evaluate(energy, kappa);
  return j.ddP * kappa_ss + j.dddP * kappa_s * kappa_s + kappa * kappa * j.dP - kappa * j.P;
}

double first_integral(const CurvatureEnergy& energy, double kappa, double kappa_s) {
  const EnergyJet j = evaluate(energy, kappa);
  const double normal = j.ddP * kappa_s;
  const double tangential = kappa * j.dP - j.P;
  return normal * normal + tangential * tangential;
}

double tangential_killing(const CurvatureEnergy& energy, double kappa) {
  const EnergyJet j = evaluate(energy, kappa);
  return kappa * j.dP - j.P;
}

double speed_law(const SolitonProblem& problem, double kappa) {
  require_domain(problem.requires_positive_curvature(), kappa, "speed_law");
  if (problem.mode == FlowMode::Log) return std::log(kappa);
  return std::pow(kappa, problem.p);
}

double speed_law_derivative(const SolitonProblem& problem, double kappa) {
  require_domain(problem.requires_positive_curvature(), kappa, "speed_law_derivative");
  if (problem.mode == FlowMode::Log) return 1.0 / kappa;
  return monomial(problem.p, kappa, problem.p - 1.0);
}

bool CurvatureRange::contains(double kappa) const {
  const bool above = lo_open ? kappa > lo : kappa >= lo;
  const bool below = hi_unbounded || kappa <= hi;
  return above && below;
}

CurvatureRange curvature_range(const CurvatureEnergy& energy, double d) {
  if (!(d > 0.0) || !std::isfinite(d)) throw DomainError("curvature_range: d must be positive");
  // gap(κ) = (κṖ − P)² − d; admissible curvatures have gap ≤ 0.
  auto gap = [&](double k) {
    const double u = tangential_killing(energy, k);
    return u * u - d;
  };

  constexpr double kFloor = 1e-8;
  constexpr double kCeiling = 1e12;
  constexpr std::size_t kGrid = 4000;
  double top = std::abs(energy.lambda) + std::sqrt(d) + 10.0;

  std::vector<double> nodes;
  nodes.reserve(kGrid + 1);
  const double log_span = std::log(top / kFloor);
  for (std::size_t i = 0; i <= kGrid; ++i)
    nodes.push_back(kFloor * std::exp(log_span * static_cast<double>(i) / kGrid));
  nodes.back() = top;
  // Extend upwards while the top of the grid is still admissible.
  while (gap(nodes.back()) <= 0.0 && nodes.back() < kCeiling) {
    const double from = nodes.back();
    for (int i = 1; i <= 64; ++i) nodes.push_back(from * std::pow(2.0, i / 64.0));
  }

  std::vector<double> values(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) values[i] = gap(nodes[i]);

  std::vector<double> roots;
  for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
    if (values[i] == 0.0) {
      roots.push_back(nodes[i]);
    } else if ((values[i] < 0.0) != (values[i + 1] < 0.0) && values[i + 1] != 0.0) {
      roots.push_back(bisect(gap, nodes[i], nodes[i + 1], 1e-12));
    }
  }
  if (values.back() == 0.0) roots.push_back(nodes.back());

  if (roots.empty()) {
    const double closest = *std::min_element(values.begin(), values.end(),
                                             [](double x, double y) { return std::abs(x) < std::abs(y); });
    if (std::abs(closest) <= 1e-10 * std::max(d, 1.0))
      throw NoSolitonError("curvature_range: (κṖ − P)² = d has only a double root; the curvature would be constant");
    throw NoSolitonError("curvature_range: (κṖ − P)² = d has no positive root; no nonconstant soliton exists");
  }

  CurvatureRange range;
  range.vertex = roots.back();
  const double r = range.vertex;
  // Which side of the largest root is admissible?
  auto below_it = std::lower_bound(nodes.begin(), nodes.end(), r);
  const double probe_below = below_it == nodes.begin() ? 0.5 * r : 0.5 * (r + *(below_it - 1));
  if (gap(probe_below) < 0.0) {
    range.hi = r;
    if (roots.size() >= 2) {
      range.lo = roots[roots.size() - 2];
    } else {
      range.lo = 0.0;
      range.lo_open = true;
    }
  } else {
    range.lo = r;
    range.hi = std::numeric_limits<double>::infinity();
    range.hi_unbounded = true;
    const double probe_above = r * (1.0 + 1e-6);
    if (!(gap(probe_above) < 0.0))
      throw NoSolitonError("curvature_range: degenerate one-point interval at κ = " + std::to_string(r));
  }
  if (!range.lo_open && !range.hi_unbounded && range.hi - range.lo <= 1e-12 * range.hi)
    throw NoSolitonError("curvature_range: degenerate one-point interval at κ = " + std::to_string(r));
  return range;
}

}  // namespace curveflow

#include "curveflow/reference.hpp"

#include <cmath>
#include <memory>
#include <numbers>
#include <string>

#include "curveflow/errors.hpp"
#include "curveflow/roots.hpp"
#include "curveflow/soliton.hpp"

namespace curveflow {
namespace {

struct Frame {
  Vec2 point;
  Vec2 tangent;
};

struct ParabolaArc {
  double c;
  double arc(double u) const { return 0.5 * c * (u * std::sqrt(1.0 + u * u) + std::asinh(u)); }
  double parameter(double s) const {
    if (s == 0.0) return 0.0;
    // s(u) ≥ c·|u|, so |u| ≤ |s|/c brackets the root.
    const double target = std::abs(s);
    const double u = bisect([&](double v) { return arc(v) - target; }, 0.0, target / c, 1e-15);
    return std::copysign(u, s);
  }
};

void fill_open(ReferenceCurve& ref, double span, std::size_t n, auto&& frame_at) {
  PlaneCurve& curve = ref.curve;
  curve.boundary = Boundary::FreeEnds;
  for (std::size_t i = 0; i < n; ++i) {
    const double s = -span + 2.0 * span * static_cast<double>(i) / static_cast<double>(n - 1);
    const Frame f = frame_at(s);
    curve.points.push_back(f.point);
    curve.tangents.push_back(f.tangent);
    curve.normals.push_back(rotate_ccw(f.tangent));
    curve.kappas.push_back(ref.exact(s).kappa);
    curve.arc.push_back(s);
  }
}

}  // namespace

ReferenceCurve make_reference(const ReferenceKind& kind, std::size_t n_samples) {
  if (n_samples < 16) throw DomainError("make_reference: need at least 16 samples");
  if (!(kind.parameter > 0.0) || !std::isfinite(kind.parameter))
    throw DomainError("make_reference: scale parameter must be positive");
  if (kind.shape != ReferenceShape::Circle && (!(kind.span > 0.0) || !std::isfinite(kind.span)))
    throw DomainError("make_reference: span must be positive");

  ReferenceCurve ref;
  const double q = kind.parameter;
  switch (kind.shape) {
    case ReferenceShape::GrimReaper: {
      const double root_d = std::sqrt(q);
      ref.exact = [=](double s) {
        const double u = root_d * s;
        const double sech = 1.0 / std::cosh(u);
        const double th = std::tanh(u);
        return CurvatureJet{root_d * sech, -q * sech * th, q * root_d * sech * (th * th - sech * sech)};
      };
      fill_open(ref, kind.span, n_samples, [=](double s) {
        const double u = root_d * s;
        return Frame{{std::atan(std::sinh(u)) / root_d, std::log(std::cosh(u)) / root_d},
                     {1.0 / std::cosh(u), std::tanh(u)}};
      });
      break;
    }
    case ReferenceShape::Catenary: {
      ref.exact = [=](double s) {
        const double r2 = q * q + s * s;
        return CurvatureJet{q / r2, -2.0 * q * s / (r2 * r2), 2.0 * q * (3.0 * s * s - q * q) / (r2 * r2 * r2)};
      };
      fill_open(ref, kind.span, n_samples, [=](double s) {
        const double r = std::hypot(q, s);
        return Frame{{q * std::asinh(s / q), r}, {q / r, s / r}};
      });
      break;
    }
    case ReferenceShape::Cycloid: {
      const double big = 4.0 * q;
      if (kind.span >= big)
        throw SpanExceeded("make_reference: cycloid span " + std::to_string(kind.span) + " reaches the cusp at 4r = " +
                           std::to_string(big));
      ref.exact = [=](double s) {
        const double rho = std::sqrt(big * big - s * s);
        const double rho3 = rho * rho * rho;
        return CurvatureJet{1.0 / rho, s / rho3, 1.0 / rho3 + 3.0 * s * s / (rho3 * rho * rho)};
      };
      fill_open(ref, kind.span, n_samples, [=](double s) {
        const double rho = std::sqrt(big * big - s * s);
        const double x = (0.5 * s * rho + 0.5 * big * big * std::asin(s / big)) / big;
        return Frame{{x, s * s / (2.0 * big)}, {rho / big, s / big}};
      });
      break;
    }
    case ReferenceShape::Parabola: {
      const auto arc = std::make_shared<ParabolaArc>(ParabolaArc{2.0 * q});
      const double c = arc->c;
      ref.exact = [=](double s) {
        const double u = arc->parameter(s);
        const double w = 1.0 + u * u;
        return CurvatureJet{std::pow(w, -1.5) / c, -3.0 * u / (c * c * w * w * w),
                            -3.0 * (1.0 - 5.0 * u * u) / (c * c * c * std::pow(w, 4.5))};
      };
      fill_open(ref, kind.span, n_samples, [=](double s) {
        const double u = arc->parameter(s);
        return Frame{{c * u, 0.5 * c * u * u}, normalized(Vec2{1.0, u})};
      });
      break;
    }
    case ReferenceShape::Line: {
      ref.exact = [](double) { return CurvatureJet{}; };
      fill_open(ref, kind.span, n_samples, [](double s) { return Frame{{s, 0.0}, {1.0, 0.0}}; });
      break;
    }
    case ReferenceShape::Elastica: {
      const CurvatureEnergy energy = CurvatureEnergy::power(2.0, 0.0);
      const auto profile = std::make_shared<CurvatureProfile>(integrate_profile(energy, q, kind.span, 1e-12));
      const auto canonical = std::make_shared<PlaneCurve>(reconstruct_curve(*profile));
      const double root_d = std::sqrt(q);
      ref.closed_form = false;
      ref.exact = [=](double s) {
        const ProfileSample sample = profile_at(*profile, s);
        return CurvatureJet{sample.kappa, sample.kappa_s, el_kappa_ss(energy, sample.kappa, sample.kappa_s)};
      };
      fill_open(ref, kind.span, n_samples, [=](double s) {
        const ProfileSample sample = profile_at(*profile, s);
        const EnergyJet jet = evaluate(energy, sample.kappa);
        const Vec2 tangent = normalized(Vec2{sample.kappa * jet.dP - jet.P, -jet.ddP * sample.kappa_s});
        return Frame{{hermite_point(*canonical, s).x, -jet.dP / root_d}, tangent};
      });
      break;
    }
    case ReferenceShape::Circle: {
      ref.exact = [=](double) { return CurvatureJet{1.0 / q, 0.0, 0.0}; };
      PlaneCurve& curve = ref.curve;
      curve.boundary = Boundary::Closed;
      curve.period = 2.0 * std::numbers::pi * q;
      for (std::size_t i = 0; i < n_samples; ++i) {
        const double theta = 2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(n_samples);
        const Vec2 radial{std::cos(theta), std::sin(theta)};
        curve.points.push_back(q * radial);
        curve.tangents.push_back(rotate_ccw(radial));
        curve.normals.push_back(-radial);
        curve.kappas.push_back(1.0 / q);
        curve.arc.push_back(q * theta);
      }
      break;
    }
  }
  return ref;
}

std::optional<DictionaryEnergy> dictionary_energy(const ReferenceKind& kind) {
  const double q = kind.parameter;
  switch (kind.shape) {
    case ReferenceShape::GrimReaper:
      return DictionaryEnergy{CurvatureEnergy::entropy(0.0), q};
    case ReferenceShape::Catenary:
      return DictionaryEnergy{CurvatureEnergy::power(0.5, 0.0), 0.25 / q};
    case ReferenceShape::Cycloid:
      return DictionaryEnergy{CurvatureEnergy::power(-1.0, 0.0), 64.0 * q * q};
    case ReferenceShape::Parabola:
      return DictionaryEnergy{CurvatureEnergy::power(1.0 / 3.0, 0.0), 4.0 / 9.0 * std::pow(2.0 * q, -2.0 / 3.0)};
    case ReferenceShape::Elastica:
      return DictionaryEnergy{CurvatureEnergy::power(2.0, 0.0), q};
    case ReferenceShape::Circle:
    case ReferenceShape::Line:
      break;
  }
  return std::nullopt;
}

}  // namespace curveflow

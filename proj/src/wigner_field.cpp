#include "phasespace/wigner_field.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <utility>

#include "phasespace/errors.hpp"

namespace phasespace {

namespace {

double envelope_exponent(std::span<const double> point, std::span<const double> scales) {
  double exponent = 0.0;
  for (std::size_t a = 0; a < point.size(); ++a) {
    const double u = point[a] / scales[a];
    exponent += u * u;
  }
  return exponent;
}

std::vector<double> oscillator_scales(int mode_count, const OscillatorParams& params) {
  const double lambda = params.stiffness();
  const double q_scale = std::sqrt(params.hbar / lambda);
  const double p_scale = std::sqrt(params.hbar * lambda);
  std::vector<double> scales;
  for (int mode = 0; mode < mode_count; ++mode) {
    scales.push_back(q_scale);
    scales.push_back(p_scale);
  }
  return scales;
}

PhasePoint as_phase_point(std::span<const double> x) { return {x[0], x[1], x[2], x[3]}; }

}  // namespace

WignerField::WignerField(int mode_count, double hbar, std::vector<double> envelope_scales,
                         Evaluator evaluator)
    : mode_count_(mode_count),
      hbar_(hbar),
      scales_(std::move(envelope_scales)),
      evaluator_(std::move(evaluator)) {
  if (mode_count != 1 && mode_count != 2) {
    throw InvalidArgument("WignerField: mode count must be 1 or 2");
  }
  if (!(hbar > 0.0)) throw InvalidArgument("WignerField: hbar must be positive");
  if (static_cast<int>(scales_.size()) != dimension()) {
    throw InvalidArgument("WignerField: one envelope scale per phase-space axis is required");
  }
  for (double s : scales_) {
    if (!(s > 0.0) || !std::isfinite(s)) {
      throw InvalidArgument("WignerField: envelope scales must be positive");
    }
  }
  if (!evaluator_) throw InvalidArgument("WignerField: empty evaluator");
}

double WignerField::operator()(double q, double p) const {
  if (mode_count_ != 1) throw InvalidArgument("WignerField: (q, p) evaluation needs one mode");
  const std::array<double, 2> point{q, p};
  return evaluator_(point);
}

double WignerField::integral(const QuadratureRule& rule) const {
  return integrate_hermite(rule, scales_, [this](std::span<const double> x) {
    return evaluator_(x) * std::exp(envelope_exponent(x, scales_));
  });
}

double WignerField::squared_integral(const QuadratureRule& rule) const {
  std::vector<double> narrow(scales_);
  for (double& s : narrow) s /= std::sqrt(2.0);
  return integrate_hermite(rule, narrow, [this](std::span<const double> x) {
    const double value = evaluator_(x) * std::exp(envelope_exponent(x, scales_));
    return value * value;
  });
}

double WignerField::weighted_integral(const QuadratureRule& rule, const Evaluator& g) const {
  return integrate_hermite(rule, scales_, [this, &g](std::span<const double> x) {
    return evaluator_(x) * std::exp(envelope_exponent(x, scales_)) * g(x);
  });
}

WignerField fock_pair_field_at_angle(const FockPairState& state, double theta) {
  return WignerField(2, state.params().hbar, oscillator_scales(2, state.params()),
                     [state, theta](std::span<const double> x) {
                       return evolved_wigner_at_angle(state, as_phase_point(x), theta);
                     });
}

WignerField fock_pair_field(const FockPairState& state, double t) {
  return fock_pair_field_at_angle(state, state.angle(t));
}

WignerField stationary_field(int n1, int n2, const OscillatorParams& params) {
  params.validate();
  return WignerField(2, params.hbar, oscillator_scales(2, params),
                     [n1, n2, params](std::span<const double> x) {
                       return stationary_wigner(n1, n2, as_phase_point(x), params);
                     });
}

WignerField fock_marginal_field(const FockPairState& state, double theta, Mode mode,
                                QuadratureRule rule) {
  // Validate the rule once up front rather than on the first evaluation.
  (void)marginal_wigner_at_angle(state, theta, mode, 0.0, 0.0, rule);
  return WignerField(1, state.params().hbar, oscillator_scales(1, state.params()),
                     [state, theta, mode, rule = std::move(rule)](std::span<const double> x) {
                       return marginal_wigner_at_angle(state, theta, mode, x[0], x[1], rule);
                     });
}

WignerField fock_mixture_field(std::vector<double> populations, const OscillatorParams& params) {
  params.validate();
  if (populations.empty()) throw InvalidArgument("fock_mixture_field: no populations");
  return WignerField(
      1, params.hbar, oscillator_scales(1, params),
      [populations = std::move(populations), params](std::span<const double> x) {
        const double lambda = params.stiffness();
        const double u = 2.0 * (lambda * x[0] * x[0] + x[1] * x[1] / lambda) / params.hbar;
        // Laguerre recurrence shared across all n.
        double previous = 1.0;
        double current = 1.0 - u;
        double sum = populations[0];
        double sign = -1.0;
        for (std::size_t n = 1; n < populations.size(); ++n) {
          sum += sign * populations[n] * current;
          const double next = ((2.0 * n + 1.0 - u) * current - n * previous) / (n + 1.0);
          previous = current;
          current = next;
          sign = -sign;
        }
        return std::exp(-0.5 * u) / (std::numbers::pi * params.hbar) * sum;
      });
}

WignerField marginalize(const WignerField& field, Mode keep, QuadratureRule rule) {
  if (field.mode_count() != 2) throw InvalidArgument("marginalize: two-mode field required");
  if (rule.kind != QuadratureKind::gauss_hermite) {
    throw InvalidArgument("marginalize: a Gauss-Hermite rule is required");
  }
  const auto all = field.envelope_scales();
  const std::size_t kept = keep == Mode::first ? 0 : 2;
  const std::size_t other = 2 - kept;
  std::vector<double> kept_scales{all[kept], all[kept + 1]};
  std::vector<double> other_scales{all[other], all[other + 1]};
  return WignerField(
      1, field.hbar(), kept_scales,
      [field, kept, other, other_scales, rule = std::move(rule)](std::span<const double> x) {
        std::array<double, 4> point{};
        point[kept] = x[0];
        point[kept + 1] = x[1];
        return integrate_hermite(rule, other_scales, [&](std::span<const double> y) {
          point[other] = y[0];
          point[other + 1] = y[1];
          return field(point) * std::exp(envelope_exponent(y, other_scales));
        });
      });
}

}  // namespace phasespace

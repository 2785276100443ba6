#include "phasespace/fock_dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "phasespace/errors.hpp"

namespace phasespace {

namespace {

constexpr double kPi = std::numbers::pi;

double sign_of_parity(int n) { return n % 2 == 0 ? 1.0 : -1.0; }

double radius_squared(double q, double p, const OscillatorParams& params) {
  const double lambda = params.stiffness();
  return lambda * q * q + p * p / lambda;
}

void check_finite(const PhasePoint& point) {
  if (!std::isfinite(point.q1) || !std::isfinite(point.p1) || !std::isfinite(point.q2) ||
      !std::isfinite(point.p2)) {
    throw InvalidArgument("phase-space point has non-finite coordinates");
  }
}

void check_quantum_numbers(int n1, int n2) {
  if (n1 < 0 || n2 < 0) {
    throw InvalidArgument("quantum numbers must be nonnegative, got (" + std::to_string(n1) +
                          ", " + std::to_string(n2) + ")");
  }
}

// Point pulled back by the inter-mode rotation: the t = 0 coordinates that
// flow into `point` after rotating by theta.
PhasePoint rotate_back(const PhasePoint& point, double theta) {
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  return {point.q1 * c - point.q2 * s, point.p1 * c - point.p2 * s,
          point.q1 * s + point.q2 * c, point.p1 * s + point.p2 * c};
}

void check_hermite_rule(const QuadratureRule& rule, int required, const char* what) {
  if (rule.kind != QuadratureKind::gauss_hermite) {
    throw InvalidArgument(std::string(what) + ": a Gauss-Hermite rule is required");
  }
  if (static_cast<int>(rule.size()) < required) {
    throw InsufficientNodesError(std::string(what) + ": rule has " +
                                 std::to_string(rule.size()) + " nodes, at least " +
                                 std::to_string(required) + " are needed for exactness");
  }
}

// Sum over the other mode's Gauss-Hermite nodes of the evolved polynomial,
// i.e. pi * Q where marginal = e^{-r^2/hbar} Q / (pi hbar).
double marginal_polynomial_sum(const FockPairState& state, double theta, Mode mode, double q,
                               double p, const QuadratureRule& rule) {
  const OscillatorParams& params = state.params();
  const double lambda = params.stiffness();
  const double q_scale = std::sqrt(params.hbar / lambda);
  const double p_scale = std::sqrt(params.hbar * lambda);
  double sum = 0.0;
  for (std::size_t i = 0; i < rule.size(); ++i) {
    const double q_other = q_scale * rule.nodes[i];
    for (std::size_t j = 0; j < rule.size(); ++j) {
      const double p_other = p_scale * rule.nodes[j];
      const PhasePoint point = mode == Mode::first ? PhasePoint{q, p, q_other, p_other}
                                                   : PhasePoint{q_other, p_other, q, p};
      sum += rule.weights[i] * rule.weights[j] * evolved_polynomial(state, point, theta);
    }
  }
  return sum;
}

}  // namespace

double OscillatorParams::alpha() const { return 1.0 / std::sqrt(2.0 * mass); }

double OscillatorParams::beta() const { return std::sqrt(mass * omega * omega / 2.0); }

void OscillatorParams::validate() const {
  if (!(mass > 0.0) || !std::isfinite(mass)) throw InvalidArgument("mass must be positive");
  if (!(omega > 0.0) || !std::isfinite(omega)) throw InvalidArgument("omega must be positive");
  if (!(hbar > 0.0) || !std::isfinite(hbar)) throw InvalidArgument("hbar must be positive");
  if (!std::isfinite(coupling)) throw InvalidArgument("coupling must be finite");
}

FockPairState::FockPairState(int k, int l, OscillatorParams params)
    : k_(k), l_(l), params_(params) {
  check_quantum_numbers(k, l);
  params_.validate();
}

double energy(int n1, int n2, const OscillatorParams& params) {
  check_quantum_numbers(n1, n2);
  params.validate();
  return 2.0 * params.hbar * params.alpha() * params.beta() * (n1 + n2 + 1) +
         params.hbar * params.coupling * (n1 - n2);
}

double stationary_wigner(int n1, int n2, const PhasePoint& point, const OscillatorParams& params) {
  check_quantum_numbers(n1, n2);
  check_finite(point);
  params.validate();
  const double hbar = params.hbar;
  const double r2 = radius_squared(point.q1, point.p1, params) +
                    radius_squared(point.q2, point.p2, params);
  const double angular = point.p1 * point.q2 - point.p2 * point.q1;
  // n1 counts quanta whose energy rises with gamma, n2 those whose energy falls.
  const double omega_first = r2 + 2.0 * angular;
  const double omega_second = r2 - 2.0 * angular;
  return sign_of_parity(n1 + n2) / (kPi * kPi * hbar * hbar) * std::exp(-r2 / hbar) *
         laguerre(n1, omega_first / hbar) * laguerre(n2, omega_second / hbar);
}

PhasePoint classical_trajectory(const PhasePoint& initial, double t, const OscillatorParams& params) {
  check_finite(initial);
  if (!std::isfinite(t)) throw InvalidArgument("classical_trajectory: non-finite time");
  params.validate();
  const double lambda = params.stiffness();
  const double cw = std::cos(params.omega * t);
  const double sw = std::sin(params.omega * t);
  // Free rotation within each mode's plane.
  const double q1 = initial.q1 * cw + initial.p1 / lambda * sw;
  const double p1 = initial.p1 * cw - initial.q1 * lambda * sw;
  const double q2 = initial.q2 * cw + initial.p2 / lambda * sw;
  const double p2 = initial.p2 * cw - initial.q2 * lambda * sw;
  // The coupling rotates (q1, q2) and (p1, p2) jointly; it commutes with the above.
  const double cg = std::cos(params.coupling * t);
  const double sg = std::sin(params.coupling * t);
  return {q1 * cg + q2 * sg, p1 * cg + p2 * sg, q2 * cg - q1 * sg, p2 * cg - p1 * sg};
}

double fock_wigner(int n, double q, double p, const OscillatorParams& params) {
  const double hbar = params.hbar;
  const double r2 = radius_squared(q, p, params);
  return sign_of_parity(n) / (kPi * hbar) * std::exp(-r2 / hbar) * laguerre(n, 2.0 * r2 / hbar);
}

double evolved_polynomial(const FockPairState& state, const PhasePoint& point, double theta) {
  const OscillatorParams& params = state.params();
  const PhasePoint initial = rotate_back(point, theta);
  const double two_over_hbar = 2.0 / params.hbar;
  return sign_of_parity(state.total()) *
         laguerre(state.k(), two_over_hbar * radius_squared(initial.q1, initial.p1, params)) *
         laguerre(state.l(), two_over_hbar * radius_squared(initial.q2, initial.p2, params));
}

double evolved_wigner_at_angle(const FockPairState& state, const PhasePoint& point, double theta) {
  check_finite(point);
  if (!std::isfinite(theta)) throw InvalidArgument("evolved_wigner: non-finite time");
  const OscillatorParams& params = state.params();
  const double hbar = params.hbar;
  // r1^2 + r2^2 is invariant under the inter-mode rotation.
  const double r2 = radius_squared(point.q1, point.p1, params) +
                    radius_squared(point.q2, point.p2, params);
  return std::exp(-r2 / hbar) / (kPi * kPi * hbar * hbar) *
         evolved_polynomial(state, point, theta);
}

double evolved_wigner(const FockPairState& state, const PhasePoint& point, double t) {
  return evolved_wigner_at_angle(state, point, state.angle(t));
}

double marginal_wigner_at_angle(const FockPairState& state, double theta, Mode mode, double q,
                                double p, const QuadratureRule& rule) {
  check_hermite_rule(rule, state.total() + 2, "marginal_wigner");
  if (!std::isfinite(q) || !std::isfinite(p) || !std::isfinite(theta)) {
    throw InvalidArgument("marginal_wigner: non-finite input");
  }
  const double hbar = state.params().hbar;
  const double sum = marginal_polynomial_sum(state, theta, mode, q, p, rule);
  return std::exp(-radius_squared(q, p, state.params()) / hbar) / (kPi * kPi * hbar) * sum;
}

double marginal_wigner(const FockPairState& state, double t, Mode mode, double q, double p,
                       const QuadratureRule& rule) {
  return marginal_wigner_at_angle(state, state.angle(t), mode, q, p, rule);
}

std::vector<double> reduced_number_distribution(const FockPairState& state, double theta,
                                                Mode mode, const QuadratureRule& rule) {
  const int total = state.total();
  check_hermite_rule(rule, std::max(total + 2, 2 * total + 1), "reduced_number_distribution");
  const OscillatorParams& params = state.params();
  const double lambda = params.stiffness();
  const double q_scale = std::sqrt(params.hbar / (2.0 * lambda));
  const double p_scale = std::sqrt(params.hbar * lambda / 2.0);

  std::vector<double> populations(total + 1, 0.0);
  for (std::size_t i = 0; i < rule.size(); ++i) {
    for (std::size_t j = 0; j < rule.size(); ++j) {
      const double x = rule.nodes[i];
      const double y = rule.nodes[j];
      const double weight = rule.weights[i] * rule.weights[j];
      const double marginal_poly =
          marginal_polynomial_sum(state, theta, mode, q_scale * x, p_scale * y, rule) / kPi;
      for (int n = 0; n <= total; ++n) {
        populations[n] += weight * marginal_poly * sign_of_parity(n) * laguerre(n, x * x + y * y);
      }
    }
  }
  for (double& population : populations) population /= kPi;
  return populations;
}

int default_hermite_nodes(int k, int l) {
  check_quantum_numbers(k, l);
  return std::max(8, 2 * (k + l) + 2);
}

}  // namespace phasespace

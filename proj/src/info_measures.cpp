#include "phasespace/info_measures.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include <unsupported/Eigen/Polynomials>

#include "phasespace/errors.hpp"

namespace phasespace {

namespace {

constexpr double kBoundSlack = 1e-9;

}  // namespace

double linear_entropy(const WignerField& field, const QuadratureRule& rule) {
  const double cell = 2.0 * std::numbers::pi * field.hbar();
  const double measure = field.mode_count() == 1 ? cell : cell * cell;
  const double entropy = 1.0 - measure * field.squared_integral(rule);
  if (entropy < -kBoundSlack || entropy > 1.0 + kBoundSlack) {
    throw ConvergenceError("linear entropy " + std::to_string(entropy) +
                           " outside [0, 1]; the quadrature rule is too small");
  }
  return std::clamp(entropy, 0.0, 1.0);
}

double mutual_information(const WignerField& field, const QuadratureRule& rule) {
  if (field.mode_count() != 2) throw InvalidArgument("mutual_information: two-mode field required");
  return linear_entropy(marginalize(field, Mode::first, rule), rule) +
         linear_entropy(marginalize(field, Mode::second, rule), rule) -
         linear_entropy(field, rule);
}

double mutual_information_at_angle(const FockPairState& state, double theta,
                                   const QuadratureRule& rule) {
  return linear_entropy(fock_marginal_field(state, theta, Mode::first, rule), rule) +
         linear_entropy(fock_marginal_field(state, theta, Mode::second, rule), rule) -
         linear_entropy(fock_pair_field_at_angle(state, theta), rule);
}

double mutual_information(const FockPairState& state, double t, const QuadratureRule& rule) {
  return mutual_information_at_angle(state, state.angle(t), rule);
}

NegativityResult negativity(const WignerField& field, const PhaseSpaceGrid& grid,
                            const GridConvergence& convergence) {
  if (field.mode_count() != 1) throw InvalidArgument("negativity: single-mode field required");
  if (grid.dimension() != 2) throw InvalidArgument("negativity: two-dimensional grid required");

  const auto result = converge_on_grid(grid, convergence, [&field](const PhaseSpaceGrid& g) {
    std::vector<double> samples = sample_grid(g, [&field](std::span<const double> x) {
      return field(x);
    });
    const double signed_integral = integrate_grid(g, samples);
    for (double& s : samples) s = std::abs(s);
    const double absolute_integral = integrate_grid(g, samples);
    return std::pair{absolute_integral - signed_integral, absolute_integral};
  });

  double value = result.value;
  if (value <= 0.0 && value >= -kBoundSlack) value = 0.0;
  return {value, result.points, result.last_change};
}

double fock_mixture_negativity(const std::vector<double>& populations) {
  if (populations.empty()) throw InvalidArgument("fock_mixture_negativity: no populations");
  const std::size_t degree = populations.size() - 1;

  // Power-basis coefficients of Q(v) = sum_n P_n (-1)^n L_n(2v).
  std::vector<double> q(degree + 1, 0.0);
  for (std::size_t n = 0; n <= degree; ++n) {
    double term = n % 2 == 0 ? populations[n] : -populations[n];
    for (std::size_t j = 0; j <= n; ++j) {
      q[j] += term;
      // C(n, j+1) 2^{j+1} / (j+1)! from C(n, j) 2^j / j!, with the (-1)^j sign.
      term *= -2.0 * static_cast<double>(n - j) / ((j + 1.0) * (j + 1.0));
    }
  }
  double magnitude = 0.0;
  for (double c : q) magnitude = std::max(magnitude, std::abs(c));
  while (q.size() > 1 && std::abs(q.back()) <= 1e-14 * magnitude) q.pop_back();

  auto evaluate = [](const std::vector<double>& c, double v) {
    double sum = 0.0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) sum = sum * v + *it;
    return sum;
  };
  // R = Q + Q' + Q'' + ..., so that d/dv (-e^{-v} R) = e^{-v} Q.
  std::vector<double> r(q.size(), 0.0);
  {
    std::vector<double> derivative = q;
    while (!derivative.empty()) {
      for (std::size_t j = 0; j < derivative.size(); ++j) r[j] += derivative[j];
      std::vector<double> next;
      for (std::size_t j = 1; j < derivative.size(); ++j) next.push_back(j * derivative[j]);
      derivative = std::move(next);
    }
  }
  auto primitive = [&](double v) { return -std::exp(-v) * evaluate(r, v); };

  std::vector<double> breaks{0.0};
  if (q.size() > 1) {
    Eigen::PolynomialSolver<double, Eigen::Dynamic> solver(
        Eigen::Map<const Eigen::VectorXd>(q.data(), static_cast<Eigen::Index>(q.size())));
    std::vector<double> roots;
    solver.realRoots(roots, 1e-6);
    for (double v : roots) {
      for (int iter = 0; iter < 4; ++iter) {
        double value = 0.0;
        double slope = 0.0;
        for (auto it = q.rbegin(); it != q.rend(); ++it) {
          slope = slope * v + value;
          value = value * v + *it;
        }
        if (slope == 0.0) break;
        v -= value / slope;
      }
      if (v > 0.0 && std::isfinite(v)) breaks.push_back(v);
    }
  }
  std::sort(breaks.begin(), breaks.end());
  breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());

  double negative = 0.0;
  for (std::size_t i = 0; i < breaks.size(); ++i) {
    const double a = breaks[i];
    const bool last = i + 1 == breaks.size();
    const double probe = last ? a + 1.0 : 0.5 * (a + breaks[i + 1]);
    if (evaluate(q, probe) >= 0.0) continue;
    const double upper = last ? 0.0 : primitive(breaks[i + 1]);
    negative += upper - primitive(a);
  }
  const double value = -2.0 * negative;
  return value <= 0.0 && value >= -kBoundSlack ? 0.0 : value;
}

double negativity_extent(const FockPairState& state) {
  const OscillatorParams& params = state.params();
  const double natural = 6.0 * std::sqrt(params.hbar * (2.0 * state.total() + 1.0));
  const double lambda = params.stiffness();
  return natural * std::max(1.0 / std::sqrt(lambda), std::sqrt(lambda));
}

double expectation_value(const WignerField& field, const WignerField::Evaluator& observable,
                         const QuadratureRule& rule) {
  return field.weighted_integral(rule, observable);
}

WignerField::Evaluator hamiltonian_symbol(const OscillatorParams& params) {
  params.validate();
  const double a2 = params.alpha() * params.alpha();
  const double b2 = params.beta() * params.beta();
  const double gamma = params.coupling;
  return [a2, b2, gamma](std::span<const double> x) {
    if (x.size() != 4) throw InvalidArgument("hamiltonian_symbol: two-mode point required");
    return a2 * (x[1] * x[1] + x[3] * x[3]) + b2 * (x[0] * x[0] + x[2] * x[2]) +
           gamma * (x[1] * x[2] - x[3] * x[0]);
  };
}

}  // namespace phasespace

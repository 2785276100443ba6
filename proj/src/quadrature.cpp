#include "phasespace/quadrature.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <numbers>
#include <string>

#include "phasespace/errors.hpp"

namespace phasespace {

double laguerre(int n, double x) {
  if (n < 0) throw InvalidArgument("laguerre: negative degree " + std::to_string(n));
  if (!std::isfinite(x)) throw InvalidArgument("laguerre: non-finite argument");
  if (n == 0) return 1.0;
  double previous = 1.0;
  double current = 1.0 - x;
  for (int j = 1; j < n; ++j) {
    const double next = ((2.0 * j + 1.0 - x) * current - j * previous) / (j + 1.0);
    previous = current;
    current = next;
  }
  return current;
}

namespace {

// Orthonormal Hermite polynomial of degree n and its derivative.
std::pair<double, double> orthonormal_hermite(int n, double x) {
  double previous = 0.0;
  double current = 1.0 / std::pow(std::numbers::pi, 0.25);
  for (int j = 1; j <= n; ++j) {
    const double next =
        x * std::sqrt(2.0 / j) * current - std::sqrt((j - 1.0) / j) * previous;
    previous = current;
    current = next;
  }
  return {current, std::sqrt(2.0 * n) * previous};
}

}  // namespace

QuadratureRule gauss_hermite(int n) {
  if (n < 1 || n > 128) {
    throw InvalidArgument("gauss_hermite: node count must be in [1, 128], got " +
                          std::to_string(n));
  }
  QuadratureRule rule;
  rule.kind = QuadratureKind::gauss_hermite;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  if (n == 1) {
    rule.nodes[0] = 0.0;
    rule.weights[0] = std::sqrt(std::numbers::pi);
    return rule;
  }

  Eigen::VectorXd diagonal = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd off_diagonal(n - 1);
  for (int j = 1; j < n; ++j) off_diagonal[j - 1] = std::sqrt(0.5 * j);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(diagonal, off_diagonal, Eigen::EigenvaluesOnly);
  const Eigen::VectorXd& eigenvalues = solver.eigenvalues();

  for (int i = 0; i < n; ++i) {
    double x = eigenvalues[i];
    for (int iteration = 0; iteration < 8; ++iteration) {
      const auto [value, derivative] = orthonormal_hermite(n, x);
      const double dx = value / derivative;
      x -= dx;
      if (std::abs(dx) <= 1e-15 * std::max(1.0, std::abs(x))) break;
    }
    const double derivative = orthonormal_hermite(n, x).second;
    rule.nodes[i] = x;
    rule.weights[i] = 2.0 / (derivative * derivative);
  }
  // The rule is symmetric; enforce it exactly so odd moments cancel.
  for (int i = 0; i < n / 2; ++i) {
    const double x = 0.5 * (rule.nodes[n - 1 - i] - rule.nodes[i]);
    const double w = 0.5 * (rule.weights[n - 1 - i] + rule.weights[i]);
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    rule.weights[i] = rule.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
  return rule;
}

double integrate_hermite(const QuadratureRule& rule, std::span<const double> scales,
                         const std::function<double(std::span<const double>)>& g) {
  const std::size_t dimension = scales.size();
  const std::size_t n = rule.size();
  if (dimension == 0 || n == 0) throw InvalidArgument("integrate_hermite: empty rule or dimension");

  std::vector<std::size_t> index(dimension, 0);
  std::vector<double> point(dimension);
  double sum = 0.0;
  while (true) {
    double weight = 1.0;
    for (std::size_t a = 0; a < dimension; ++a) {
      point[a] = scales[a] * rule.nodes[index[a]];
      weight *= rule.weights[index[a]];
    }
    sum += weight * g(point);

    std::size_t axis = dimension;
    while (axis > 0) {
      --axis;
      if (++index[axis] < n) break;
      index[axis] = 0;
      if (axis == 0) {
        double jacobian = 1.0;
        for (double s : scales) jacobian *= s;
        return jacobian * sum;
      }
    }
  }
}

PhaseSpaceGrid::PhaseSpaceGrid(int dimension, double extent, int points)
    : dimension_(dimension), extent_(extent), points_(points) {
  if (dimension < 1 || dimension > 4) {
    throw InvalidArgument("PhaseSpaceGrid: dimension must be in [1, 4]");
  }
  if (!(extent > 0.0) || !std::isfinite(extent)) {
    throw InvalidArgument("PhaseSpaceGrid: extent must be positive and finite");
  }
  if (points < 3 || points % 2 == 0) {
    throw InvalidArgument("PhaseSpaceGrid: point count must be odd and >= 3, got " +
                          std::to_string(points));
  }
}

double PhaseSpaceGrid::cell_volume() const { return std::pow(spacing(), dimension_); }

std::size_t PhaseSpaceGrid::size() const {
  std::size_t total = 1;
  for (int a = 0; a < dimension_; ++a) total *= static_cast<std::size_t>(points_);
  return total;
}

std::vector<double> sample_grid(const PhaseSpaceGrid& grid,
                                const std::function<double(std::span<const double>)>& f) {
  const int d = grid.dimension();
  const int m = grid.points();
  std::vector<double> axis(m);
  // Mirror-symmetric axis with an exact zero at the centre node.
  for (int i = 0; i < m / 2; ++i) {
    axis[i] = grid.coordinate(i);
    axis[m - 1 - i] = -axis[i];
  }
  axis[m / 2] = 0.0;

  std::vector<double> samples;
  samples.reserve(grid.size());
  std::vector<int> index(d, 0);
  std::vector<double> point(d);
  for (std::size_t flat = 0; flat < grid.size(); ++flat) {
    for (int a = 0; a < d; ++a) point[a] = axis[index[a]];
    samples.push_back(f(point));
    for (int a = d - 1; a >= 0; --a) {
      if (++index[a] < m) break;
      index[a] = 0;
    }
  }
  return samples;
}

double integrate_grid(const PhaseSpaceGrid& grid, std::span<const double> samples) {
  if (samples.size() != grid.size()) {
    throw InvalidArgument("integrate_grid: " + std::to_string(samples.size()) +
                          " samples for a grid of " + std::to_string(grid.size()) + " nodes");
  }
  const int d = grid.dimension();
  const int m = grid.points();
  std::vector<int> index(d, 0);
  double sum = 0.0;
  for (double sample : samples) {
    double weight = 1.0;
    for (int a = 0; a < d; ++a) {
      if (index[a] == 0 || index[a] == m - 1) weight *= 0.5;
    }
    sum += weight * sample;
    for (int a = d - 1; a >= 0; --a) {
      if (++index[a] < m) break;
      index[a] = 0;
    }
  }
  return sum * grid.cell_volume();
}

GridResult converge_on_grid(
    const PhaseSpaceGrid& initial, const GridConvergence& options,
    const std::function<std::pair<double, double>(const PhaseSpaceGrid&)>& functional) {
  if (initial.points() > options.max_points) {
    throw InvalidArgument("converge_on_grid: initial grid already exceeds the point cap");
  }
  PhaseSpaceGrid grid = initial;
  double previous = functional(grid).first;
  double change = 0.0;
  while (true) {
    if (grid.refined().points() > options.max_points) {
      throw ConvergenceError("grid integral did not converge to relative tolerance " +
                             std::to_string(options.relative_tolerance) + " within " +
                             std::to_string(options.max_points) +
                             " points per axis (last change " + std::to_string(change) + ")");
    }
    grid = grid.refined();
    const auto [value, new_scale] = functional(grid);
    change = std::abs(value - previous);
    if (change < options.relative_tolerance * std::max(std::abs(new_scale), 1.0)) {
      return {value, grid.points(), change};
    }
    previous = value;
  }
}

}  // namespace phasespace

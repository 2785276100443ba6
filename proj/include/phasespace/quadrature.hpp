#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace phasespace {

enum class QuadratureKind { gauss_hermite, uniform_trapezoid };

/// Nodes and weights of a one-dimensional rule. Nodes are strictly increasing,
/// weights strictly positive.
struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
  QuadratureKind kind = QuadratureKind::gauss_hermite;

  std::size_t size() const { return nodes.size(); }
};

/// Laguerre polynomial L_n(x) by the three-term recurrence.
/// Throws InvalidArgument for n < 0 or non-finite x.
double laguerre(int n, double x);

/// Gauss-Hermite rule for the weight exp(-x^2) on the real line, 1 <= n <= 128.
///
/// Nodes start from the eigenvalues of the symmetric Jacobi matrix and are
/// polished by Newton iteration on the orthonormal Hermite recurrence; weights
/// come from the derivative of the orthonormal polynomial, which keeps them
/// accurate in a relative sense even where they are tiny.
QuadratureRule gauss_hermite(int n);

/// Largest polynomial degree a Gauss-Hermite rule integrates exactly.
inline int exact_degree(const QuadratureRule& rule) {
  return 2 * static_cast<int>(rule.size()) - 1;
}

/// Tensor-product Gauss-Hermite integration of exp(-sum_a (x_a/s_a)^2) * g(x)
/// over R^d, d = scales.size(). Exact whenever g is a polynomial of degree
/// <= 2n-1 in every coordinate.
double integrate_hermite(const QuadratureRule& rule, std::span<const double> scales,
                         const std::function<double(std::span<const double>)>& g);

/// Uniform tensor grid on [-L, L]^d with M points per axis (M odd, so the
/// origin is a node).
class PhaseSpaceGrid {
 public:
  PhaseSpaceGrid(int dimension, double extent, int points);

  int dimension() const { return dimension_; }
  double extent() const { return extent_; }
  int points() const { return points_; }
  double spacing() const { return 2.0 * extent_ / (points_ - 1); }
  double cell_volume() const;
  double coordinate(int index) const { return -extent_ + index * spacing(); }
  std::size_t size() const;

  /// Next grid in the doubling sequence: M -> 2M - 1, old nodes retained.
  PhaseSpaceGrid refined() const { return PhaseSpaceGrid(dimension_, extent_, 2 * points_ - 1); }

 private:
  int dimension_;
  double extent_;
  int points_;
};

/// Samples f at every grid node. Row-major: the last coordinate varies fastest.
std::vector<double> sample_grid(const PhaseSpaceGrid& grid,
                                const std::function<double(std::span<const double>)>& f);

/// Trapezoid-rule integral of row-major samples over the grid.
/// Throws InvalidArgument when the sample count does not match the grid.
double integrate_grid(const PhaseSpaceGrid& grid, std::span<const double> samples);

/// Grid-doubling controls for integrands with kinks (|W|).
struct GridConvergence {
  int max_points = 1025;
  /// Successive results must differ by less than this, relative to the
  /// supplied scale.
  double relative_tolerance = 1e-4;
};

struct GridResult {
  double value = 0.0;
  int points = 0;
  double last_change = 0.0;
};

/// Evaluates `functional` on grid, grid.refined(), ... until two successive
/// values differ by less than tolerance * max(|scale|, 1), where `functional`
/// returns {value, scale}. Throws ConvergenceError when max_points is
/// exceeded first.
GridResult converge_on_grid(
    const PhaseSpaceGrid& initial, const GridConvergence& options,
    const std::function<std::pair<double, double>(const PhaseSpaceGrid&)>& functional);

}  // namespace phasespace

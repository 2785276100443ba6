#pragma once

#include <functional>
#include <span>
#include <vector>

#include "phasespace/fock_dynamics.hpp"
#include "phasespace/quadrature.hpp"

namespace phasespace {

/// A Wigner function over the phase space of one or two modes, coordinates
/// ordered (q1, p1[, q2, p2]).
///
/// Besides the evaluator, a field carries per-axis envelope lengths s_a: the
/// field is expected to behave like exp(-sum_a (x_a/s_a)^2) times a slowly
/// varying factor. Gauss-Hermite integration is scaled by these lengths and
/// is exact when that factor is a polynomial.
class WignerField {
 public:
  using Evaluator = std::function<double(std::span<const double>)>;

  WignerField(int mode_count, double hbar, std::vector<double> envelope_scales,
              Evaluator evaluator);

  int mode_count() const { return mode_count_; }
  int dimension() const { return 2 * mode_count_; }
  double hbar() const { return hbar_; }
  std::span<const double> envelope_scales() const { return scales_; }

  double operator()(std::span<const double> point) const { return evaluator_(point); }
  double operator()(double q, double p) const;

  /// Integral over phase space with the given Gauss-Hermite rule.
  double integral(const QuadratureRule& rule) const;

  /// Integral of field^2 (purity without the (2 pi hbar)^N prefactor).
  double squared_integral(const QuadratureRule& rule) const;

  /// Integral of field * g.
  double weighted_integral(const QuadratureRule& rule, const Evaluator& g) const;

 private:
  int mode_count_;
  double hbar_;
  std::vector<double> scales_;
  Evaluator evaluator_;
};

/// Evolved product Fock state as a two-mode field.
WignerField fock_pair_field(const FockPairState& state, double t);
WignerField fock_pair_field_at_angle(const FockPairState& state, double theta);

/// Eigenstate (n1, n2) of the coupled Hamiltonian as a two-mode field.
WignerField stationary_field(int n1, int n2, const OscillatorParams& params);

/// Reduced field of one mode, each evaluation integrating the other mode
/// with marginal_wigner.
WignerField fock_marginal_field(const FockPairState& state, double theta, Mode mode,
                                QuadratureRule rule);

/// Fock-diagonal single-mode field sum_n populations[n] * W_n.
WignerField fock_mixture_field(std::vector<double> populations, const OscillatorParams& params);

/// Generic reduction of a two-mode field by Gauss-Hermite integration over the
/// other mode's envelope.
WignerField marginalize(const WignerField& field, Mode keep, QuadratureRule rule);

}  // namespace phasespace

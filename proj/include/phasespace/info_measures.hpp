#pragma once

#include <vector>

#include "phasespace/fock_dynamics.hpp"
#include "phasespace/quadrature.hpp"
#include "phasespace/wigner_field.hpp"

namespace phasespace {

/// S = 1 - (2 pi hbar)^N * integral of W^2 for an N-mode field. Results
/// within 1e-9 of [0, 1] are clamped into it; anything further out means the
/// rule is too small and raises ConvergenceError.
double linear_entropy(const WignerField& field, const QuadratureRule& rule);

/// I = S(W1) + S(W2) - S(W), marginals by Gauss-Hermite integration.
double mutual_information(const WignerField& field, const QuadratureRule& rule);

/// Mutual information of the evolved pair state at time t (angle gamma*t).
double mutual_information(const FockPairState& state, double t, const QuadratureRule& rule);
double mutual_information_at_angle(const FockPairState& state, double theta,
                                   const QuadratureRule& rule);

struct NegativityResult {
  double value = 0.0;
  /// Points per axis of the grid that met the tolerance.
  int points = 0;
  double last_change = 0.0;
};

/// delta(W) = integral |W| - integral W of a single-mode field, trapezoid rule,
/// doubling the grid from `grid` until the convergence criterion holds
/// (relative to integral |W|). Values in [-1e-9, 0) are reported as 0.
NegativityResult negativity(const WignerField& field, const PhaseSpaceGrid& grid,
                            const GridConvergence& convergence = {});

/// Negativity of the Fock-diagonal field sum_n populations[n] * W_n, exact.
/// The field is radial; with v = r^2/hbar its integral over a disc annulus
/// is that of e^{-v} Q(v), Q(v) = sum_n P_n (-1)^n L_n(2v), whose
/// antiderivative is -e^{-v} (Q + Q' + Q'' + ...). The negative part is
/// summed between the positive real roots of Q. Independent of hbar and m*omega.
double fock_mixture_negativity(const std::vector<double>& populations);

/// Half-width of the negativity grid for a pair state: 6 sqrt(hbar (2(k+l)+1))
/// in the oscillator's natural units, widened for whichever axis is longer.
double negativity_extent(const FockPairState& state);

/// Integral of W * O over phase space for a normalized field.
double expectation_value(const WignerField& field, const WignerField::Evaluator& observable,
                         const QuadratureRule& rule);

/// Phase-space symbol of the coupled Hamiltonian, coordinates (q1, p1, q2, p2).
WignerField::Evaluator hamiltonian_symbol(const OscillatorParams& params);

}  // namespace phasespace

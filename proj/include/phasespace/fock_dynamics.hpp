#pragma once

#include <vector>

#include "phasespace/quadrature.hpp"

namespace phasespace {

/// Two identical oscillators with a rotational coupling,
///   H = alpha^2 (p1^2 + p2^2) + beta^2 (q1^2 + q2^2) + gamma (p1 q2 - p2 q1),
/// with alpha^2 = 1/(2m) and beta^2 = m omega^2 / 2.
struct OscillatorParams {
  double mass = 1.0;
  double omega = 1.0;
  double hbar = 1.0;
  double coupling = 0.0;

  double alpha() const;
  double beta() const;
  /// beta/alpha = m*omega; the ratio between position and momentum scales.
  double stiffness() const { return mass * omega; }

  /// Throws InvalidArgument unless m, omega, hbar > 0 and coupling is finite.
  void validate() const;
};

struct PhasePoint {
  double q1 = 0.0;
  double p1 = 0.0;
  double q2 = 0.0;
  double p2 = 0.0;
};

enum class Mode { first = 1, second = 2 };

/// Product Fock state |k> (x) |l> at t = 0, carried forward by the coupled
/// Hamiltonian.
class FockPairState {
 public:
  FockPairState(int k, int l, OscillatorParams params);

  int k() const { return k_; }
  int l() const { return l_; }
  int total() const { return k_ + l_; }
  const OscillatorParams& params() const { return params_; }

  /// Inter-mode rotation angle gamma*t.
  double angle(double t) const { return params_.coupling * t; }

 private:
  int k_;
  int l_;
  OscillatorParams params_;
};

/// Eigenvalue E = 2 hbar alpha beta (n1 + n2 + 1) + hbar gamma (n1 - n2).
double energy(int n1, int n2, const OscillatorParams& params);

/// Wigner function of the coupled Hamiltonian's eigenstate (n1, n2).
double stationary_wigner(int n1, int n2, const PhasePoint& point, const OscillatorParams& params);

/// Classical phase-space flow of H after time t.
PhasePoint classical_trajectory(const PhasePoint& initial, double t, const OscillatorParams& params);

/// Single-mode Fock Wigner function (-1)^n/(pi hbar) e^{-r^2/hbar} L_n(2 r^2/hbar),
/// r^2 = m omega q^2 + p^2/(m omega).
double fock_wigner(int n, double q, double p, const OscillatorParams& params);

/// Wigner function of the evolved pair state. Evaluated as the t = 0 product
/// state at the point rotated back by gamma*t in the (mode 1, mode 2) planes;
/// the free rotation at omega is invisible for Fock states and is dropped.
double evolved_wigner(const FockPairState& state, const PhasePoint& point, double t);
double evolved_wigner_at_angle(const FockPairState& state, const PhasePoint& point, double theta);

/// Polynomial factor of the evolved state:
///   W = e^{-(r1^2 + r2^2)/hbar} / (pi hbar)^2 * evolved_polynomial.
double evolved_polynomial(const FockPairState& state, const PhasePoint& point, double theta);

/// Reduced Wigner function of one mode, integrating the other exactly with
/// Gauss-Hermite quadrature. Throws InsufficientNodesError when the rule has
/// fewer than k + l + 2 nodes, and InvalidArgument for a non-Hermite rule.
double marginal_wigner(const FockPairState& state, double t, Mode mode, double q, double p,
                       const QuadratureRule& rule);
double marginal_wigner_at_angle(const FockPairState& state, double theta, Mode mode, double q,
                                double p, const QuadratureRule& rule);

/// Photon-number distribution P_n, n = 0..k+l, of the reduced state of `mode`,
/// from P_n = 2 pi hbar * integral of W_mode * W_n. The reduced states of the
/// pair are diagonal in the Fock basis, so sum_n P_n W_n reproduces the
/// marginal exactly.
std::vector<double> reduced_number_distribution(const FockPairState& state, double theta,
                                                Mode mode, const QuadratureRule& rule);

/// Node count that integrates every pair-state integrand exactly, including
/// squared marginals (degree 4(k+l) against e^{-2r^2/hbar}).
int default_hermite_nodes(int k, int l);

}  // namespace phasespace

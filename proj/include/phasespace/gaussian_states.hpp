#pragma once

#include <Eigen/Dense>
#include <span>
#include <string>

#include "phasespace/fock_dynamics.hpp"
#include "phasespace/wigner_field.hpp"

namespace phasespace {

/// Gaussian state of one or two modes: first moments d = (<q1>, <p1>, ...)
/// and covariance sigma_AB = <AB + BA> - 2<A><B>, so the vacuum has
/// sigma = hbar * identity.
///
/// Fidelity, mean photon number and coherence work on sigma/hbar and
/// d/sqrt(hbar) (shot-noise units, vacuum = identity). The Wigner function
/// exp(-(R-d)^T sigma^{-1} (R-d)/2) / ((2 pi)^N sqrt(det sigma)) written in
/// these coordinates is that of a phase space with Planck constant 2*hbar;
/// gaussian_field() carries that value so purity-type integrals come out right.
class GaussianState {
 public:
  /// Validates shape, symmetry (1e-12 relative), positive definiteness and
  /// physicality: every symplectic eigenvalue of sigma/hbar must be at least
  /// 1 - physicality_tolerance.
  GaussianState(Eigen::VectorXd means, Eigen::MatrixXd covariance, double hbar = 1.0,
                double physicality_tolerance = 1e-9);

  static GaussianState vacuum(int modes, double hbar = 1.0);

  int modes() const { return static_cast<int>(means_.size() / 2); }
  double hbar() const { return hbar_; }
  const Eigen::VectorXd& means() const { return means_; }
  const Eigen::MatrixXd& covariance() const { return covariance_; }

  /// sqrt(det) of the mode's 2x2 block over hbar.
  double local_symplectic_eigenvalue(Mode mode) const;
  /// Smallest symplectic eigenvalue of the full covariance over hbar.
  double min_symplectic_eigenvalue() const;

 private:
  Eigen::VectorXd means_;
  Eigen::MatrixXd covariance_;
  double hbar_;
};

/// Markovian thermal reservoir acting on one mode.
struct ThermalBath {
  double rate = 0.1;   ///< decay rate Gamma
  double nbar = 4.0;   ///< mean photon number of the environment

  void validate() const;
};

double gaussian_wigner(const GaussianState& state, std::span<const double> point);

/// Single-mode fidelity
///   F = 2 / (sqrt(Delta + delta) - sqrt(delta)) exp(-d^T (s1 + s2)^{-1} d / 2),
/// Delta = det(s1 + s2), delta = (det s1 - 1)(det s2 - 1), d = d1 - d2.
double fidelity(const GaussianState& a, const GaussianState& b);

/// nbar = (s11 + s22 + d1^2 + d2^2 - 2)/4, clamped at zero.
double mean_photon(const GaussianState& state);

/// Relative-entropy coherence S(thermal(nbar)) - S(state) in bits.
double coherence(const GaussianState& state);

/// Von Neumann entropy (bits) of a single-mode Gaussian state with symplectic
/// eigenvalue nu: g((nu+1)/2) - g((nu-1)/2), g(x) = x log2 x.
double gaussian_entropy(double nu);

GaussianState thermal_state(double nbar, double hbar = 1.0);

GaussianState reduce_mode(const GaussianState& state, Mode mode);

/// Wigner field of the state in its quadrature coordinates (see class note).
WignerField gaussian_field(const GaussianState& state);

/// Flat JSON record {"N", "hbar", "d", "sigma"}.
std::string to_json(const GaussianState& state);
GaussianState gaussian_state_from_json(const std::string& text);

}  // namespace phasespace

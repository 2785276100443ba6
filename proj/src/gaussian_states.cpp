#include "phasespace/gaussian_states.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "json.hpp"
#include "phasespace/errors.hpp"

namespace phasespace {

namespace {

double xlog2x(double x) { return x > 0.0 ? x * std::log2(x) : 0.0; }

Eigen::Matrix2d normalized_block(const GaussianState& state, int mode) {
  return state.covariance().block<2, 2>(2 * mode, 2 * mode) / state.hbar();
}

void require_single_mode(const GaussianState& state, const char* what) {
  if (state.modes() != 1) throw InvalidArgument(std::string(what) + ": single-mode state required");
}

}  // namespace

GaussianState::GaussianState(Eigen::VectorXd means, Eigen::MatrixXd covariance, double hbar,
                             double physicality_tolerance)
    : means_(std::move(means)), covariance_(std::move(covariance)), hbar_(hbar) {
  if (!(hbar_ > 0.0) || !std::isfinite(hbar_)) throw InvalidArgument("GaussianState: hbar must be positive");
  const auto n = means_.size();
  if (n != 2 && n != 4) throw InvalidArgument("GaussianState: one or two modes supported");
  if (covariance_.rows() != n || covariance_.cols() != n) {
    throw InvalidArgument("GaussianState: covariance shape does not match first moments");
  }
  if (!means_.allFinite() || !covariance_.allFinite()) {
    throw InvalidArgument("GaussianState: non-finite entries");
  }
  const double magnitude = std::max(covariance_.cwiseAbs().maxCoeff(), 1.0);
  if ((covariance_ - covariance_.transpose()).cwiseAbs().maxCoeff() > 1e-12 * magnitude) {
    throw InvalidArgument("GaussianState: covariance is not symmetric");
  }
  covariance_ = 0.5 * (covariance_ + covariance_.transpose()).eval();
  if (Eigen::LLT<Eigen::MatrixXd>(covariance_).info() != Eigen::Success) {
    throw UnphysicalStateError("GaussianState: covariance is not positive definite");
  }
  for (int mode = 0; mode < modes(); ++mode) {
    const double nu = local_symplectic_eigenvalue(static_cast<Mode>(mode + 1));
    if (nu < 1.0 - physicality_tolerance) {
      throw UnphysicalStateError("GaussianState: mode " + std::to_string(mode + 1) +
                                 " symplectic eigenvalue " + std::to_string(nu) + " < 1");
    }
  }
  if (min_symplectic_eigenvalue() < 1.0 - physicality_tolerance) {
    throw UnphysicalStateError("GaussianState: covariance violates the uncertainty principle");
  }
}

GaussianState GaussianState::vacuum(int modes, double hbar) {
  if (modes != 1 && modes != 2) throw InvalidArgument("vacuum: one or two modes supported");
  return GaussianState(Eigen::VectorXd::Zero(2 * modes),
                       hbar * Eigen::MatrixXd::Identity(2 * modes, 2 * modes), hbar);
}

double GaussianState::local_symplectic_eigenvalue(Mode mode) const {
  const int index = static_cast<int>(mode) - 1;
  if (index < 0 || index >= modes()) throw InvalidArgument("invalid mode index");
  const double det = normalized_block(*this, index).determinant();
  return std::sqrt(std::max(det, 0.0));
}

double GaussianState::min_symplectic_eigenvalue() const {
  if (modes() == 1) return local_symplectic_eigenvalue(Mode::first);
  // With sigma = L L^T, the singular values of L^T Omega L are the symplectic
  // eigenvalues, each twice; unlike the invariant-based closed form this stays
  // accurate when both eigenvalues coincide.
  const Eigen::Matrix4d s = covariance_ / hbar_;
  const Eigen::LLT<Eigen::Matrix4d> factor(s);
  if (factor.info() != Eigen::Success) return 0.0;
  const Eigen::Matrix4d l = factor.matrixL();
  Eigen::Matrix4d omega = Eigen::Matrix4d::Zero();
  omega(0, 1) = omega(2, 3) = 1.0;
  omega(1, 0) = omega(3, 2) = -1.0;
  const Eigen::Matrix4d m = l.transpose() * omega * l;
  return Eigen::JacobiSVD<Eigen::Matrix4d>(m).singularValues()(3);
}

void ThermalBath::validate() const {
  if (!(rate > 0.0) || !std::isfinite(rate)) throw InvalidArgument("bath decay rate must be positive");
  if (!(nbar >= 0.0) || !std::isfinite(nbar)) throw InvalidArgument("bath photon number must be >= 0");
}

double gaussian_wigner(const GaussianState& state, std::span<const double> point) {
  const auto n = state.means().size();
  if (static_cast<Eigen::Index>(point.size()) != n) {
    throw InvalidArgument("gaussian_wigner: point dimension does not match the state");
  }
  Eigen::LDLT<Eigen::MatrixXd> factor(state.covariance());
  if (factor.info() != Eigen::Success) throw InvalidArgument("gaussian_wigner: singular covariance");
  const Eigen::VectorXd r = Eigen::Map<const Eigen::VectorXd>(point.data(), n) - state.means();
  const double quadratic = r.dot(factor.solve(r));
  const double norm = std::pow(2.0 * std::numbers::pi, state.modes()) *
                      std::sqrt(state.covariance().determinant());
  return std::exp(-0.5 * quadratic) / norm;
}

double fidelity(const GaussianState& a, const GaussianState& b) {
  require_single_mode(a, "fidelity");
  require_single_mode(b, "fidelity");
  if (a.hbar() != b.hbar()) throw InvalidArgument("fidelity: states use different hbar");
  const Eigen::Matrix2d s1 = normalized_block(a, 0);
  const Eigen::Matrix2d s2 = normalized_block(b, 0);
  const Eigen::Matrix2d sum = s1 + s2;
  const double big_delta = sum.determinant();
  if (!(big_delta > 0.0)) throw InvalidArgument("fidelity: singular covariance sum");
  const double small_delta =
      std::max((s1.determinant() - 1.0) * (s2.determinant() - 1.0), 0.0);
  const Eigen::Vector2d d = (a.means() - b.means()) / std::sqrt(a.hbar());
  const double exponent = -0.5 * d.dot(sum.inverse() * d);
  const double value =
      2.0 / (std::sqrt(big_delta + small_delta) - std::sqrt(small_delta)) * std::exp(exponent);
  return std::clamp(value, 0.0, 1.0);
}

double mean_photon(const GaussianState& state) {
  require_single_mode(state, "mean_photon");
  const Eigen::Matrix2d s = normalized_block(state, 0);
  const Eigen::Vector2d d = state.means() / std::sqrt(state.hbar());
  const double nbar = 0.25 * (s(0, 0) + s(1, 1) + d.squaredNorm() - 2.0);
  return nbar < 0.0 && nbar > -1e-12 ? 0.0 : std::max(nbar, 0.0);
}

double gaussian_entropy(double nu) {
  if (nu < 1.0 - 1e-9) throw UnphysicalStateError("symplectic eigenvalue below 1");
  nu = std::max(nu, 1.0);
  return xlog2x(0.5 * (nu + 1.0)) - xlog2x(0.5 * (nu - 1.0));
}

double coherence(const GaussianState& state) {
  require_single_mode(state, "coherence");
  const double nu = state.local_symplectic_eigenvalue(Mode::first);
  const double nbar = mean_photon(state);
  const double thermal_entropy = xlog2x(nbar + 1.0) - xlog2x(nbar);
  const double value = thermal_entropy - gaussian_entropy(nu);
  return std::abs(value) < 1e-12 ? 0.0 : value;
}

GaussianState thermal_state(double nbar, double hbar) {
  if (!(nbar >= 0.0) || !std::isfinite(nbar)) throw InvalidArgument("thermal_state: nbar must be >= 0");
  return GaussianState(Eigen::Vector2d::Zero(), (2.0 * nbar + 1.0) * hbar * Eigen::Matrix2d::Identity(),
                       hbar);
}

GaussianState reduce_mode(const GaussianState& state, Mode mode) {
  const int index = static_cast<int>(mode) - 1;
  if (state.modes() != 2) throw InvalidArgument("reduce_mode: two-mode state required");
  if (index != 0 && index != 1) throw InvalidArgument("reduce_mode: mode must be 1 or 2");
  return GaussianState(state.means().segment<2>(2 * index),
                       state.covariance().block<2, 2>(2 * index, 2 * index), state.hbar());
}

WignerField gaussian_field(const GaussianState& state) {
  // Envelope exp(-sum x_a^2 / (2 kappa sigma_aa)) with kappa the largest
  // eigenvalue of the correlation matrix: the residual quadratic form
  // sigma^{-1} - diag(1/(kappa sigma_aa)) is then positive semidefinite.
  const Eigen::VectorXd inv_sqrt_diag = state.covariance().diagonal().cwiseSqrt().cwiseInverse();
  const Eigen::MatrixXd correlation =
      inv_sqrt_diag.asDiagonal() * state.covariance() * inv_sqrt_diag.asDiagonal();
  const double kappa = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(correlation).eigenvalues().maxCoeff();
  std::vector<double> scales;
  for (Eigen::Index a = 0; a < state.covariance().rows(); ++a) {
    scales.push_back(std::sqrt(2.0 * kappa * state.covariance()(a, a)));
  }
  return WignerField(state.modes(), 2.0 * state.hbar(), std::move(scales),
                     [state](std::span<const double> x) { return gaussian_wigner(state, x); });
}

std::string to_json(const GaussianState& state) {
  nlohmann::ordered_json record;
  record["N"] = state.modes();
  record["hbar"] = state.hbar();
  record["d"] = std::vector<double>(state.means().begin(), state.means().end());
  auto sigma = nlohmann::json::array();
  for (Eigen::Index i = 0; i < state.covariance().rows(); ++i) {
    std::vector<double> row(state.covariance().cols());
    for (Eigen::Index j = 0; j < state.covariance().cols(); ++j) row[j] = state.covariance()(i, j);
    sigma.push_back(row);
  }
  record["sigma"] = sigma;
  return record.dump();
}

GaussianState gaussian_state_from_json(const std::string& text) {
  nlohmann::json record;
  try {
    record = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(std::string("gaussian state record: ") + e.what());
  }
  try {
    const int modes = record.at("N").get<int>();
    const double hbar = record.value("hbar", 1.0);
    const auto d = record.at("d").get<std::vector<double>>();
    const auto sigma = record.at("sigma").get<std::vector<std::vector<double>>>();
    const std::size_t n = 2 * static_cast<std::size_t>(modes);
    if (d.size() != n || sigma.size() != n) {
      throw InvalidArgument("gaussian state record: sizes do not match N");
    }
    Eigen::MatrixXd covariance(n, n);
    for (std::size_t i = 0; i < n; ++i) {
      if (sigma[i].size() != n) throw InvalidArgument("gaussian state record: ragged sigma");
      for (std::size_t j = 0; j < n; ++j) covariance(i, j) = sigma[i][j];
    }
    return GaussianState(Eigen::Map<const Eigen::VectorXd>(d.data(), n), covariance, hbar);
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(std::string("gaussian state record: ") + e.what());
  }
}

}  // namespace phasespace

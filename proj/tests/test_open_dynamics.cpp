#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <unsupported/Eigen/MatrixFunctions>

#include "phasespace/errors.hpp"
#include "phasespace/open_dynamics.hpp"

namespace ps = phasespace;

namespace {

constexpr double kPi = std::numbers::pi;

ps::OscillatorParams unit_params(double coupling) {
  ps::OscillatorParams params;
  params.coupling = coupling;
  return params;
}

ps::GaussianState displaced_thermal_pair(double variance = 4.0) {
  return ps::GaussianState(Eigen::Vector4d::Ones(), variance * Eigen::Matrix4d::Identity());
}

std::vector<double> grid(double end, double step) {
  std::vector<double> times;
  const auto count = std::lround(end / step);
  for (long i = 0; i <= count; ++i) times.push_back(i * step);
  return times;
}

}  // namespace

TEST(ThermalizeClosedForm, Examples) {
  const ps::ThermalBath bath{1.0, 4.0};
  const ps::GaussianState start(Eigen::Vector2d(1.0, 1.0), Eigen::Matrix2d::Identity());
  const auto same = ps::thermalize_closed_form(start, bath, 0.0);
  EXPECT_EQ(same.covariance(), start.covariance());
  EXPECT_EQ(same.means(), start.means());

  const auto half = ps::thermalize_closed_form(start, bath, std::log(2.0));
  EXPECT_TRUE(half.covariance().isApprox(5.0 * Eigen::Matrix2d::Identity(), 1e-14));
  EXPECT_NEAR(half.means()(0), 1.0 / std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(half.means()(1), 1.0 / std::sqrt(2.0), 1e-15);

  const auto late = ps::thermalize_closed_form(start, bath, 50.0);
  EXPECT_LT((late.covariance() - 9.0 * Eigen::Matrix2d::Identity()).cwiseAbs().maxCoeff(), 1e-10);
  EXPECT_LT(late.means().cwiseAbs().maxCoeff(), 1e-10);

  EXPECT_THROW(ps::thermalize_closed_form(start, bath, -1.0), ps::InvalidArgument);
  EXPECT_THROW(ps::thermalize_closed_form(ps::GaussianState::vacuum(2), bath, 1.0), ps::InvalidArgument);
}

TEST(DriftAndDiffusion, HamiltonianFlowMatrix) {
  const ps::OscillatorParams params{2.0, 0.5, 1.0, 0.3};
  const ps::ThermalBath bath{0.2, 1.0};
  const auto dd = ps::drift_and_diffusion(params, bath);
  Eigen::Matrix4d expected;
  const double a = 2 * params.alpha() * params.alpha();
  const double b = 2 * params.beta() * params.beta();
  expected << -0.1, a, 0.3, 0, -b, -0.1, 0, 0.3, -0.3, 0, 0, a, 0, -0.3, -b, 0;
  EXPECT_TRUE(dd.drift.isApprox(expected, 1e-15));
  Eigen::Matrix4d diffusion = Eigen::Matrix4d::Zero();
  diffusion(0, 0) = diffusion(1, 1) = 0.2 * 3.0;
  EXPECT_TRUE(dd.diffusion.isApprox(diffusion, 1e-15));
}

TEST(DriftAndDiffusion, UncoupledExponentialMatchesFlow) {
  // Gamma is required to be positive; its part of exp(A t) is a scalar
  // factor on mode 1 and is divided out.
  const ps::OscillatorParams params{1.0, 1.0, 1.0, 0.0};
  const double rate = 1e-3;
  const double t = 0.8;
  const auto dd = ps::drift_and_diffusion(params, ps::ThermalBath{rate, 0.0});
  Eigen::Matrix4d flow = (dd.drift * t).exp();
  flow.block<2, 4>(0, 0) *= std::exp(0.5 * rate * t);
  const ps::PhasePoint x{0.4, -1.2, 0.7, 0.3};
  const Eigen::Vector4d moved = flow * Eigen::Vector4d(x.q1, x.p1, x.q2, x.p2);
  const auto expected = ps::classical_trajectory(x, t, params);
  EXPECT_NEAR(moved(0), expected.q1, 1e-12);
  EXPECT_NEAR(moved(1), expected.p1, 1e-12);
  EXPECT_NEAR(moved(2), expected.q2, 1e-12);
  EXPECT_NEAR(moved(3), expected.p2, 1e-12);
}

TEST(DriftAndDiffusion, ModeOneLyapunovReducesToThermalization) {
  const ps::ThermalBath bath{0.3, 4.0};
  const auto dd = ps::drift_and_diffusion(unit_params(0.0), bath);
  Eigen::Matrix4d sigma = Eigen::Matrix4d::Identity();
  sigma.block<2, 2>(0, 0) << 2.0, 0.3, 0.3, 1.5;
  const Eigen::Matrix4d rate = dd.drift * sigma + sigma * dd.drift.transpose() + dd.diffusion;
  // The free rotation contributes a commutator; the rest is -G sigma + G (2m+1) I.
  const auto free = ps::drift_and_diffusion(unit_params(0.0), ps::ThermalBath{1e-300, 0.0});
  const Eigen::Matrix4d rotation_part = free.drift * sigma + sigma * free.drift.transpose();
  const Eigen::Matrix2d dissipative = (rate - rotation_part).block<2, 2>(0, 0);
  const Eigen::Matrix2d expected =
      -bath.rate * sigma.block<2, 2>(0, 0) + bath.rate * 9.0 * Eigen::Matrix2d::Identity();
  EXPECT_TRUE(dissipative.isApprox(expected, 1e-12));
}

TEST(DriftAndDiffusion, RotatingFrameNeedsUnitStiffness) {
  EXPECT_NO_THROW(ps::drift_and_diffusion(ps::OscillatorParams{2.0, 0.5, 1.0, 0.1}, {}, ps::Frame::rotating));
  EXPECT_THROW(ps::drift_and_diffusion(ps::OscillatorParams{2.0, 1.0, 1.0, 0.1}, {}, ps::Frame::rotating),
               ps::InvalidArgument);
  const auto lab = ps::drift_and_diffusion(unit_params(0.2), {}, ps::Frame::lab);
  const auto rotating = ps::drift_and_diffusion(unit_params(0.2), {}, ps::Frame::rotating);
  // The dropped part commutes with the rest.
  const Eigen::Matrix4d free = lab.drift - rotating.drift;
  EXPECT_LT((free * rotating.drift - rotating.drift * free).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(EvolveCoupled, UncoupledMatchesClosedForm) {
  const ps::ThermalBath bath{0.05, 4.0};
  const auto times = grid(6.0 / bath.rate, 0.1 / bath.rate);
  const auto record = ps::evolve_coupled(displaced_thermal_pair(), unit_params(0.0), bath, times);
  ASSERT_EQ(record.states.size(), times.size());
  const ps::GaussianState start(Eigen::Vector2d::Ones(), 4.0 * Eigen::Matrix2d::Identity());
  for (std::size_t i = 0; i < times.size(); ++i) {
    const auto local = ps::reduce_mode(record.states[i], ps::Mode::first);
    const auto oracle = ps::thermalize_closed_form(start, bath, times[i]);
    EXPECT_LT((local.covariance() - oracle.covariance()).cwiseAbs().maxCoeff(), 1e-6);
    EXPECT_LT((local.means() - oracle.means()).cwiseAbs().maxCoeff(), 1e-6);
    if (i > 0) { EXPECT_GE(record.fidelity_track[i], record.fidelity_track[i - 1]); }
  }
  EXPECT_TRUE(record.backflow_intervals.empty());
}

TEST(EvolveCoupled, LabFrameAgreesOnRecordedQuantities) {
  const ps::ThermalBath bath{0.1, 4.0};
  const auto times = grid(20.0, 0.5);
  ps::IntegratorOptions lab;
  lab.frame = ps::Frame::lab;
  const auto a = ps::evolve_coupled(displaced_thermal_pair(), unit_params(0.1), bath, times);
  const auto b = ps::evolve_coupled(displaced_thermal_pair(), unit_params(0.1), bath, times, lab);
  for (std::size_t i = 0; i < times.size(); ++i) {
    EXPECT_NEAR(a.fidelity_track[i], b.fidelity_track[i], 1e-8);
    EXPECT_NEAR(a.coherence_track[i], b.coherence_track[i], 1e-8);
  }
}

TEST(EvolveCoupled, ConvergesToTheBath) {
  for (double coupling : {0.0, 0.1, 0.5}) {
    for (double rate : {0.05, 0.1}) {
      const ps::ThermalBath bath{rate, 4.0};
      const auto record = ps::evolve_coupled(displaced_thermal_pair(), unit_params(coupling), bath,
                                             {0.0, 12.0 / rate});
      EXPECT_GT(record.fidelity_track.back(), 1.0 - 1e-3) << coupling << " " << rate;
      for (const auto& state : record.states) EXPECT_GE(state.min_symplectic_eigenvalue(), 1.0 - 1e-6);
    }
  }
}

TEST(EvolveCoupled, ClosedSystemConservesPurityAndIsPeriodic) {
  // Gamma is required to be positive; a negligible rate leaves the dynamics unitary.
  const ps::ThermalBath bath{1e-12, 4.0};
  const double coupling = 0.4;
  const double period = kPi / coupling;
  const auto times = grid(2.0 * period, period / 40.0);
  const ps::GaussianState start(Eigen::Vector4d(1.0, 0.5, -0.2, 0.0),
                                (Eigen::Vector4d(4.0, 4.0, 2.0, 2.0)).asDiagonal().toDenseMatrix());
  const auto record = ps::evolve_coupled(start, unit_params(coupling), bath, times);
  const double det0 = start.covariance().determinant();
  for (const auto& state : record.states) {
    EXPECT_NEAR(state.covariance().determinant() / det0, 1.0, 1e-8);
  }
  // The coupling swaps the modes after half a period, so the local fidelity
  // repeats with period pi / gamma. Both modes stay mixed: near a pure local
  // state the fidelity has square-root sensitivity to rounding.
  for (std::size_t i = 0; i + 40 < times.size(); ++i) {
    EXPECT_NEAR(record.fidelity_track[i], record.fidelity_track[i + 40], 1e-8);
  }
  EXPECT_GT(*std::max_element(record.fidelity_track.begin(), record.fidelity_track.end()) -
                *std::min_element(record.fidelity_track.begin(), record.fidelity_track.end()),
            0.05);
}

TEST(EvolveCoupled, CoupledRunShowsBackflow) {
  const ps::ThermalBath bath{0.1, 4.0};
  const auto times = grid(6.0 / bath.rate, 0.005 / bath.rate);
  const auto record = ps::evolve_coupled(displaced_thermal_pair(), unit_params(0.1), bath, times);
  EXPECT_GE(record.backflow_intervals.size(), 1u);
}

TEST(EvolveCoupled, InputValidation) {
  const ps::ThermalBath bath{0.1, 4.0};
  const auto start = displaced_thermal_pair();
  EXPECT_THROW(ps::evolve_coupled(start, unit_params(0.1), bath, {1.0, 2.0}), ps::InvalidArgument);
  EXPECT_THROW(ps::evolve_coupled(start, unit_params(0.1), bath, {0.0, 2.0, 2.0}), ps::InvalidArgument);
  EXPECT_THROW(ps::evolve_coupled(start, unit_params(0.1), bath, {}), ps::InvalidArgument);
  EXPECT_THROW(ps::evolve_coupled(ps::GaussianState::vacuum(1), unit_params(0.1), bath, {0.0}),
               ps::InvalidArgument);
  ps::IntegratorOptions bad;
  bad.max_step = 0.0;
  EXPECT_THROW(ps::evolve_coupled(start, unit_params(0.1), bath, {0.0, 1.0}, bad), ps::InvalidArgument);
  EXPECT_THROW(ps::evolve_coupled(ps::GaussianState::vacuum(2, 2.0), unit_params(0.1), bath, {0.0}),
               ps::InvalidArgument);
}

TEST(EvolveCoupled, RejectsInvalidBath) {
  EXPECT_THROW(ps::evolve_coupled(ps::GaussianState::vacuum(2), unit_params(0.0),
                                  ps::ThermalBath{0.5, -0.9}, {0.0, 5.0}),
               ps::InvalidArgument);
  EXPECT_THROW(ps::evolve_coupled(ps::GaussianState::vacuum(2), unit_params(0.0),
                                  ps::ThermalBath{0.0, 1.0}, {0.0, 5.0}),
               ps::InvalidArgument);
}

TEST(BackflowIntervals, Examples) {
  EXPECT_TRUE(ps::backflow_intervals({0, 1, 2, 3}, {0.1, 0.2, 0.3, 0.4}).empty());
  const auto single = ps::backflow_intervals({0, 1, 2, 3}, {0.2, 0.4, 0.3, 0.5});
  ASSERT_EQ(single.size(), 1u);
  EXPECT_EQ(single[0], (ps::Interval{1, 2}));
  const auto merged = ps::backflow_intervals({0, 1, 2, 3, 4, 5}, {0.5, 0.4, 0.3, 0.6, 0.5, 0.5});
  ASSERT_EQ(merged.size(), 2u);
  EXPECT_EQ(merged[0], (ps::Interval{0, 2}));
  EXPECT_EQ(merged[1], (ps::Interval{3, 4}));
  EXPECT_TRUE(ps::backflow_intervals({0, 1}, {0.5, 0.5 - 1e-10}).empty());
  EXPECT_THROW(ps::backflow_intervals({0, 1}, {0.5}), ps::InvalidArgument);
  EXPECT_THROW(ps::backflow_intervals({0, 0}, {0.5, 0.4}), ps::InvalidArgument);
}

TEST(IncreaseIntervals, MirrorOfBackflow) {
  const auto rises = ps::increase_intervals({0, 1, 2, 3}, {0.2, 0.4, 0.3, 0.5});
  ASSERT_EQ(rises.size(), 2u);
  EXPECT_EQ(rises[0], (ps::Interval{0, 1}));
  EXPECT_EQ(rises[1], (ps::Interval{2, 3}));
}

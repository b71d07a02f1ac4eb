#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "pdha/classical.hpp"
#include "pdha/operators.hpp"
#include "pdha/propagator.hpp"

using namespace pdha;

namespace {

const DeformationParams kParams = make_params(0.1, 1.0, 1.0);
const Potential kOscillator = polynomial_potential({0.0, 0.0, 0.5});

}  // namespace

TEST_CASE("hamilton_rhs: free particle, small-tau limit, domain check") {
  const auto [dx, dxi] = hamilton_rhs(kParams, PhaseState{0.0, 0.7, 0.0},
                                      [](double) { return 0.0; });
  CHECK(dx == doctest::Approx(0.7).epsilon(1e-15));  // f(0) = 1
  CHECK(dxi == 0.0);

  const auto [dx2, dxi2] = hamilton_rhs(kParams, PhaseState{5.0, 0.7, 0.0},
                                        [](double x) { return x; });
  CHECK(dx2 == doctest::Approx(0.75 * 0.7).epsilon(1e-14));
  CHECK(dxi2 == doctest::Approx(-0.75 * 5.0).epsilon(1e-14));

  const DeformationParams p0 = make_params(1e-9, 1.0, 2.0);
  const auto [dx3, dxi3] = hamilton_rhs(p0, PhaseState{1.0, 0.6, 0.0},
                                        [](double x) { return x; });
  CHECK(dx3 == doctest::Approx(0.3).epsilon(1e-8));
  CHECK(dxi3 == doctest::Approx(-1.0).epsilon(1e-8));

  CHECK_THROWS_AS(hamilton_rhs(kParams, PhaseState{11.0, 0.0, 0.0},
                               [](double) { return 0.0; }),
                  DomainError);
}

TEST_CASE("free particle: momentum conserved, u(x(t)) exactly linear") {
  const double xi0 = 0.9;
  const double u0 = u_of_x(kParams, -3.0);
  const Trajectory traj = integrate_trajectory(kParams, free_potential(),
                                               PhaseState{-3.0, xi0, 0.0}, 5.0, 1e-3);
  REQUIRE(!traj.states.empty());
  CHECK_FALSE(traj.boundary_event);
  double worst_xi = 0.0, worst_u = 0.0;
  for (const PhaseState& s : traj.states) {
    worst_xi = std::max(worst_xi, std::abs(s.xi - xi0));
    worst_u = std::max(worst_u,
                       std::abs(u_of_x(kParams, s.x) - (u0 + xi0 * s.t / kParams.mass)));
  }
  CHECK(worst_xi <= 1e-12);
  CHECK(worst_u <= 1e-9);
}

TEST_CASE("trajectory halts with a boundary event") {
  // strong push toward the wall
  const Trajectory traj = integrate_trajectory(kParams, free_potential(),
                                               PhaseState{9.0, 5.0, 0.0}, 50.0, 1e-3);
  CHECK(traj.boundary_event);
  CHECK(std::abs(traj.states.back().x) <= kParams.ell_max);
  CHECK(traj.states.back().t < 50.0);

  CHECK_THROWS_AS(integrate_trajectory(kParams, free_potential(),
                                       PhaseState{0.0, 1.0, 0.0}, 1.0, 0.0),
                  ValidationError);
}

TEST_CASE("oscillator at small tau matches cos(t)") {
  const DeformationParams p0 = make_params(1e-6, 1.0, 1.0);
  const Trajectory traj =
      integrate_trajectory(p0, kOscillator, PhaseState{1.0, 0.0, 0.0}, 2.0 * kPi, 1e-3);
  double worst = 0.0;
  for (const PhaseState& s : traj.states) {
    worst = std::max(worst, std::abs(s.x - std::cos(s.t)));
  }
  // the leading deviation is tau * sin^2(t)
  CHECK(worst <= 1.05e-6);
}

TEST_CASE("fourth-order convergence under step halving") {
  const PhaseState s0{1.0, 0.0, 0.0};
  auto final_state = [&](double dt) {
    return integrate_trajectory(kParams, kOscillator, s0, 2.0, dt).states.back();
  };
  const PhaseState ref = final_state(1.25e-4);
  auto err = [&](double dt) {
    const PhaseState s = final_state(dt);
    return std::hypot(s.x - ref.x, s.xi - ref.xi);
  };
  CHECK(err(2e-3) / err(1e-3) >= 14.0);
}

TEST_CASE("energy drift stays in the RK4 budget") {
  const Trajectory traj =
      integrate_trajectory(kParams, kOscillator, PhaseState{1.0, 0.0, 0.0}, 10.0, 1e-3);
  CHECK(energy_drift(kParams, traj, kOscillator) <= 1e-8);

  const Trajectory free_traj = integrate_trajectory(kParams, free_potential(),
                                                    PhaseState{0.0, 0.5, 0.0}, 5.0, 1e-3);
  CHECK(energy_drift(kParams, free_traj, free_potential()) <= 1e-14);
}

TEST_CASE("energy drift shrinks at least at fourth order under step halving") {
  auto drift_at = [&](double dt) {
    const Trajectory traj =
        integrate_trajectory(kParams, kOscillator, PhaseState{1.5, 0.0, 0.0}, 10.0, dt);
    return energy_drift(kParams, traj, kOscillator);
  };
  // The per-step energy defect of the classic scheme is one order above its
  // trajectory error, so the measured ratio sits near 32 rather than 16.
  const double ratio = drift_at(2e-2) / drift_at(1e-2);
  CHECK(ratio >= 14.0);
  CHECK(ratio <= 48.0);
}

TEST_CASE("time reversal returns to the start") {
  const Trajectory fwd = integrate_trajectory(kParams, kOscillator,
                                              PhaseState{1.0, 0.3, 0.0}, 3.0, 1e-3);
  const PhaseState end = fwd.states.back();
  // integrate the time-reversed state forward again
  const Trajectory back = integrate_trajectory(kParams, kOscillator,
                                               PhaseState{end.x, -end.xi, 0.0}, 3.0, 1e-3);
  const PhaseState home = back.states.back();
  CHECK(std::abs(home.x - 1.0) <= 1e-9);
  CHECK(std::abs(home.xi + 0.3) <= 1e-9);
}

TEST_CASE("action along the free path matches the closed form") {
  const double xi0 = 0.9, t_end = 4.0;
  const Trajectory traj = integrate_trajectory(kParams, free_potential(),
                                               PhaseState{-3.0, xi0, 0.0}, t_end, 1e-3);
  const double s = action_along_path(kParams, traj, free_potential());
  const double x_end = traj.states.back().x;
  const double closed = free_action(kParams, x_end, -3.0, t_end).s;
  CHECK(s == doctest::Approx(closed).epsilon(1e-6));

  Trajectory empty;
  empty.dt = 1e-3;
  CHECK(action_along_path(kParams, empty, free_potential()) == 0.0);
}

TEST_CASE("action is stationary under endpoint-fixed bumps") {
  const double xi0 = 0.9, t_end = 4.0;
  const Trajectory traj = integrate_trajectory(kParams, free_potential(),
                                               PhaseState{-3.0, xi0, 0.0}, t_end, 1e-3);
  auto perturbed_action = [&](double amplitude) {
    Trajectory bumped = traj;
    for (std::size_t k = 0; k < bumped.states.size(); ++k) {
      const double t = bumped.states[k].t;
      bumped.states[k].x += amplitude * std::sin(kPi * t / t_end);
    }
    return action_along_path(kParams, bumped, free_potential());
  };
  const double a = 1e-4;
  const double first_order = std::abs(perturbed_action(a) - perturbed_action(-a)) / 2.0;
  CHECK(first_order <= 1e-8);

  // a probe that does not fix the endpoints responds at first order
  const double s0 = action_along_path(kParams, traj, free_potential());
  Trajectory shifted = traj;
  for (PhaseState& s : shifted.states) s.x += a;
  CHECK(std::abs(action_along_path(kParams, shifted, free_potential()) - s0) > 1e-7);
}

TEST_CASE("classical bracket matches the quantum commutator diagonal") {
  const GridPtr g = make_grid(kParams, 1025);
  const Eigen::VectorXcd ones = Eigen::VectorXcd::Ones(g->n());
  const Eigen::VectorXcd xp = apply_position(*g, apply_momentum_hermitian(*g, ones));
  const Eigen::VectorXcd px = apply_momentum_hermitian(*g, apply_position(*g, ones));
  double worst = 0.0;
  for (int i = 2; i < g->n() - 2; ++i) {
    const complexd comm = (xp[i] - px[i]) / complexd(0.0, kParams.hbar);
    const double bracket = deformation_factor(kParams, g->x[i]);  // {x, xi}_tau = f
    worst = std::max(worst, std::abs(comm - bracket) / bracket);
  }
  CHECK(worst <= 1e-3);
}

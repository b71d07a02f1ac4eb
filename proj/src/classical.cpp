#include "pdha/classical.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

namespace pdha {
namespace {

struct Derivative {
  double dx;
  double dxi;
};

Derivative rhs(const DeformationParams& p, double x, double xi,
               const std::function<double(double)>& dv) {
  const double f = deformation_factor(p, x);
  return {f * xi / p.mass, -f * dv(x)};
}

}  // namespace

Potential free_potential() {
  return Potential{[](double) { return 0.0; }, [](double) { return 0.0; }, "free"};
}

Potential polynomial_potential(std::vector<double> coefficients) {
  auto value = [c = coefficients](double x) {
    double acc = 0.0;
    for (std::size_t k = c.size(); k-- > 0;) acc = acc * x + c[k];
    return acc;
  };
  auto deriv = [c = coefficients](double x) {
    double acc = 0.0;
    for (std::size_t k = c.size(); k-- > 1;) acc = acc * x + c[k] * static_cast<double>(k);
    return acc;
  };
  return Potential{std::move(value), std::move(deriv), "polynomial"};
}

std::pair<double, double> hamilton_rhs(const DeformationParams& p, const PhaseState& s,
                                       const std::function<double(double)>& potential_gradient) {
  if (std::abs(s.x) > p.ell_max * (1.0 + 1e-12)) {
    throw DomainError("hamilton_rhs: state outside the position domain");
  }
  const Derivative d = rhs(p, s.x, s.xi, potential_gradient);
  return {d.dx, d.dxi};
}

Trajectory integrate_trajectory(const DeformationParams& p, const Potential& pot,
                                PhaseState initial, double t_end, double dt) {
  if (!(dt > 0.0)) throw ValidationError("integrate_trajectory: dt must be positive");
  if (std::abs(initial.x) > p.ell_max) {
    throw DomainError("integrate_trajectory: initial state outside the domain");
  }

  Trajectory traj;
  traj.dt = dt;
  traj.hamiltonian_label = pot.label;

  const auto steps = static_cast<long>(std::llround((t_end - initial.t) / dt));
  traj.states.reserve(static_cast<std::size_t>(std::max<long>(steps + 1, 1)));
  traj.states.push_back(initial);

  PhaseState s = initial;
  for (long k = 0; k < steps; ++k) {
    const Derivative k1 = rhs(p, s.x, s.xi, pot.dv);
    const Derivative k2 = rhs(p, s.x + 0.5 * dt * k1.dx, s.xi + 0.5 * dt * k1.dxi, pot.dv);
    const Derivative k3 = rhs(p, s.x + 0.5 * dt * k2.dx, s.xi + 0.5 * dt * k2.dxi, pot.dv);
    const Derivative k4 = rhs(p, s.x + dt * k3.dx, s.xi + dt * k3.dxi, pot.dv);
    s.x += dt / 6.0 * (k1.dx + 2.0 * k2.dx + 2.0 * k3.dx + k4.dx);
    s.xi += dt / 6.0 * (k1.dxi + 2.0 * k2.dxi + 2.0 * k3.dxi + k4.dxi);
    s.t = initial.t + dt * static_cast<double>(k + 1);
    if (std::abs(s.x) >= p.ell_max) {
      traj.boundary_event = true;
      s.x = std::clamp(s.x, -p.ell_max, p.ell_max);
      traj.states.push_back(s);
      break;
    }
    traj.states.push_back(s);
  }
  return traj;
}

double hamiltonian_value(const DeformationParams& p, const Potential& pot, const PhaseState& s) {
  return s.xi * s.xi / (2.0 * p.mass) + pot.v(s.x);
}

double action_along_path(const DeformationParams& p, const Trajectory& traj,
                         const Potential& pot) {
  const auto n = traj.states.size();
  if (n < 2) return 0.0;
  const double dt = traj.dt;

  auto xdot = [&](std::size_t k) {
    if (k == 0) {
      return (-3.0 * traj.states[0].x + 4.0 * traj.states[1].x - traj.states[2].x) / (2.0 * dt);
    }
    if (k + 1 == n) {
      return (3.0 * traj.states[n - 1].x - 4.0 * traj.states[n - 2].x + traj.states[n - 3].x) /
             (2.0 * dt);
    }
    return (traj.states[k + 1].x - traj.states[k - 1].x) / (2.0 * dt);
  };

  double acc = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const PhaseState& s = traj.states[k];
    const double lag =
        xdot(k) * s.xi / deformation_factor(p, s.x) - hamiltonian_value(p, pot, s);
    const double w = (k == 0 || k + 1 == n) ? 0.5 : 1.0;
    acc += w * lag;
  }
  return acc * dt;
}

double energy_drift(const DeformationParams& p, const Trajectory& traj, const Potential& pot) {
  if (traj.states.empty()) return 0.0;
  const double h0 = hamiltonian_value(p, pot, traj.states.front());
  double worst = 0.0;
  for (const PhaseState& s : traj.states) {
    worst = std::max(worst, std::abs(hamiltonian_value(p, pot, s) - h0));
  }
  return worst / std::max(std::abs(h0), 1e-300);
}

}  // namespace pdha

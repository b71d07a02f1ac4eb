#pragma once

#include <functional>
#include <string>
#include <vector>

#include "pdha/deformation.hpp"

namespace pdha {

struct PhaseState {
  double x = 0.0;
  double xi = 0.0;
  double t = 0.0;
};

/// Time-ordered phase-space path with uniform step. `boundary_event` is set
/// when the integration halted because |x| reached ell_max.
struct Trajectory {
  std::vector<PhaseState> states;
  double dt = 0.0;
  std::string hamiltonian_label;
  bool boundary_event = false;
};

/// Potential with its derivative; V(x) = sum_k c_k x^k for the polynomial
/// factory.
struct Potential {
  std::function<double(double)> v;
  std::function<double(double)> dv;
  std::string label;
};

Potential free_potential();
Potential polynomial_potential(std::vector<double> coefficients);

/// Deformed Hamilton equations for h = xi^2/(2m) + V(x):
///   dx/dt  = f(x) xi / m
///   dxi/dt = -f(x) V'(x)
/// Throws DomainError when the state lies outside the position domain.
std::pair<double, double> hamilton_rhs(const DeformationParams& p, const PhaseState& s,
                                       const std::function<double(double)>& potential_gradient);

/// Classic fixed-step fourth-order integration of the deformed equations.
/// Halts with a boundary event when |x| reaches ell_max.
Trajectory integrate_trajectory(const DeformationParams& p, const Potential& pot,
                                PhaseState initial, double t_end, double dt);

/// h(x, xi) = xi^2/(2m) + V(x).
double hamiltonian_value(const DeformationParams& p, const Potential& pot, const PhaseState& s);

/// Trapezoid quadrature of the phase-space action integrand
///   xdot xi / f(x) - h(x, xi)
/// along the trajectory, with xdot from second-order differences of the
/// stored path (so the functional is defined for perturbed paths too).
double action_along_path(const DeformationParams& p, const Trajectory& traj,
                         const Potential& pot);

/// max_t |h(t) - h(0)| / |h(0)|.
double energy_drift(const DeformationParams& p, const Trajectory& traj, const Potential& pot);

}  // namespace pdha

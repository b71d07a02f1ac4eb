#pragma once

#include "pdha/errors.hpp"
#include "pdha/numeric.hpp"

namespace pdha {

/// Physical constants of the position-deformed algebra [x,p] = i hbar f(x)
/// with f(x) = 1 - tau x + tau^2 x^2, plus the bounds they induce.
///
/// Immutable after construction; the single source of truth for every other
/// module.
struct DeformationParams {
  double tau = 0.0;   // deformation strength, dimensionless, in (0,1)
  double hbar = 1.0;  // action units, > 0
  double mass = 1.0;  // mass units, > 0

  // Derived bounds.
  double ell_max = 0.0;      // 1/tau, half-width of the position domain
  double delta_p_min = 0.0;  // hbar*tau, smallest momentum uncertainty
  double u_min = 0.0;        // flat-coordinate image of -ell_max
  double u_max = 0.0;        // flat-coordinate image of +ell_max

  /// u_max - u_min = pi/(tau*sqrt(3)); also 1/C^2 for the eigenstate norm.
  double u_length() const { return u_max - u_min; }
};

/// Validates and builds the parameter set. Throws ValidationError naming the
/// offending field when tau is outside (0,1) or hbar/mass are not positive.
DeformationParams make_params(double tau, double hbar = 1.0, double mass = 1.0);

/// f(x) = 1 - tau x + tau^2 x^2. Defined on all of R, bounded below by 3/4
/// (minimum at x = 1/(2 tau)).
double deformation_factor(const DeformationParams& p, double x);

/// f'(x) = -tau + 2 tau^2 x.
double deformation_factor_derivative(const DeformationParams& p, double x);

/// Flat coordinate u(x): the antiderivative of 1/f with u(0) = 0. Strictly
/// increasing; maps [-ell_max, +ell_max] onto [u_min, u_max].
///
/// Evaluated as (2/(tau sqrt3)) * atan( tau x sqrt3 / (2 - tau x) ), which is
/// algebraically identical to the arctan-difference form but free of the
/// catastrophic cancellation that form suffers as tau -> 0.
double u_of_x(const DeformationParams& p, double x);

/// Inverse of u_of_x, by closed-form inversion of the tangent half-identity:
/// x = 2 t / (tau (sqrt3 + t)), t = tan(tau sqrt3 u / 2).
/// Throws DomainError for u outside [u_min, u_max] (beyond a small slack).
double x_of_u(const DeformationParams& p, double u);

}  // namespace pdha

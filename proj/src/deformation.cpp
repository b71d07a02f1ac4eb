#include "pdha/deformation.hpp"

#include <cmath>
#include <string>

namespace pdha {

DeformationParams make_params(double tau, double hbar, double mass) {
  if (!(tau > 0.0) || !(tau < 1.0) || !std::isfinite(tau)) {
    throw ValidationError("tau must lie in the open interval (0,1), got " + std::to_string(tau));
  }
  if (!(hbar > 0.0) || !std::isfinite(hbar)) {
    throw ValidationError("hbar must be positive, got " + std::to_string(hbar));
  }
  if (!(mass > 0.0) || !std::isfinite(mass)) {
    throw ValidationError("mass must be positive, got " + std::to_string(mass));
  }
  DeformationParams p;
  p.tau = tau;
  p.hbar = hbar;
  p.mass = mass;
  p.ell_max = 1.0 / tau;
  p.delta_p_min = hbar * tau;
  p.u_min = -kPi / (3.0 * tau * kSqrt3);
  p.u_max = 2.0 * kPi / (3.0 * tau * kSqrt3);
  return p;
}

double deformation_factor(const DeformationParams& p, double x) {
  const double tx = p.tau * x;
  return 1.0 - tx + tx * tx;
}

double deformation_factor_derivative(const DeformationParams& p, double x) {
  return p.tau * (2.0 * p.tau * x - 1.0);
}

double u_of_x(const DeformationParams& p, double x) {
  const double tx = p.tau * x;
  return 2.0 / (p.tau * kSqrt3) * std::atan(tx * kSqrt3 / (2.0 - tx));
}

double x_of_u(const DeformationParams& p, double u) {
  const double slack = 1e-9 * p.u_length();
  if (u < p.u_min - slack || u > p.u_max + slack) {
    throw DomainError("u = " + std::to_string(u) + " outside [" + std::to_string(p.u_min) +
                      ", " + std::to_string(p.u_max) + "]");
  }
  // Clamp roundoff-level excursions so the endpoints map exactly.
  if (u <= p.u_min) return -p.ell_max;
  if (u >= p.u_max) return p.ell_max;
  const double t = std::tan(0.5 * p.tau * kSqrt3 * u);
  return 2.0 * t / (p.tau * (kSqrt3 + t));
}

}  // namespace pdha

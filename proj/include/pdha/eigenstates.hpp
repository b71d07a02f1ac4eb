#pragma once

#include <vector>

#include "pdha/grid.hpp"

namespace pdha {

/// Normalization constant C = sqrt(tau*sqrt(3)/pi); satisfies
/// C^2 * (u_max - u_min) = 1.
double normalization_constant(const DeformationParams& p);

/// Momentum eigenfunction in the capital-Phi picture:
///   Phi_xi(x) = C f(x)^{-1/2} exp(i xi u(x) / hbar).
/// Throws DomainError for |x| > ell_max.
complexd eigenfunction(const DeformationParams& p, double xi, double x);

/// Phi_xi sampled on a grid, as a capital-Phi wavefunction.
WaveFunction eigenfunction_samples(GridPtr grid, double xi);

/// <Phi_xi'|Phi_xi> evaluated as C^2 * integral du exp(i (xi-xi') u / hbar)
/// by the exact per-interval antiderivative on the grid's u-intervals.
/// |result| <= 1 and result -> 1 as xi - xi' -> 0.
complexd overlap_quadrature(const Grid& g, double xi, double xi_prime);

/// Same integral in one closed-form step over [u_min, u_max].
complexd overlap_closed(const DeformationParams& p, double delta_xi);

/// The closed sinc form tau*hbar*sqrt3/(pi d) * sin(pi d/(tau hbar sqrt3)).
/// Kept for side-by-side comparison; its zero set differs from the integral
/// above by a factor of two in the spacing.
double overlap_sinc_form(const DeformationParams& p, double delta_xi);

/// Lattice xi_n = tau*hbar*sqrt3*n for n in [n_lo, n_hi].
std::vector<double> momentum_lattice(const DeformationParams& p, int n_lo, int n_hi);

/// Momentum-side samples of a transformed state over a finite xi window.
struct SpectralFunction {
  Eigen::VectorXd xi;
  Eigen::VectorXcd values;
  double xi_lo = 0.0;
  double xi_hi = 0.0;
};

SpectralFunction make_spectral(Eigen::VectorXd xi_nodes, Eigen::VectorXcd values);

/// Uniform xi window centered on zero: 2*half_count+1 nodes with spacing
/// `step`. Helper for declaring transform windows.
Eigen::VectorXd uniform_xi_window(double half_width, int count);

/// Forward transform
///   Psi(xi) = C * integral dx Psi(x) f^{-1/2} exp(-i xi u / hbar),
/// computed as a flat integral in u of the small-phi picture. Linear in psi.
SpectralFunction forward_transform(const WaveFunction& psi, const Eigen::VectorXd& xi_nodes);

/// Inverse transform
///   Psi(x) = 1/(hbar sqrt(4 pi tau sqrt3)) * integral dxi Psi(xi) f^{-1/2}
///            exp(+i xi u / hbar)
/// over the declared window, trapezoid in xi, evaluated on the grid nodes.
WaveFunction inverse_transform(const SpectralFunction& f, GridPtr grid);

/// integral dxi |Psi(xi)|^2  /  integral dx |Psi(x)|^2. Equals
/// 2*hbar*tau*sqrt3 when the window captures the spectrum.
double parseval_ratio(const WaveFunction& psi, const SpectralFunction& f);

enum class SpectralOperator { Position, Momentum, Hamiltonian };

/// Action of the Hermitian operators on the momentum-side representation,
/// implemented by conjugation: inverse transform, apply the grid operator,
/// transform forward again.
SpectralFunction apply_operator_spectral(GridPtr grid, SpectralOperator op,
                                         const SpectralFunction& f,
                                         const Eigen::VectorXd* potential = nullptr);

}  // namespace pdha

#pragma once

#include <span>
#include <vector>

#include "pdha/operators.hpp"

namespace pdha {

enum class TimeKind { RealTime, Euclidean };

/// The closed free-particle kernel exists in two conventions: the bare
/// plane-wave form, and the same multiplied by (f(x) f(x'))^{-1/2} so that it
/// composes under the flat measure dx.
enum class KernelConvention { Bare, MeasureConsistent };

enum class KernelProvenance { ClosedForm, Timeslice, Spectral };

/// Two-point propagator values K(x_i, x_j; delta_t) in the capital-Phi
/// picture. Composition inserts the flat quadrature weights. delta_t is
/// signed for real-time kernels (K(-dt) is the adjoint); Euclidean kernels
/// require delta_t > 0.
struct Kernel {
  GridPtr grid;
  Eigen::MatrixXcd k;
  double delta_t = 0.0;
  TimeKind kind = TimeKind::Euclidean;
  KernelProvenance provenance = KernelProvenance::ClosedForm;
  KernelConvention convention = KernelConvention::MeasureConsistent;
};

enum class ActionKind { Deformed, Standard, EuclideanDeformed, EuclideanStandard };

struct ActionValue {
  double s = 0.0;
  ActionKind kind = ActionKind::Deformed;
};

/// Closed-form free kernel:
///   real time:  sqrt(m/(2 pi i hbar dt)) exp(+i S_fp / hbar)
///   Euclidean:  sqrt(m/(2 pi hbar dt))   exp(-S_fp / hbar)
/// with S_fp = (2m/(3 tau^2 dt)) A^2 = m (u(x)-u(x'))^2 / (2 dt).
complexd free_propagator_closed(const DeformationParams& p, double x, double x_prime,
                                double delta_t, TimeKind kind,
                                KernelConvention convention = KernelConvention::Bare);

/// S_fp via the arctan-difference form of the phase.
ActionValue free_action(const DeformationParams& p, double x, double x_prime, double delta_t,
                        TimeKind kind = TimeKind::RealTime);

/// T = S_fp / delta_t.
ActionValue free_kinetic(const DeformationParams& p, double x, double x_prime, double delta_t,
                         TimeKind kind = TimeKind::RealTime);

struct BaselineTriple {
  complexd kernel;
  double action = 0.0;
  double kinetic = 0.0;
};

/// Undeformed free-particle triple (K0, S0, T0) with S0 = m (x-x')^2/(2 dt).
BaselineTriple standard_baseline(const DeformationParams& p, double x, double x_prime,
                                 double delta_t, TimeKind kind);

/// Closed free kernel sampled over all grid node pairs.
Kernel free_kernel_closed(GridPtr grid, double delta_t, TimeKind kind,
                          KernelConvention convention = KernelConvention::MeasureConsistent);

/// Euclidean time-sliced propagator: `slices` compositions of the short-time
/// kernel exp(-eps V/2hbar) * (free flat-coordinate Gaussian) * exp(-eps V/2hbar)
/// in the small-phi picture, mapped back to capital-Phi. `symmetric = false`
/// selects the first-order endpoint variant exp(-eps V/hbar) on the right.
/// Real time is not supported on this route; use spectral_propagator.
Kernel timeslice_propagator(GridPtr grid, const Eigen::VectorXd& potential, double delta_t,
                            int slices, TimeKind kind, bool symmetric = true);

/// Single column K(:, j) of the time-sliced propagator, at O(slices * n^2)
/// cost. Matches timeslice_propagator column-for-column.
Eigen::VectorXd timeslice_column(const Grid& g, const Eigen::VectorXd& potential,
                                 double delta_t, int slices, int column, bool symmetric = true);

/// Propagator from the eigendecomposition of a Hamiltonian matrix,
///   K = sum_k phase(E_k) |chi_k><chi_k|,
/// assembled in the capital-Phi picture with flat-measure composition. The
/// real-time version is unitary; delta_t may be negative there.
Kernel spectral_propagator(GridPtr grid, const OperatorMatrix& hamiltonian, double delta_t,
                           TimeKind kind);

/// Same assembly from a precomputed basis (saves the eigensolve when several
/// delta_t values are needed).
Kernel spectral_kernel(const FlatSpectralBasis& basis, double delta_t, TimeKind kind);

/// Flat-measure composition: (a o b)(x, x') = integral dx'' a(x,x'') b(x'',x').
Kernel compose(const Kernel& a, const Kernel& b);

/// K^dag(x,x') = conj(K(x',x)); for real-time kernels delta_t flips sign.
Kernel kernel_adjoint(const Kernel& k);

/// Apply the kernel to a capital-Phi state under the flat measure.
WaveFunction propagate(const Kernel& k, const WaveFunction& psi);

/// Momentum-side propagator
///   (1/2 pi hbar) * double integral dx dx' (f f')^{-1/2}
///     exp(-i(xi u - xi' u')/hbar) K(x, x')
/// by the deformed-measure quadrature in u on both coordinates.
complexd ft_propagator(const Kernel& kernel, double xi, double xi_prime);

/// One comparison row of the deformed free-particle quantities against the
/// undeformed baseline (Euclidean kernels, bare prefactors).
struct BoundScanRow {
  double x = 0.0;
  double x_prime = 0.0;
  double s_def = 0.0;
  double s_std = 0.0;
  double t_def = 0.0;
  double t_std = 0.0;
  double k_def = 0.0;
  double k_std = 0.0;
  bool pass_action_bound = false;
};

/// All unordered pairs (including x = x') drawn from the sample set. Reports
/// the empirical truth of the action bound pair by pair; no global inequality
/// is asserted.
std::vector<BoundScanRow> bound_scan(const DeformationParams& p, std::span<const double> xs,
                                     double delta_t);

}  // namespace pdha

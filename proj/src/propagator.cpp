#include "pdha/propagator.hpp"

#include <cmath>
#include <utility>

namespace pdha {
namespace {

using Eigen::MatrixXcd;
using Eigen::MatrixXd;
using Eigen::VectorXcd;
using Eigen::VectorXd;

constexpr complexd kI{0.0, 1.0};

void require_positive_dt(double dt) {
  if (!(dt > 0.0)) throw ValidationError("delta_t must be positive");
}

double arctan_phase(const DeformationParams& p, double x) {
  return std::atan((2.0 * p.tau * x - 1.0) / kSqrt3);
}

double free_action_value(const DeformationParams& p, double x, double x_prime, double dt) {
  const double a = arctan_phase(p, x) - arctan_phase(p, x_prime);
  return 2.0 * p.mass * a * a / (3.0 * p.tau * p.tau * dt);
}

complexd kernel_prefactor(const DeformationParams& p, double dt, TimeKind kind) {
  const double mag = std::sqrt(p.mass / (2.0 * kPi * p.hbar * std::abs(dt)));
  if (kind == TimeKind::Euclidean) return mag;
  // sqrt(1/i) = exp(-i pi/4) on the principal branch.
  return mag * std::polar(1.0, (dt > 0.0 ? -1.0 : 1.0) * kPi / 4.0);
}

MatrixXd euclidean_heat_kernel(const Grid& g, double eps) {
  const int n = g.n();
  const double pref = std::sqrt(g.params.mass / (2.0 * kPi * g.params.hbar * eps));
  const double scale = g.params.mass / (2.0 * g.params.hbar * eps);
  MatrixXd out(n, n);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      const double du = g.u[i] - g.u[j];
      out(i, j) = pref * std::exp(-scale * du * du);
    }
  }
  return out;
}

/// slice * (W slice)^(count-1) by binary exponentiation of M = slice * W.
MatrixXd compose_slices(const MatrixXd& slice, const VectorXd& w, int count) {
  if (count == 1) return slice;
  MatrixXd base = slice * w.asDiagonal();
  int e = count - 1;
  MatrixXd acc;  // holds base^accumulated
  bool have = false;
  while (e > 0) {
    if (e & 1) {
      acc = have ? MatrixXd(acc * base) : base;
      have = true;
    }
    e >>= 1;
    if (e > 0) base = base * base;
  }
  return acc * slice;
}

MatrixXd timeslice_phi_kernel(const Grid& g, const VectorXd& potential, double dt, int slices,
                              bool symmetric) {
  const double eps = dt / slices;
  const double inv_hbar = 1.0 / g.params.hbar;
  MatrixXd slice = euclidean_heat_kernel(g, eps);
  if (symmetric) {
    const VectorXd half = (-0.5 * eps * inv_hbar * potential.array()).exp();
    slice = half.asDiagonal() * slice * half.asDiagonal();
  } else {
    const VectorXd full = (-eps * inv_hbar * potential.array()).exp();
    slice = slice * full.asDiagonal();
  }
  // Composition weights: the small-phi measure is exactly the trapezoid in u.
  return compose_slices(slice, g.w_deformed, slices);
}

}  // namespace

complexd free_propagator_closed(const DeformationParams& p, double x, double x_prime,
                                double delta_t, TimeKind kind, KernelConvention convention) {
  require_positive_dt(delta_t);
  const double s = free_action_value(p, x, x_prime, delta_t);
  complexd value = kernel_prefactor(p, delta_t, kind);
  if (kind == TimeKind::Euclidean) {
    value *= std::exp(-s / p.hbar);
  } else {
    value *= std::polar(1.0, s / p.hbar);
  }
  if (convention == KernelConvention::MeasureConsistent) {
    value /= std::sqrt(deformation_factor(p, x) * deformation_factor(p, x_prime));
  }
  return value;
}

ActionValue free_action(const DeformationParams& p, double x, double x_prime, double delta_t,
                        TimeKind kind) {
  require_positive_dt(delta_t);
  return ActionValue{free_action_value(p, x, x_prime, delta_t),
                     kind == TimeKind::Euclidean ? ActionKind::EuclideanDeformed
                                                 : ActionKind::Deformed};
}

ActionValue free_kinetic(const DeformationParams& p, double x, double x_prime, double delta_t,
                         TimeKind kind) {
  require_positive_dt(delta_t);
  return ActionValue{free_action_value(p, x, x_prime, delta_t) / delta_t,
                     kind == TimeKind::Euclidean ? ActionKind::EuclideanDeformed
                                                 : ActionKind::Deformed};
}

BaselineTriple standard_baseline(const DeformationParams& p, double x, double x_prime,
                                 double delta_t, TimeKind kind) {
  require_positive_dt(delta_t);
  const double dx = x - x_prime;
  BaselineTriple out;
  out.action = 0.5 * p.mass * dx * dx / delta_t;
  out.kinetic = out.action / delta_t;
  out.kernel = kernel_prefactor(p, delta_t, kind);
  if (kind == TimeKind::Euclidean) {
    out.kernel *= std::exp(-out.action / p.hbar);
  } else {
    out.kernel *= std::polar(1.0, out.action / p.hbar);
  }
  return out;
}

Kernel free_kernel_closed(GridPtr grid, double delta_t, TimeKind kind,
                          KernelConvention convention) {
  require_positive_dt(delta_t);
  const Grid& g = *grid;
  const int n = g.n();
  Kernel out;
  out.k.resize(n, n);
  const complexd pref = kernel_prefactor(g.params, delta_t, kind);
  const double scale = g.params.mass / (2.0 * g.params.hbar * delta_t);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      const double du = g.u[i] - g.u[j];
      const double s = scale * du * du;
      complexd v = (kind == TimeKind::Euclidean) ? pref * std::exp(-s)
                                                 : pref * std::polar(1.0, s);
      if (convention == KernelConvention::MeasureConsistent) {
        v /= std::sqrt(g.f[i] * g.f[j]);
      }
      out.k(i, j) = v;
    }
  }
  out.grid = std::move(grid);
  out.delta_t = delta_t;
  out.kind = kind;
  out.provenance = KernelProvenance::ClosedForm;
  out.convention = convention;
  return out;
}

Kernel timeslice_propagator(GridPtr grid, const VectorXd& potential, double delta_t, int slices,
                            TimeKind kind, bool symmetric) {
  require_positive_dt(delta_t);
  if (slices < 1) throw ValidationError("timeslice_propagator needs at least one slice");
  if (kind != TimeKind::Euclidean) {
    throw ValidationError("timeslice_propagator supports Euclidean time only; "
                          "use spectral_propagator for real time");
  }
  const Grid& g = *grid;
  if (potential.size() != g.n()) {
    throw ValidationError("timeslice_propagator: potential does not match grid");
  }
  const MatrixXd k_phi = timeslice_phi_kernel(g, potential, delta_t, slices, symmetric);
  const VectorXd inv_sqrt_f = g.f.cwiseSqrt().cwiseInverse();
  Kernel out;
  out.k = (inv_sqrt_f.asDiagonal() * k_phi * inv_sqrt_f.asDiagonal()).cast<complexd>();
  out.grid = std::move(grid);
  out.delta_t = delta_t;
  out.kind = kind;
  out.provenance = KernelProvenance::Timeslice;
  out.convention = KernelConvention::MeasureConsistent;
  return out;
}

VectorXd timeslice_column(const Grid& g, const VectorXd& potential, double delta_t, int slices,
                          int column, bool symmetric) {
  require_positive_dt(delta_t);
  if (slices < 1) throw ValidationError("timeslice_column needs at least one slice");
  if (column < 0 || column >= g.n()) throw ValidationError("timeslice_column: bad column");
  if (potential.size() != g.n()) {
    throw ValidationError("timeslice_column: potential does not match grid");
  }
  const int n = g.n();
  const double eps = delta_t / slices;
  const double inv_hbar = 1.0 / g.params.hbar;
  const MatrixXd heat = euclidean_heat_kernel(g, eps);
  const VectorXd half = (-0.5 * eps * inv_hbar * potential.array()).exp();
  const VectorXd full = (-eps * inv_hbar * potential.array()).exp();

  // v starts as the kernel column K_slice(:, column), then gets composed
  // against one more slice per iteration under the u-trapezoid weights.
  VectorXd v;
  if (symmetric) {
    v = half[column] * half.cwiseProduct(heat.col(column));
  } else {
    v = full[column] * heat.col(column);
  }
  for (int s = 1; s < slices; ++s) {
    VectorXd wv = g.w_deformed.cwiseProduct(v);
    if (symmetric) {
      v = half.cwiseProduct(heat * half.cwiseProduct(wv));
    } else {
      v = heat * full.cwiseProduct(wv);
    }
  }
  const VectorXd inv_sqrt_f = g.f.cwiseSqrt().cwiseInverse();
  return inv_sqrt_f[column] * inv_sqrt_f.cwiseProduct(v);
}

Kernel spectral_kernel(const FlatSpectralBasis& basis, double delta_t, TimeKind kind) {
  if (kind == TimeKind::Euclidean) require_positive_dt(delta_t);
  if (delta_t == 0.0) throw ValidationError("delta_t must be nonzero");
  const Grid& g = *basis.grid;
  const int n = g.n();
  const VectorXd inv_sqrt_f = g.f.cwiseSqrt().cwiseInverse();
  const bool real_basis = basis.chi.imag().isZero(0.0);

  Kernel out;
  if (kind == TimeKind::Euclidean && real_basis) {
    VectorXd phase(n);
    for (int k = 0; k < n; ++k) {
      phase[k] = std::exp(-basis.energies[k] * delta_t / g.params.hbar);
    }
    const MatrixXd chi_phi = inv_sqrt_f.asDiagonal() * basis.chi.real();
    out.k = (chi_phi * phase.asDiagonal() * chi_phi.transpose()).cast<complexd>();
  } else {
    VectorXcd phase(n);
    for (int k = 0; k < n; ++k) {
      const double e = basis.energies[k];
      phase[k] = (kind == TimeKind::Euclidean)
                     ? complexd(std::exp(-e * delta_t / g.params.hbar), 0.0)
                     : std::exp(-kI * e * delta_t / g.params.hbar);
    }
    const MatrixXcd chi_phi = inv_sqrt_f.cast<complexd>().asDiagonal() * basis.chi;
    out.k = chi_phi * phase.asDiagonal() * chi_phi.adjoint();
  }
  out.grid = basis.grid;
  out.delta_t = delta_t;
  out.kind = kind;
  out.provenance = KernelProvenance::Spectral;
  out.convention = KernelConvention::MeasureConsistent;
  return out;
}

Kernel spectral_propagator(GridPtr grid, const OperatorMatrix& hamiltonian, double delta_t,
                           TimeKind kind) {
  if (!grids_identical(*grid, *hamiltonian.grid)) {
    throw ValidationError("spectral_propagator: hamiltonian lives on a different grid");
  }
  return spectral_kernel(flat_spectral_basis(hamiltonian), delta_t, kind);
}

Kernel compose(const Kernel& a, const Kernel& b) {
  if (!grids_identical(*a.grid, *b.grid)) {
    throw ValidationError("compose: kernels live on different grids");
  }
  if (a.kind != b.kind) throw ValidationError("compose: mixed time kinds");
  Kernel out;
  out.grid = a.grid;
  out.k = a.k * a.grid->w_flat.cast<complexd>().asDiagonal() * b.k;
  out.delta_t = a.delta_t + b.delta_t;
  out.kind = a.kind;
  out.provenance = a.provenance == b.provenance ? a.provenance : KernelProvenance::Timeslice;
  out.convention = a.convention;
  return out;
}

Kernel kernel_adjoint(const Kernel& k) {
  Kernel out;
  out.grid = k.grid;
  out.k = k.k.adjoint();
  out.delta_t = (k.kind == TimeKind::RealTime) ? -k.delta_t : k.delta_t;
  out.kind = k.kind;
  out.provenance = k.provenance;
  out.convention = k.convention;
  return out;
}

WaveFunction propagate(const Kernel& k, const WaveFunction& psi) {
  if (psi.picture != Picture::CapitalPhi) {
    throw ValidationError("propagate expects a capital-Phi state");
  }
  if (!grids_identical(*k.grid, *psi.grid)) {
    throw ValidationError("propagate: state lives on a different grid");
  }
  WaveFunction out;
  out.grid = psi.grid;
  out.picture = Picture::CapitalPhi;
  out.samples = k.k * k.grid->w_flat.cast<complexd>().asDiagonal() * psi.samples;
  return out;
}

complexd ft_propagator(const Kernel& kernel, double xi, double xi_prime) {
  const Grid& g = *kernel.grid;
  const int n = g.n();
  const double inv_hbar = 1.0 / g.params.hbar;
  VectorXcd left(n), right(n);
  for (int i = 0; i < n; ++i) {
    const double w = g.w_flat[i] / std::sqrt(g.f[i]);
    left[i] = w * std::polar(1.0, -xi * g.u[i] * inv_hbar);
    right[i] = w * std::polar(1.0, xi_prime * g.u[i] * inv_hbar);
  }
  const complexd raw = left.transpose() * (kernel.k * right);
  return raw / (2.0 * kPi * g.params.hbar);
}

std::vector<BoundScanRow> bound_scan(const DeformationParams& p, std::span<const double> xs,
                                     double delta_t) {
  require_positive_dt(delta_t);
  std::vector<BoundScanRow> rows;
  for (std::size_t j = 0; j < xs.size(); ++j) {
    for (std::size_t i = j; i < xs.size(); ++i) {
      BoundScanRow r;
      r.x = xs[i];
      r.x_prime = xs[j];
      r.s_def = free_action_value(p, r.x, r.x_prime, delta_t);
      r.t_def = r.s_def / delta_t;
      const BaselineTriple base = standard_baseline(p, r.x, r.x_prime, delta_t,
                                                    TimeKind::Euclidean);
      r.s_std = base.action;
      r.t_std = base.kinetic;
      r.k_def = free_propagator_closed(p, r.x, r.x_prime, delta_t, TimeKind::Euclidean,
                                       KernelConvention::Bare)
                    .real();
      r.k_std = base.kernel.real();
      r.pass_action_bound = r.s_def <= r.s_std + 1e-12 * std::max(1.0, std::abs(r.s_std));
      rows.push_back(r);
    }
  }
  return rows;
}

}  // namespace pdha

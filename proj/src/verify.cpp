#include "pdha/verify.hpp"

#include <cmath>
#include <random>
#include <sstream>

#include "pdha/eigenstates.hpp"
#include "pdha/io.hpp"
#include "pdha/classical.hpp"
#include "pdha/propagator.hpp"

namespace pdha {
namespace {

using Eigen::VectorXcd;
using Eigen::VectorXd;

std::string fmt(double v) { return format_shortest(v); }

/// Max interior pointwise relative error of (-i hbar D_x - xi) Phi_xi.
double eigenrelation_error(const Grid& g, double xi, int depth) {
  GridPtr gp = std::make_shared<Grid>(g);
  const WaveFunction phi = eigenfunction_samples(gp, xi);
  const VectorXcd lhs = apply_momentum_hermitian(g, phi.samples);
  // The xi = 0 member is measured against one lattice unit of momentum; a
  // pointwise relative error is undefined on a zero eigenvalue.
  const double scale = std::max(std::abs(xi), g.params.tau * g.params.hbar * kSqrt3);
  double worst = 0.0;
  for (int i = depth; i < g.n() - depth; ++i) {
    const complexd target = xi * phi.samples[i];
    worst = std::max(worst, std::abs(lhs[i] - target) / (scale * std::abs(phi.samples[i])));
  }
  return worst;
}

struct CriterionBuilder {
  std::vector<ResidualReport> entries;

  void add(std::string label, std::string relation, double residual, double tolerance,
           bool expected_divergence = false) {
    entries.push_back(make_report(std::move(label), std::move(relation), residual, tolerance,
                                  expected_divergence));
  }
};

void criterion_normalization(const VerifyConfig& cfg, CriterionBuilder& b) {
  const double taus[5] = {0.05, 0.1, 0.3, 0.6, 0.9};
  double worst = 0.0;
  for (double tau : taus) {
    const DeformationParams p = make_params(tau, cfg.hbar, cfg.mass);
    const GridPtr g = make_grid(p, cfg.n);
    const double c = normalization_constant(p);
    const complexd integral = integrate_deformed(*g, VectorXcd::Ones(g->n()));
    worst = std::max(worst, std::abs(c * c * integral.real() - 1.0));
  }
  b.add("AC1_normalization", "C^2 * integral dx/f = 1 over tau in {.05,.1,.3,.6,.9}", worst,
        1e-10);
}

void criterion_eigenrelation(const VerifyConfig& cfg, CriterionBuilder& b) {
  const DeformationParams p = make_params(cfg.tau, cfg.hbar, cfg.mass);
  const int lattice_indices[5] = {-3, -1, 0, 2, 3};
  const double step = p.tau * p.hbar * kSqrt3;

  auto sweep = [&](int n) {
    const GridPtr g = make_grid(p, n);
    double worst = 0.0;
    for (int k : lattice_indices) {
      worst = std::max(worst, eigenrelation_error(*g, step * k, cfg.interior_depth));
    }
    return worst;
  };

  const double coarse = sweep(4097);
  const double fine = sweep(8193);
  const double ratio = coarse / std::max(fine, 1e-300);
  b.add("AC2_eigenrelation", "max interior rel. error of (-i hbar D_x - xi) Phi_xi, n=4097",
        coarse, 1e-6);
  b.add("AC2_eigenrelation_order",
        "grid-doubling error ratio " + fmt(ratio) + " (need >= 3.5)",
        std::max(0.0, 3.5 - ratio), 0.0);
}

void criterion_similarity_and_commutator(const VerifyConfig& cfg, CriterionBuilder& b) {
  const DeformationParams p = make_params(cfg.tau, cfg.hbar, cfg.mass);
  const GridPtr coarse = make_grid(p, cfg.n);
  const GridPtr fine = make_grid(p, 2 * (cfg.n - 1) + 1);
  const auto rc = verify_relations(coarse, cfg.interior_depth);
  const auto rf = verify_relations(fine, cfg.interior_depth, /*include_evolution=*/false);

  auto find = [](const std::vector<ResidualReport>& rs, const std::string& label) {
    for (const auto& r : rs) {
      if (r.label == label) return r;
    }
    throw ValidationError("missing relation " + label);
  };

  const ResidualReport gx = find(rc, "similarity_dyson_X");
  b.add("AC3_similarity_GX", "||G X G^-1 - x|| (diagonal commutation)", gx.residual, 0.0);

  for (const char* label : {"similarity_dyson_P", "similarity_metric_P"}) {
    const ResidualReport c = find(rc, label);
    const ResidualReport f = find(rf, label);
    const double ratio = c.residual / std::max(f.residual, 1e-300);
    b.add(std::string("AC3_") + label, c.relation + ", n=" + std::to_string(cfg.n), c.residual,
          1e-3);
    b.add(std::string("AC3_") + label + "_order",
          "grid-doubling ratio " + fmt(ratio) + " (need >= 3.2)", std::max(0.0, 3.2 - ratio),
          0.0);
  }

  const ResidualReport cc = find(rc, "commutator_deformed");
  const ResidualReport cf = find(rf, "commutator_deformed");
  const double ratio = cc.residual / std::max(cf.residual, 1e-300);
  b.add("AC4_commutator", "interior diag of [x,p]/(i hbar) vs f(x), n=" + std::to_string(cfg.n),
        cc.residual, 1e-3);
  b.add("AC4_commutator_order", "grid-doubling ratio " + fmt(ratio) + " (need >= 3.2)",
        std::max(0.0, 3.2 - ratio), 0.0);
}

void criterion_parseval(const VerifyConfig& cfg, CriterionBuilder& b) {
  const DeformationParams p = make_params(cfg.tau, cfg.hbar, cfg.mass);
  const GridPtr g = make_grid(p, cfg.n);
  const double L = p.u_length();
  const double xi1 = p.tau * p.hbar * kSqrt3;
  const double expected = 2.0 * p.hbar * p.tau * kSqrt3;

  struct Probe {
    double u0_frac, sigma_frac, xi0;
  };
  const Probe probes[5] = {{0.50, 0.050, 0.0},
                           {0.45, 0.050, xi1},
                           {0.55, 0.060, -2.0 * xi1},
                           {0.48, 0.040, 3.0 * xi1},
                           {0.52, 0.055, -xi1}};

  double worst_ratio = 0.0;
  double worst_roundtrip = 0.0;
  for (const Probe& pr : probes) {
    const double sigma = pr.sigma_frac * L;
    const WaveFunction psi =
        make_gaussian_in_u(g, p.u_min + pr.u0_frac * L, sigma, pr.xi0);
    const double half = std::abs(pr.xi0) + 4.0 * p.hbar / sigma;
    const double dxi = kPi * p.hbar / (2.0 * L);
    const int count = 2 * static_cast<int>(std::ceil(half / dxi)) + 1;
    const VectorXd window = uniform_xi_window(half, count);
    const SpectralFunction f = forward_transform(psi, window);
    worst_ratio = std::max(worst_ratio, std::abs(parseval_ratio(psi, f) / expected - 1.0));

    const WaveFunction back = inverse_transform(f, g);
    const double scale = psi.samples.cwiseAbs().maxCoeff();
    worst_roundtrip = std::max(
        worst_roundtrip, (back.samples - psi.samples).cwiseAbs().maxCoeff() / scale);
  }
  b.add("AC5_parseval", "integral|Psi(xi)|^2 dxi / integral|Psi(x)|^2 dx vs 2 hbar tau sqrt3",
        worst_ratio, 1e-6);
  b.add("AC5_roundtrip", "inverse(forward(psi)) vs psi, max relative error", worst_roundtrip,
        1e-6);
}

void criterion_overlap(const VerifyConfig& cfg, CriterionBuilder& b) {
  const DeformationParams p = make_params(cfg.tau, cfg.hbar, cfg.mass);
  const GridPtr g = make_grid(p, cfg.n);
  const double zero_spacing = 2.0 * kSqrt3 * p.tau * p.hbar;

  double worst = 0.0;
  for (double frac : {0.0, 0.37, 0.5, 1.3, 2.71, 4.0}) {
    const double dxi = frac * zero_spacing;
    worst = std::max(worst,
                     std::abs(overlap_quadrature(*g, dxi, 0.0) - overlap_closed(p, dxi)));
  }
  b.add("AC6_overlap_quadrature", "piecewise-exact overlap vs closed form", worst, 1e-10);

  b.add("AC6_overlap_unit", "overlap(0) = 1",
        std::abs(overlap_quadrature(*g, 0.0, 0.0) - 1.0), 1e-12);

  double worst_zero = 0.0;
  for (int k = 1; k <= 5; ++k) {
    worst_zero = std::max(worst_zero, std::abs(overlap_quadrature(*g, k * zero_spacing, 0.0)));
  }
  b.add("AC6_overlap_zero_set", "overlap vanishes at dxi = 2 sqrt3 tau hbar n", worst_zero,
        1e-8);

  // The closed sinc form has zeros at half the spacing; at its first zero
  // the integral is far from zero. Recorded, not failed.
  const double first_sinc_zero = kSqrt3 * p.tau * p.hbar;
  const double measured = std::abs(overlap_quadrature(*g, first_sinc_zero, 0.0));
  b.add("AC6_overlap_sinc_divergence",
        "integral at the sinc form's first zero: |overlap(" + fmt(first_sinc_zero) + ")| = " +
            fmt(measured) + " vs sinc value 0 (zero sets differ by factor 2)",
        measured, 0.0, /*expected_divergence=*/true);
}

void criterion_timeslice(const VerifyConfig& cfg, CriterionBuilder& b) {
  const DeformationParams p = make_params(cfg.tau, cfg.hbar, cfg.mass);
  const GridPtr g = make_grid(p, cfg.n);
  const double L = p.u_length();
  const double dt = std::min(cfg.delta_t, 0.01 * L * L * p.mass / p.hbar);
  const VectorXd v0 = VectorXd::Zero(g->n());

  const double fracs[3][2] = {{0.35, 0.55}, {0.45, 0.62}, {0.30, 0.50}};
  const int slice_counts[4] = {8, 16, 32, 64};
  double errors[4] = {0, 0, 0, 0};
  for (int s = 0; s < 4; ++s) {
    for (const auto& fr : fracs) {
      const int col = static_cast<int>(std::lround(fr[1] * (g->n() - 1)));
      const int row = static_cast<int>(std::lround(fr[0] * (g->n() - 1)));
      const VectorXd kn = timeslice_column(*g, v0, dt, slice_counts[s], col);
      const complexd cf = free_propagator_closed(p, g->x[row], g->x[col], dt,
                                                 TimeKind::Euclidean,
                                                 KernelConvention::MeasureConsistent);
      errors[s] = std::max(errors[s], std::abs(kn[row] - cf.real()) / std::abs(cf.real()));
    }
  }
  b.add("AC7_timeslice_error",
        "free-particle timeslice vs measure-consistent closed form at 64 slices (errors " +
            fmt(errors[0]) + ", " + fmt(errors[1]) + ", " + fmt(errors[2]) + ", " +
            fmt(errors[3]) + ")",
        errors[3], 1e-3);

  // The ratio clause is measurable only above the quadrature floor: the
  // free-particle split is exact slice-for-slice, so the errors sit at
  // rounding level and the trend carries no information there.
  const double floor = 1e-9;
  double deficit = 0.0;
  for (int s = 0; s + 1 < 4; ++s) {
    if (errors[s] <= floor && errors[s + 1] <= floor) continue;
    const double ratio = errors[s] / std::max(errors[s + 1], 1e-300);
    deficit = std::max(deficit, std::max(0.0, 1.9 - ratio));
  }
  b.add("AC7_timeslice_ratio",
        "slice-doubling ratio >= 1.9 or both errors below the 1e-9 floor", deficit, 0.0);

  // Supplemental: the split order is demonstrated where it is measurable,
  // against the spectral oracle with a non-commuting potential.
  {
    const GridPtr gs = make_grid(p, 1025);
    const double omega = 165.0 * p.hbar / (p.mass * L * L);
    const double u_mid = 0.5 * (p.u_min + p.u_max);
    VectorXd pot(gs->n());
    for (int i = 0; i < gs->n(); ++i) {
      const double du = gs->u[i] - u_mid;
      pot[i] = 0.5 * p.mass * omega * omega * du * du;
    }
    const double dt_s = 2.0 / omega;
    const Kernel oracle =
        spectral_propagator(gs, hamiltonian_matrix(gs, pot), dt_s, TimeKind::Euclidean);

    const int cols[2] = {static_cast<int>(std::lround(0.45 * (gs->n() - 1))),
                         static_cast<int>(std::lround(0.55 * (gs->n() - 1)))};
    const int rows[2] = {static_cast<int>(std::lround(0.50 * (gs->n() - 1))),
                         static_cast<int>(std::lround(0.40 * (gs->n() - 1)))};
    double err[3];
    const int counts[3] = {4, 8, 16};
    for (int s = 0; s < 3; ++s) {
      err[s] = 0.0;
      for (int c = 0; c < 2; ++c) {
        const VectorXd kn = timeslice_column(*gs, pot, dt_s, counts[s], cols[c]);
        for (int r = 0; r < 2; ++r) {
          const double ref = oracle.k(rows[r], cols[c]).real();
          err[s] = std::max(err[s], std::abs(kn[rows[r]] - ref) / std::abs(ref));
        }
      }
    }
    const double r1 = err[0] / std::max(err[1], 1e-300);
    const double r2 = err[1] / std::max(err[2], 1e-300);
    b.add("AC7_strang_order",
          "symmetric-split order vs spectral oracle, V != 0: ratios " + fmt(r1) + ", " +
              fmt(r2) + " (need >= 1.9)",
          std::max(0.0, 1.9 - std::min(r1, r2)), 0.0);
  }
}

void criterion_kernel_properties(const VerifyConfig& cfg, CriterionBuilder& b) {
  const DeformationParams p = make_params(cfg.tau, cfg.hbar, cfg.mass);
  const int n = std::min(cfg.n, 1025);
  const GridPtr g = make_grid(p, n);
  const double L = p.u_length();
  const double dt = std::min(cfg.delta_t, 0.01 * L * L * p.mass / p.hbar);
  const VectorXd v0 = VectorXd::Zero(n);
  const FlatSpectralBasis basis = flat_spectral_basis(hamiltonian_matrix(g, v0));

  // Euclidean timeslice composition (the generic route).
  {
    const Kernel k1 = timeslice_propagator(g, v0, dt, 8, TimeKind::Euclidean);
    const Kernel k2 = timeslice_propagator(g, v0, 0.5 * dt, 4, TimeKind::Euclidean);
    const Kernel both = compose(k2, k2);
    const double res = (both.k - k1.k).norm() / k1.k.norm();
    b.add("AC8_composition", "K(dt/2) o K(dt/2) = K(dt), Euclidean timeslice", res, 1e-6);
  }

  // Real-time spectral unitarity against the quadrature identity.
  const Kernel k_fwd = spectral_kernel(basis, dt, TimeKind::RealTime);
  {
    const Kernel ktk = compose(kernel_adjoint(k_fwd), k_fwd);
    const Eigen::VectorXd sqrt_w = g->w_flat.cwiseSqrt();
    const Eigen::MatrixXcd scaled = sqrt_w.cast<complexd>().asDiagonal() * ktk.k *
                                    sqrt_w.cast<complexd>().asDiagonal();
    const double res = (scaled - Eigen::MatrixXcd::Identity(n, n)).norm() / std::sqrt(n);
    b.add("AC8_unitarity", "||K^dag o K - I_quadrature||, real-time spectral", res, 1e-8);
  }

  // K^dag(dt) = K(-dt).
  {
    const Kernel back = spectral_kernel(basis, -dt, TimeKind::RealTime);
    const double res = (kernel_adjoint(k_fwd).k - back.k).norm() / k_fwd.k.norm();
    b.add("AC8_adjoint_reversal", "K^dag(dt) - K(-dt), real-time spectral", res, 1e-10);
  }
}

void criterion_action_identity(const VerifyConfig& cfg, CriterionBuilder& b) {
  const DeformationParams p = make_params(cfg.tau, cfg.hbar, cfg.mass);
  std::mt19937 rng(12345);
  std::uniform_real_distribution<double> dist(-0.95 * p.ell_max, 0.95 * p.ell_max);
  const double dt = cfg.delta_t;
  const double s_floor = 1e-6 * p.mass * p.u_length() * p.u_length() / (2.0 * dt);

  double worst = 0.0;
  for (int k = 0; k < 100; ++k) {
    const double x = dist(rng);
    const double xp = dist(rng);
    const double s_arctan = free_action(p, x, xp, dt).s;
    const double du = u_of_x(p, x) - u_of_x(p, xp);
    const double s_flat = 0.5 * p.mass * du * du / dt;
    worst = std::max(worst, std::abs(s_arctan - s_flat) / std::max(s_arctan, s_floor));
  }
  b.add("AC9_action_identity", "S_fp (arctan form) = m du^2/(2 dt), 100 random pairs", worst,
        1e-12);

  const double pair_set[3][2] = {{-3.0, 1.0}, {2.0, 5.0}, {-6.0, -1.0}};
  const double taus[3] = {1e-2, 1e-3, 1e-4};
  double errs[3];
  for (int i = 0; i < 3; ++i) {
    const DeformationParams pt = make_params(taus[i], cfg.hbar, cfg.mass);
    errs[i] = 0.0;
    for (const auto& pr : pair_set) {
      const double s_def = free_action(pt, pr[0], pr[1], dt).s;
      const double s_std = standard_baseline(pt, pr[0], pr[1], dt, TimeKind::RealTime).action;
      errs[i] = std::max(errs[i], std::abs(s_def - s_std));
    }
  }
  const double slope1 = std::log10(errs[0] / errs[1]);
  const double slope2 = std::log10(errs[1] / errs[2]);
  const double dev = std::max(std::abs(slope1 - 1.0), std::abs(slope2 - 1.0));
  b.add("AC9_tau_slope",
        "|S_fp - S0| = O(tau): per-decade slopes " + fmt(slope1) + ", " + fmt(slope2), dev, 0.1);
}

void criterion_bound_scan(const VerifyConfig& cfg, CriterionBuilder& b) {
  const DeformationParams p = make_params(cfg.tau, cfg.hbar, cfg.mass);
  std::vector<double> xs;
  for (int k = 0; k <= 6; ++k) xs.push_back(-p.ell_max + k * p.ell_max / 6.0);
  const auto rows = bound_scan(p, xs, cfg.delta_t);
  int violations = 0;
  for (const auto& r : rows) {
    if (!r.pass_action_bound) ++violations;
  }
  b.add("AC10_bound_negative_half", "S_fp <= S0 for all pairs with x, x' in [-ell_max, 0]",
        violations, 0.0);

  const double xv = 0.5 / p.tau;
  const double lo = 0.98 * xv, hi = 1.02 * xv;
  const double s_def = free_action(p, hi, lo, cfg.delta_t).s;
  const double s_std = standard_baseline(p, hi, lo, cfg.delta_t, TimeKind::Euclidean).action;
  b.add("AC10_bound_straddle",
        "pairs straddling x = 1/(2 tau) violate the bound: S_fp = " + fmt(s_def) + " > S0 = " +
            fmt(s_std),
        s_def > s_std ? 0.0 : 1.0, 0.0);
  b.add("AC10_bound_global_claim",
        "global S <= S0 fails where 1/f > 1 (empirical partition recorded by bound_scan)",
        s_def - s_std, 0.0, /*expected_divergence=*/true);
}

void criterion_classical(const VerifyConfig& cfg, CriterionBuilder& b) {
  const DeformationParams p = make_params(cfg.tau, cfg.hbar, cfg.mass);

  // Free particle: u(x(t)) is exactly linear with slope xi0/m.
  {
    const double L = p.u_length();
    const double u0 = p.u_min + 0.3 * L;
    const double t_end = 5.0;
    const double xi0 = 0.05 * L * p.mass / t_end * 4.0;  // moves 0.2 L over the run
    const Potential pot = free_potential();
    const Trajectory traj =
        integrate_trajectory(p, pot, PhaseState{x_of_u(p, u0), xi0, 0.0}, t_end, 1e-3);
    double worst = 0.0;
    for (const PhaseState& s : traj.states) {
      worst = std::max(worst,
                       std::abs(u_of_x(p, s.x) - (u0 + xi0 * s.t / p.mass)) / L);
    }
    b.add("AC11_free_u_linear", "free particle: u(x(t)) linear with slope xi0/m", worst, 1e-9);
  }

  // Order-4 convergence on the deformed oscillator. The step pair sits well
  // above the rounding floor the global error reaches near dt ~ 1e-3.
  {
    const Potential pot = polynomial_potential({0.0, 0.0, 0.5});
    const PhaseState s0{std::min(1.0, 0.8 * p.ell_max), 0.0, 0.0};
    const double t_end = 2.0;
    auto final_state = [&](double dt) {
      const Trajectory t = integrate_trajectory(p, pot, s0, t_end, dt);
      return t.states.back();
    };
    const PhaseState ref = final_state(2.5e-4);
    auto err = [&](double dt) {
      const PhaseState s = final_state(dt);
      return std::hypot(s.x - ref.x, s.xi - ref.xi);
    };
    const double ratio = err(4e-3) / std::max(err(2e-3), 1e-300);
    b.add("AC11_rk4_order", "dt-halving global error ratio " + fmt(ratio) + " (need >= 14)",
          std::max(0.0, 14.0 - ratio), 0.0);
  }

  // Energy conservation budget.
  {
    const Potential pot = polynomial_potential({0.0, 0.0, 0.5});
    const Trajectory t =
        integrate_trajectory(p, pot, PhaseState{1.0, 0.0, 0.0}, 10.0, 1e-3);
    b.add("AC11_energy_drift", "oscillator energy drift, dt = 1e-3", energy_drift(p, t, pot),
          1e-8);
  }

  // Near-zero deformation the oscillator reduces to cos(t).
  {
    const DeformationParams p0 = make_params(5e-7, cfg.hbar, cfg.mass);
    const Potential pot = polynomial_potential({0.0, 0.0, 0.5});
    const Trajectory t =
        integrate_trajectory(p0, pot, PhaseState{1.0, 0.0, 0.0}, 2.0 * kPi, 1e-3);
    double worst = 0.0;
    for (const PhaseState& s : t.states) {
      worst = std::max(worst, std::abs(s.x - std::cos(s.t)));
    }
    b.add("AC11_oscillator_cos", "x(t) vs cos(t) at tau = 5e-7 over one period", worst, 1e-6);
  }
}

void criterion_uncertainty(const VerifyConfig& cfg, CriterionBuilder& b) {
  const DeformationParams p = make_params(cfg.tau, cfg.hbar, cfg.mass);
  const GridPtr g = make_grid(p, 4097);
  const double L = p.u_length();
  const double xi1 = p.tau * p.hbar * kSqrt3;

  double min_margin = 1e300;
  int count = 0;
  for (double u0_frac : {0.44, 0.48, 0.52, 0.56}) {
    for (double sigma_frac : {0.030, 0.045, 0.060, 0.075, 0.090}) {
      const double xi0 = ((count % 5) - 2) * xi1;
      const WaveFunction psi =
          make_gaussian_in_u(g, p.u_min + u0_frac * L, sigma_frac * L, xi0);
      const UncertaintyCheck c = uncertainty_check(psi);
      min_margin = std::min(min_margin, c.margin);
      ++count;
    }
  }
  b.add("AC12_uncertainty",
        "dx dp >= (hbar/2)(1 - tau<x> + tau^2<x^2>) on " + std::to_string(count) +
            " gaussian-in-u states (min margin " + fmt(min_margin) + ")",
        std::max(0.0, -min_margin), 1e-4);
}

}  // namespace

VerifyReport run_verification(const VerifyConfig& cfg) {
  CriterionBuilder b;
  criterion_normalization(cfg, b);
  criterion_eigenrelation(cfg, b);
  criterion_similarity_and_commutator(cfg, b);
  criterion_parseval(cfg, b);
  criterion_overlap(cfg, b);
  criterion_timeslice(cfg, b);
  criterion_kernel_properties(cfg, b);
  criterion_action_identity(cfg, b);
  criterion_bound_scan(cfg, b);
  criterion_classical(cfg, b);
  criterion_uncertainty(cfg, b);

  // Module-level relation suite at the configured size.
  {
    const DeformationParams p = make_params(cfg.tau, cfg.hbar, cfg.mass);
    const GridPtr g = make_grid(p, cfg.n);
    for (ResidualReport r : verify_relations(g, cfg.interior_depth)) {
      r.label = "REL_" + r.label;
      b.entries.push_back(std::move(r));
    }
  }

  VerifyReport report;
  report.entries = std::move(b.entries);
  for (ResidualReport& r : report.entries) {
    const auto it = cfg.tolerance_overrides.find(r.label);
    if (it != cfg.tolerance_overrides.end()) {
      r.tolerance = it->second;
      r.pass = r.expected_divergence || r.residual <= r.tolerance;
    }
    if (!r.expected_divergence && !r.pass) report.all_pass = false;
  }
  return report;
}

std::string verify_report_to_json(const VerifyReport& report) {
  std::ostringstream os;
  os << "{\n  \"all_pass\": " << (report.all_pass ? "true" : "false") << ",\n  \"checks\": ";
  std::string entries = residuals_to_json(report.entries);
  // indent the array two spaces to sit inside the object
  os << entries << "\n}\n";
  return os.str();
}

}  // namespace pdha

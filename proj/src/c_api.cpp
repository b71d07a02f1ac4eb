#include "pdha.h"

#include <cstring>
#include <new>
#include <string>
#include <vector>

#include "json.hpp"
#include "pdha/classical.hpp"
#include "pdha/eigenstates.hpp"
#include "pdha/io.hpp"
#include "pdha/propagator.hpp"
#include "pdha/verify.hpp"

namespace {

thread_local std::string g_last_error;

template <typename Fn>
pdha_status guarded(Fn&& fn) {
  try {
    fn();
    return PDHA_OK;
  } catch (const pdha::UnsupportedGridError& e) {
    g_last_error = e.what();
    return PDHA_ERR_UNSUPPORTED_GRID;
  } catch (const pdha::DomainError& e) {
    g_last_error = e.what();
    return PDHA_ERR_DOMAIN;
  } catch (const std::invalid_argument& e) {
    g_last_error = e.what();
    return PDHA_ERR_INVALID_ARGUMENT;
  } catch (const nlohmann::json::exception& e) {
    g_last_error = e.what();
    return PDHA_ERR_INVALID_ARGUMENT;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return PDHA_ERR_INTERNAL;
  }
}

pdha_status require(bool ok, const char* message) {
  if (ok) return PDHA_OK;
  g_last_error = message;
  return PDHA_ERR_INVALID_ARGUMENT;
}

char* copy_string(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

Eigen::VectorXcd to_complex(const double* re, const double* im, int n) {
  Eigen::VectorXcd v(n);
  for (int i = 0; i < n; ++i) v[i] = pdha::complexd(re[i], im ? im[i] : 0.0);
  return v;
}

void split_complex(const Eigen::VectorXcd& v, double* re, double* im) {
  for (int i = 0; i < v.size(); ++i) {
    if (re) re[i] = v[i].real();
    if (im) im[i] = v[i].imag();
  }
}

pdha::Potential poly_potential(const double* coeffs, size_t ncoeff) {
  std::vector<double> c(coeffs, coeffs + ncoeff);
  if (c.empty()) return pdha::free_potential();
  return pdha::polynomial_potential(std::move(c));
}

}  // namespace

struct pdha_params {
  pdha::DeformationParams p;
};

struct pdha_grid {
  pdha::GridPtr g;
};

struct pdha_kernel {
  pdha::Kernel k;
};

struct pdha_trajectory {
  pdha::DeformationParams params;
  pdha::Potential potential;
  pdha::Trajectory traj;
};

extern "C" {

const char* pdha_last_error(void) { return g_last_error.c_str(); }

void pdha_string_free(char* s) { delete[] s; }

pdha_status pdha_params_create(double tau, double hbar, double mass, pdha_params** out) {
  if (auto st = require(out != nullptr, "out must not be NULL"); st != PDHA_OK) return st;
  return guarded([&] { *out = new pdha_params{pdha::make_params(tau, hbar, mass)}; });
}

void pdha_params_free(pdha_params* p) { delete p; }

pdha_status pdha_params_get(const pdha_params* p, pdha_params_info* out) {
  if (auto st = require(p && out, "NULL argument"); st != PDHA_OK) return st;
  out->tau = p->p.tau;
  out->hbar = p->p.hbar;
  out->mass = p->p.mass;
  out->ell_max = p->p.ell_max;
  out->delta_p_min = p->p.delta_p_min;
  out->u_min = p->p.u_min;
  out->u_max = p->p.u_max;
  return PDHA_OK;
}

pdha_status pdha_deformation_factor(const pdha_params* p, double x, double* out) {
  if (auto st = require(p && out, "NULL argument"); st != PDHA_OK) return st;
  return guarded([&] { *out = pdha::deformation_factor(p->p, x); });
}

pdha_status pdha_u_of_x(const pdha_params* p, double x, double* out) {
  if (auto st = require(p && out, "NULL argument"); st != PDHA_OK) return st;
  return guarded([&] { *out = pdha::u_of_x(p->p, x); });
}

pdha_status pdha_x_of_u(const pdha_params* p, double u, double* out) {
  if (auto st = require(p && out, "NULL argument"); st != PDHA_OK) return st;
  return guarded([&] { *out = pdha::x_of_u(p->p, u); });
}

pdha_status pdha_normalization_constant(const pdha_params* p, double* out) {
  if (auto st = require(p && out, "NULL argument"); st != PDHA_OK) return st;
  return guarded([&] { *out = pdha::normalization_constant(p->p); });
}

pdha_status pdha_momentum_lattice(const pdha_params* p, int n_lo, int n_hi, double* out) {
  if (auto st = require(p && out, "NULL argument"); st != PDHA_OK) return st;
  return guarded([&] {
    const auto xs = pdha::momentum_lattice(p->p, n_lo, n_hi);
    std::memcpy(out, xs.data(), xs.size() * sizeof(double));
  });
}

pdha_status pdha_eigenfunction_eval(const pdha_params* p, double xi, const double* xs,
                                    size_t count, double* out_re, double* out_im) {
  if (auto st = require(p && xs && out_re && out_im, "NULL argument"); st != PDHA_OK) return st;
  return guarded([&] {
    for (size_t i = 0; i < count; ++i) {
      const pdha::complexd v = pdha::eigenfunction(p->p, xi, xs[i]);
      out_re[i] = v.real();
      out_im[i] = v.imag();
    }
  });
}

pdha_status pdha_overlap(const pdha_params* p, double xi, double xi_prime, double* out_re,
                         double* out_im) {
  if (auto st = require(p && out_re && out_im, "NULL argument"); st != PDHA_OK) return st;
  return guarded([&] {
    const pdha::complexd v = pdha::overlap_closed(p->p, xi - xi_prime);
    *out_re = v.real();
    *out_im = v.imag();
  });
}

pdha_status pdha_overlap_sinc_form(const pdha_params* p, double delta_xi, double* out) {
  if (auto st = require(p && out, "NULL argument"); st != PDHA_OK) return st;
  return guarded([&] { *out = pdha::overlap_sinc_form(p->p, delta_xi); });
}

pdha_status pdha_grid_create(const pdha_params* p, int n, pdha_spacing_mode mode,
                             pdha_grid** out) {
  if (auto st = require(p && out, "NULL argument"); st != PDHA_OK) return st;
  return guarded([&] {
    *out = new pdha_grid{pdha::make_grid(p->p, n,
                                         mode == PDHA_UNIFORM_IN_U
                                             ? pdha::SpacingMode::UniformInU
                                             : pdha::SpacingMode::UniformInX)};
  });
}

pdha_status pdha_grid_create_windowed(const pdha_params* p, int n, pdha_spacing_mode mode,
                                      double x_lo, double x_hi, pdha_grid** out) {
  if (auto st = require(p && out, "NULL argument"); st != PDHA_OK) return st;
  return guarded([&] {
    *out = new pdha_grid{pdha::make_grid_windowed(p->p, n,
                                                  mode == PDHA_UNIFORM_IN_U
                                                      ? pdha::SpacingMode::UniformInU
                                                      : pdha::SpacingMode::UniformInX,
                                                  x_lo, x_hi)};
  });
}

void pdha_grid_free(pdha_grid* g) { delete g; }

int pdha_grid_size(const pdha_grid* g) { return g ? g->g->n() : 0; }

pdha_status pdha_grid_nodes(const pdha_grid* g, double* x, double* u, double* w_flat,
                            double* w_deformed) {
  if (auto st = require(g != nullptr, "NULL grid"); st != PDHA_OK) return st;
  const auto& grid = *g->g;
  const auto n = static_cast<size_t>(grid.n());
  if (x) std::memcpy(x, grid.x.data(), n * sizeof(double));
  if (u) std::memcpy(u, grid.u.data(), n * sizeof(double));
  if (w_flat) std::memcpy(w_flat, grid.w_flat.data(), n * sizeof(double));
  if (w_deformed) std::memcpy(w_deformed, grid.w_deformed.data(), n * sizeof(double));
  return PDHA_OK;
}

pdha_status pdha_grid_integrate_flat(const pdha_grid* g, const double* re, const double* im,
                                     double* out_re, double* out_im) {
  if (auto st = require(g && re && out_re, "NULL argument"); st != PDHA_OK) return st;
  return guarded([&] {
    const pdha::complexd v = pdha::integrate_flat(*g->g, to_complex(re, im, g->g->n()));
    *out_re = v.real();
    if (out_im) *out_im = v.imag();
  });
}

pdha_status pdha_grid_integrate_deformed(const pdha_grid* g, const double* re,
                                         const double* im, double* out_re, double* out_im) {
  if (auto st = require(g && re && out_re, "NULL argument"); st != PDHA_OK) return st;
  return guarded([&] {
    const pdha::complexd v = pdha::integrate_deformed(*g->g, to_complex(re, im, g->g->n()));
    *out_re = v.real();
    if (out_im) *out_im = v.imag();
  });
}

pdha_status pdha_grid_eigenfunction(const pdha_grid* g, double xi, double* out_re,
                                    double* out_im) {
  if (auto st = require(g && out_re && out_im, "NULL argument"); st != PDHA_OK) return st;
  return guarded([&] {
    const pdha::WaveFunction w = pdha::eigenfunction_samples(g->g, xi);
    split_complex(w.samples, out_re, out_im);
  });
}

pdha_status pdha_grid_overlap(const pdha_grid* g, double xi, double xi_prime, double* out_re,
                              double* out_im) {
  if (auto st = require(g && out_re && out_im, "NULL argument"); st != PDHA_OK) return st;
  return guarded([&] {
    const pdha::complexd v = pdha::overlap_quadrature(*g->g, xi, xi_prime);
    *out_re = v.real();
    *out_im = v.imag();
  });
}

pdha_status pdha_forward_transform(const pdha_grid* g, const double* psi_re,
                                   const double* psi_im, pdha_picture picture,
                                   const double* xi, size_t nxi, double* out_re,
                                   double* out_im) {
  if (auto st = require(g && psi_re && psi_im && xi && out_re && out_im, "NULL argument");
      st != PDHA_OK) {
    return st;
  }
  return guarded([&] {
    pdha::WaveFunction psi = pdha::make_wavefunction(
        g->g, to_complex(psi_re, psi_im, g->g->n()),
        picture == PDHA_CAPITAL_PHI ? pdha::Picture::CapitalPhi : pdha::Picture::SmallPhi);
    psi = pdha::to_picture(psi, pdha::Picture::CapitalPhi);
    const Eigen::Map<const Eigen::VectorXd> nodes(xi, static_cast<Eigen::Index>(nxi));
    const pdha::SpectralFunction f = pdha::forward_transform(psi, nodes);
    split_complex(f.values, out_re, out_im);
  });
}

pdha_status pdha_inverse_transform(const pdha_grid* g, const double* xi, const double* f_re,
                                   const double* f_im, size_t nxi, double* out_re,
                                   double* out_im) {
  if (auto st = require(g && xi && f_re && f_im && out_re && out_im, "NULL argument");
      st != PDHA_OK) {
    return st;
  }
  return guarded([&] {
    const Eigen::Map<const Eigen::VectorXd> nodes(xi, static_cast<Eigen::Index>(nxi));
    const pdha::SpectralFunction f =
        pdha::make_spectral(nodes, to_complex(f_re, f_im, static_cast<int>(nxi)));
    const pdha::WaveFunction w = pdha::inverse_transform(f, g->g);
    split_complex(w.samples, out_re, out_im);
  });
}

pdha_status pdha_parseval_ratio(const pdha_grid* g, const double* psi_re,
                                const double* psi_im, pdha_picture picture, const double* xi,
                                const double* f_re, const double* f_im, size_t nxi,
                                double* out) {
  if (auto st = require(g && psi_re && psi_im && xi && f_re && f_im && out, "NULL argument");
      st != PDHA_OK) {
    return st;
  }
  return guarded([&] {
    pdha::WaveFunction psi = pdha::make_wavefunction(
        g->g, to_complex(psi_re, psi_im, g->g->n()),
        picture == PDHA_CAPITAL_PHI ? pdha::Picture::CapitalPhi : pdha::Picture::SmallPhi);
    const Eigen::Map<const Eigen::VectorXd> nodes(xi, static_cast<Eigen::Index>(nxi));
    const pdha::SpectralFunction f =
        pdha::make_spectral(nodes, to_complex(f_re, f_im, static_cast<int>(nxi)));
    *out = pdha::parseval_ratio(psi, f);
  });
}

pdha_status pdha_free_propagator(const pdha_params* p, double x, double x_prime,
                                 double delta_t, pdha_time_kind kind,
                                 pdha_kernel_convention convention, double* out_re,
                                 double* out_im) {
  if (auto st = require(p && out_re && out_im, "NULL argument"); st != PDHA_OK) return st;
  return guarded([&] {
    const pdha::complexd v = pdha::free_propagator_closed(
        p->p, x, x_prime, delta_t,
        kind == PDHA_EUCLIDEAN ? pdha::TimeKind::Euclidean : pdha::TimeKind::RealTime,
        convention == PDHA_BARE_FORM ? pdha::KernelConvention::Bare
                                      : pdha::KernelConvention::MeasureConsistent);
    *out_re = v.real();
    *out_im = v.imag();
  });
}

pdha_status pdha_free_action(const pdha_params* p, double x, double x_prime, double delta_t,
                             double* out) {
  if (auto st = require(p && out, "NULL argument"); st != PDHA_OK) return st;
  return guarded([&] { *out = pdha::free_action(p->p, x, x_prime, delta_t).s; });
}

pdha_status pdha_free_kinetic(const pdha_params* p, double x, double x_prime, double delta_t,
                              double* out) {
  if (auto st = require(p && out, "NULL argument"); st != PDHA_OK) return st;
  return guarded([&] { *out = pdha::free_kinetic(p->p, x, x_prime, delta_t).s; });
}

pdha_status pdha_standard_baseline(const pdha_params* p, double x, double x_prime,
                                   double delta_t, pdha_time_kind kind, double* kernel_re,
                                   double* kernel_im, double* action, double* kinetic) {
  if (auto st = require(p != nullptr, "NULL params"); st != PDHA_OK) return st;
  return guarded([&] {
    const pdha::BaselineTriple t = pdha::standard_baseline(
        p->p, x, x_prime, delta_t,
        kind == PDHA_EUCLIDEAN ? pdha::TimeKind::Euclidean : pdha::TimeKind::RealTime);
    if (kernel_re) *kernel_re = t.kernel.real();
    if (kernel_im) *kernel_im = t.kernel.imag();
    if (action) *action = t.action;
    if (kinetic) *kinetic = t.kinetic;
  });
}

pdha_status pdha_kernel_free_closed(const pdha_grid* g, double delta_t, pdha_time_kind kind,
                                    pdha_kernel_convention convention, pdha_kernel** out) {
  if (auto st = require(g && out, "NULL argument"); st != PDHA_OK) return st;
  return guarded([&] {
    *out = new pdha_kernel{pdha::free_kernel_closed(
        g->g, delta_t,
        kind == PDHA_EUCLIDEAN ? pdha::TimeKind::Euclidean : pdha::TimeKind::RealTime,
        convention == PDHA_BARE_FORM ? pdha::KernelConvention::Bare
                                      : pdha::KernelConvention::MeasureConsistent)};
  });
}

pdha_status pdha_kernel_timeslice(const pdha_grid* g, const double* potential, double delta_t,
                                  int slices, int symmetric, pdha_kernel** out) {
  if (auto st = require(g && out, "NULL argument"); st != PDHA_OK) return st;
  return guarded([&] {
    Eigen::VectorXd v = Eigen::VectorXd::Zero(g->g->n());
    if (potential) v = Eigen::Map<const Eigen::VectorXd>(potential, g->g->n());
    *out = new pdha_kernel{pdha::timeslice_propagator(g->g, v, delta_t, slices,
                                                      pdha::TimeKind::Euclidean,
                                                      symmetric != 0)};
  });
}

pdha_status pdha_kernel_spectral(const pdha_grid* g, const double* potential, double delta_t,
                                 pdha_time_kind kind, pdha_kernel** out) {
  if (auto st = require(g && out, "NULL argument"); st != PDHA_OK) return st;
  return guarded([&] {
    Eigen::VectorXd v = Eigen::VectorXd::Zero(g->g->n());
    if (potential) v = Eigen::Map<const Eigen::VectorXd>(potential, g->g->n());
    const pdha::OperatorMatrix h = pdha::hamiltonian_matrix(g->g, v);
    *out = new pdha_kernel{pdha::spectral_propagator(
        g->g, h, delta_t,
        kind == PDHA_EUCLIDEAN ? pdha::TimeKind::Euclidean : pdha::TimeKind::RealTime)};
  });
}

void pdha_kernel_free(pdha_kernel* k) { delete k; }

pdha_status pdha_kernel_entry(const pdha_kernel* k, int i, int j, double* out_re,
                              double* out_im) {
  if (auto st = require(k && out_re && out_im, "NULL argument"); st != PDHA_OK) return st;
  const int n = k->k.grid->n();
  if (auto st = require(i >= 0 && i < n && j >= 0 && j < n, "kernel index out of range");
      st != PDHA_OK) {
    return st;
  }
  *out_re = k->k.k(i, j).real();
  *out_im = k->k.k(i, j).imag();
  return PDHA_OK;
}

pdha_status pdha_kernel_compose(const pdha_kernel* a, const pdha_kernel* b,
                                pdha_kernel** out) {
  if (auto st = require(a && b && out, "NULL argument"); st != PDHA_OK) return st;
  return guarded([&] { *out = new pdha_kernel{pdha::compose(a->k, b->k)}; });
}

pdha_status pdha_ft_propagator(const pdha_kernel* k, double xi, double xi_prime,
                               double* out_re, double* out_im) {
  if (auto st = require(k && out_re && out_im, "NULL argument"); st != PDHA_OK) return st;
  return guarded([&] {
    const pdha::complexd v = pdha::ft_propagator(k->k, xi, xi_prime);
    *out_re = v.real();
    *out_im = v.imag();
  });
}

pdha_status pdha_bound_scan_json(const pdha_params* p, const double* xs, size_t count,
                                 double delta_t, char** out_json) {
  if (auto st = require(p && xs && out_json, "NULL argument"); st != PDHA_OK) return st;
  return guarded([&] {
    const auto rows = pdha::bound_scan(p->p, std::span<const double>(xs, count), delta_t);
    *out_json = copy_string(pdha::bound_scan_to_json(rows));
  });
}

pdha_status pdha_trajectory_integrate(const pdha_params* p, const double* poly_coeffs,
                                      size_t ncoeff, double x0, double xi0, double t_end,
                                      double dt, pdha_trajectory** out) {
  if (auto st = require(p && out, "NULL argument"); st != PDHA_OK) return st;
  return guarded([&] {
    pdha::Potential pot = poly_potential(poly_coeffs, poly_coeffs ? ncoeff : 0);
    pdha::Trajectory traj =
        pdha::integrate_trajectory(p->p, pot, pdha::PhaseState{x0, xi0, 0.0}, t_end, dt);
    *out = new pdha_trajectory{p->p, std::move(pot), std::move(traj)};
  });
}

void pdha_trajectory_free(pdha_trajectory* t) { delete t; }

size_t pdha_trajectory_size(const pdha_trajectory* t) {
  return t ? t->traj.states.size() : 0;
}

int pdha_trajectory_boundary_event(const pdha_trajectory* t) {
  return (t && t->traj.boundary_event) ? 1 : 0;
}

pdha_status pdha_trajectory_data(const pdha_trajectory* t, double* time, double* x, double* xi,
                                 double* u, double* h) {
  if (auto st = require(t != nullptr, "NULL trajectory"); st != PDHA_OK) return st;
  return guarded([&] {
    for (size_t i = 0; i < t->traj.states.size(); ++i) {
      const pdha::PhaseState& s = t->traj.states[i];
      if (time) time[i] = s.t;
      if (x) x[i] = s.x;
      if (xi) xi[i] = s.xi;
      if (u) u[i] = pdha::u_of_x(t->params, s.x);
      if (h) h[i] = pdha::hamiltonian_value(t->params, t->potential, s);
    }
  });
}

pdha_status pdha_trajectory_action(const pdha_trajectory* t, double* out) {
  if (auto st = require(t && out, "NULL argument"); st != PDHA_OK) return st;
  return guarded([&] { *out = pdha::action_along_path(t->params, t->traj, t->potential); });
}

pdha_status pdha_trajectory_energy_drift(const pdha_trajectory* t, double* out) {
  if (auto st = require(t && out, "NULL argument"); st != PDHA_OK) return st;
  return guarded([&] { *out = pdha::energy_drift(t->params, t->traj, t->potential); });
}

pdha_status pdha_verify_run(const char* config_json, char** out_report_json,
                            int* out_all_pass) {
  if (auto st = require(out_report_json && out_all_pass, "NULL argument"); st != PDHA_OK) {
    return st;
  }
  return guarded([&] {
    pdha::VerifyConfig cfg;
    if (config_json != nullptr && config_json[0] != '\0') {
      const nlohmann::json j = nlohmann::json::parse(config_json);
      if (!j.is_object()) throw pdha::ValidationError("config must be a JSON object");
      if (j.contains("tau")) cfg.tau = j.at("tau").get<double>();
      if (j.contains("hbar")) cfg.hbar = j.at("hbar").get<double>();
      if (j.contains("mass")) cfg.mass = j.at("mass").get<double>();
      if (j.contains("n")) cfg.n = j.at("n").get<int>();
      if (j.contains("delta_t")) cfg.delta_t = j.at("delta_t").get<double>();
      if (j.contains("slices")) cfg.slices = j.at("slices").get<int>();
      if (j.contains("interior_depth")) cfg.interior_depth = j.at("interior_depth").get<int>();
      if (j.contains("tolerances")) {
        for (const auto& [key, value] : j.at("tolerances").items()) {
          cfg.tolerance_overrides[key] = value.get<double>();
        }
      }
    }
    const pdha::VerifyReport report = pdha::run_verification(cfg);
    *out_report_json = copy_string(pdha::verify_report_to_json(report));
    *out_all_pass = report.all_pass ? 1 : 0;
  });
}

}  // extern "C"

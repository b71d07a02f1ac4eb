#include "pdha/grid.hpp"

#include <cmath>
#include <string>
#include <utility>

namespace pdha {
namespace {

constexpr int kMinNodes = 16;

Eigen::VectorXd trapezoid_endpoint_mask(int n) {
  Eigen::VectorXd e = Eigen::VectorXd::Ones(n);
  e[0] = 0.5;
  e[n - 1] = 0.5;
  return e;
}

GridPtr build(const DeformationParams& params, int n, SpacingMode mode, double x_lo,
              double x_hi) {
  if (n < kMinNodes) {
    throw ValidationError("grid needs at least " + std::to_string(kMinNodes) + " nodes, got " +
                          std::to_string(n));
  }
  if (!(x_lo < x_hi) || x_lo < -params.ell_max - 1e-12 * params.ell_max ||
      x_hi > params.ell_max + 1e-12 * params.ell_max) {
    throw ValidationError("grid window must satisfy -ell_max <= x_lo < x_hi <= ell_max");
  }

  auto g = std::make_shared<Grid>();
  g->params = params;
  g->mode = mode;
  g->x.resize(n);
  g->u.resize(n);

  if (mode == SpacingMode::UniformInU) {
    const double u_lo = u_of_x(params, x_lo);
    const double u_hi = u_of_x(params, x_hi);
    const double h = (u_hi - u_lo) / (n - 1);
    for (int i = 0; i < n; ++i) g->u[i] = u_lo + h * i;
    g->u[n - 1] = u_hi;
    for (int i = 0; i < n; ++i) g->x[i] = x_of_u(params, g->u[i]);
    g->x[0] = x_lo;
    g->x[n - 1] = x_hi;
  } else {
    const double h = (x_hi - x_lo) / (n - 1);
    for (int i = 0; i < n; ++i) g->x[i] = x_lo + h * i;
    g->x[n - 1] = x_hi;
    for (int i = 0; i < n; ++i) g->u[i] = u_of_x(params, g->x[i]);
  }

  g->f.resize(n);
  for (int i = 0; i < n; ++i) g->f[i] = deformation_factor(params, g->x[i]);

  const Eigen::VectorXd e = trapezoid_endpoint_mask(n);
  if (mode == SpacingMode::UniformInU) {
    // Trapezoid in u: the deformed measure is exactly uniform there, and the
    // flat measure picks up the Jacobian dx = f du.
    const double h = g->u_step();
    g->w_deformed = h * e;
    g->w_flat = h * e.cwiseProduct(g->f);
  } else {
    const double h = g->x_step();
    g->w_flat = h * e;
    g->w_deformed = h * e.cwiseQuotient(g->f);
  }
  return g;
}

complexd weighted_sum(const Eigen::VectorXd& w, const Eigen::VectorXcd& v) {
  Eigen::VectorXcd prod = w.cast<complexd>().cwiseProduct(v);
  return pairwise_sum(prod.data(), static_cast<std::size_t>(prod.size()));
}

}  // namespace

GridPtr make_grid(const DeformationParams& params, int n, SpacingMode mode) {
  return build(params, n, mode, -params.ell_max, params.ell_max);
}

GridPtr make_grid_windowed(const DeformationParams& params, int n, SpacingMode mode,
                           double x_lo, double x_hi) {
  return build(params, n, mode, x_lo, x_hi);
}

bool grids_identical(const Grid& a, const Grid& b) {
  if (&a == &b) return true;
  return a.mode == b.mode && a.n() == b.n() && a.params.tau == b.params.tau &&
         a.params.hbar == b.params.hbar && a.params.mass == b.params.mass && a.x == b.x;
}

WaveFunction make_wavefunction(GridPtr grid, Eigen::VectorXcd samples, Picture picture) {
  if (!grid) throw ValidationError("wavefunction requires a grid");
  if (samples.size() != grid->n()) {
    throw ValidationError("sample count " + std::to_string(samples.size()) +
                          " does not match grid size " + std::to_string(grid->n()));
  }
  return WaveFunction{std::move(grid), std::move(samples), picture};
}

WaveFunction to_picture(const WaveFunction& w, Picture target) {
  if (w.picture == target) return w;
  WaveFunction out;
  out.grid = w.grid;
  out.picture = target;
  const Eigen::VectorXd sqrt_f = w.grid->f.cwiseSqrt();
  if (target == Picture::SmallPhi) {
    out.samples = w.samples.cwiseProduct(sqrt_f.cast<complexd>());
  } else {
    out.samples = w.samples.cwiseQuotient(sqrt_f.cast<complexd>());
  }
  return out;
}

complexd integrate_flat(const Grid& g, const Eigen::VectorXcd& samples) {
  if (samples.size() != g.n()) {
    throw ValidationError("integrate_flat: sample count does not match grid");
  }
  return weighted_sum(g.w_flat, samples);
}

complexd integrate_deformed(const Grid& g, const Eigen::VectorXcd& samples) {
  if (samples.size() != g.n()) {
    throw ValidationError("integrate_deformed: sample count does not match grid");
  }
  return weighted_sum(g.w_deformed, samples);
}

complexd inner_product(const WaveFunction& a, const WaveFunction& b) {
  if (a.picture != Picture::CapitalPhi || b.picture != Picture::CapitalPhi) {
    throw ValidationError("inner_product expects capital-Phi pictures");
  }
  if (!grids_identical(*a.grid, *b.grid)) {
    throw ValidationError("inner_product: wavefunctions live on different grids");
  }
  return integrate_flat(*a.grid, a.samples.conjugate().cwiseProduct(b.samples));
}

complexd inner_product_metric(const WaveFunction& a, const WaveFunction& b) {
  if (a.picture != Picture::SmallPhi || b.picture != Picture::SmallPhi) {
    throw ValidationError("inner_product_metric expects small-phi pictures");
  }
  if (!grids_identical(*a.grid, *b.grid)) {
    throw ValidationError("inner_product_metric: wavefunctions live on different grids");
  }
  return integrate_deformed(*a.grid, a.samples.conjugate().cwiseProduct(b.samples));
}

double norm(const WaveFunction& w) {
  const Eigen::VectorXcd density = w.samples.conjugate().cwiseProduct(w.samples);
  const complexd n2 = (w.picture == Picture::CapitalPhi) ? integrate_flat(*w.grid, density)
                                                         : integrate_deformed(*w.grid, density);
  return std::sqrt(std::max(0.0, n2.real()));
}

}  // namespace pdha

#pragma once

#include <Eigen/Dense>
#include <memory>

#include "pdha/deformation.hpp"

namespace pdha {

enum class SpacingMode {
  UniformInU,  // equally spaced flat-coordinate nodes (default)
  UniformInX,  // equally spaced position nodes
};

enum class Picture {
  CapitalPhi,  // flat measure dx; components Phi = phi / sqrt(f)
  SmallPhi,    // deformed measure dx/f
};

/// Discretization of the position domain. Carries both the x-nodes and their
/// flat-coordinate images plus composite-trapezoid weights for the two
/// measures of the theory:
///   w_flat     ~ integral dx
///   w_deformed ~ integral dx / f(x)
///
/// For UniformInU grids the deformed measure is exactly uniform, so
/// sum(w_deformed) reproduces u_max - u_min to rounding.
struct Grid {
  DeformationParams params;
  SpacingMode mode = SpacingMode::UniformInU;
  Eigen::VectorXd x;           // strictly increasing, inside [-ell_max, +ell_max]
  Eigen::VectorXd u;           // u_of_x(x), strictly increasing
  Eigen::VectorXd w_flat;      // quadrature weights for integral dx
  Eigen::VectorXd w_deformed;  // quadrature weights for integral dx/f
  Eigen::VectorXd f;           // cached f(x) at the nodes

  int n() const { return static_cast<int>(x.size()); }
  double x_step() const { return (x[n() - 1] - x[0]) / (n() - 1); }
  double u_step() const { return (u[n() - 1] - u[0]) / (n() - 1); }
};

using GridPtr = std::shared_ptr<const Grid>;

/// Grid over the full domain [-ell_max, +ell_max]. Requires n >= 16.
GridPtr make_grid(const DeformationParams& params, int n,
                  SpacingMode mode = SpacingMode::UniformInU);

/// Grid over a sub-interval [x_lo, x_hi] of the domain. Used for studies of
/// localized states at small tau, where the full domain would be prohibitively
/// wide relative to the structure of interest.
GridPtr make_grid_windowed(const DeformationParams& params, int n, SpacingMode mode,
                           double x_lo, double x_hi);

bool grids_identical(const Grid& a, const Grid& b);

/// Complex samples on a grid tagged with their representation convention.
struct WaveFunction {
  GridPtr grid;
  Eigen::VectorXcd samples;
  Picture picture = Picture::CapitalPhi;
};

WaveFunction make_wavefunction(GridPtr grid, Eigen::VectorXcd samples, Picture picture);

/// Convert between the two pictures: phi = sqrt(f) * Phi, Phi = phi / sqrt(f).
WaveFunction to_picture(const WaveFunction& w, Picture target);

/// Quadrature of g over the flat measure dx. Deterministic pairwise reduction.
complexd integrate_flat(const Grid& g, const Eigen::VectorXcd& samples);

/// Quadrature of g over the deformed measure dx/f.
complexd integrate_deformed(const Grid& g, const Eigen::VectorXcd& samples);

/// <A|B> = integral dx A*(x) B(x); both arguments must be capital-Phi samples
/// on the same grid.
complexd inner_product(const WaveFunction& a, const WaveFunction& b);

/// <a|b>_metric = integral dx/f a*(x) b(x); both arguments must be small-phi
/// samples on the same grid. Equals inner_product of the converted pictures.
complexd inner_product_metric(const WaveFunction& a, const WaveFunction& b);

/// L2 norm under the measure matching the wavefunction's picture.
double norm(const WaveFunction& w);

}  // namespace pdha

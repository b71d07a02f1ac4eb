#include "pdha/eigenstates.hpp"

#include <cmath>
#include <utility>

#include "pdha/operators.hpp"

namespace pdha {
namespace {

using Eigen::VectorXcd;
using Eigen::VectorXd;

constexpr complexd kI{0.0, 1.0};

/// Trapezoid weights on an arbitrary strictly increasing axis.
VectorXd trapezoid_weights(const VectorXd& t) {
  const int n = static_cast<int>(t.size());
  VectorXd w(n);
  w[0] = 0.5 * (t[1] - t[0]);
  for (int i = 1; i + 1 < n; ++i) w[i] = 0.5 * (t[i + 1] - t[i - 1]);
  w[n - 1] = 0.5 * (t[n - 1] - t[n - 2]);
  return w;
}

}  // namespace

double normalization_constant(const DeformationParams& p) {
  return std::sqrt(p.tau * kSqrt3 / kPi);
}

complexd eigenfunction(const DeformationParams& p, double xi, double x) {
  if (std::abs(x) > p.ell_max * (1.0 + 1e-12)) {
    throw DomainError("eigenfunction: |x| exceeds ell_max");
  }
  const double c = normalization_constant(p);
  const double f = deformation_factor(p, x);
  return std::polar(c / std::sqrt(f), xi * u_of_x(p, x) / p.hbar);
}

WaveFunction eigenfunction_samples(GridPtr grid, double xi) {
  const int n = grid->n();
  VectorXcd v(n);
  const double c = normalization_constant(grid->params);
  const double inv_hbar = 1.0 / grid->params.hbar;
  for (int i = 0; i < n; ++i) {
    v[i] = std::polar(c / std::sqrt(grid->f[i]), xi * grid->u[i] * inv_hbar);
  }
  return make_wavefunction(std::move(grid), std::move(v), Picture::CapitalPhi);
}

complexd overlap_quadrature(const Grid& g, double xi, double xi_prime) {
  const double a = (xi - xi_prime) / g.params.hbar;
  const double c2 = g.params.tau * kSqrt3 / kPi;
  if (a == 0.0) {
    return c2 * (g.u[g.n() - 1] - g.u[0]);
  }
  // Exact antiderivative of exp(i a u) on every grid interval; summed
  // pairwise for determinism.
  const int n = g.n();
  VectorXcd pieces(n - 1);
  for (int j = 0; j + 1 < n; ++j) {
    const complexd phase = std::polar(1.0, a * g.u[j]);
    pieces[j] = phase * expm1c(kI * a * (g.u[j + 1] - g.u[j]));
  }
  const complexd total = pairwise_sum(pieces.data(), static_cast<std::size_t>(n - 1));
  return c2 * total / (kI * a);
}

complexd overlap_closed(const DeformationParams& p, double delta_xi) {
  const double a = delta_xi / p.hbar;
  const double c2 = p.tau * kSqrt3 / kPi;
  if (a == 0.0) return c2 * p.u_length();
  const complexd lo = std::polar(1.0, a * p.u_min);
  return c2 * lo * expm1c(kI * a * p.u_length()) / (kI * a);
}

double overlap_sinc_form(const DeformationParams& p, double delta_xi) {
  const double s = kPi * delta_xi / (p.tau * p.hbar * kSqrt3);
  if (std::abs(s) < 1e-8) return 1.0 - s * s / 6.0;
  return std::sin(s) / s;
}

std::vector<double> momentum_lattice(const DeformationParams& p, int n_lo, int n_hi) {
  if (n_lo > n_hi) throw ValidationError("momentum_lattice: n_lo must not exceed n_hi");
  std::vector<double> xs;
  xs.reserve(static_cast<std::size_t>(n_hi - n_lo + 1));
  const double step = p.tau * p.hbar * kSqrt3;
  for (int k = n_lo; k <= n_hi; ++k) xs.push_back(step * k);
  return xs;
}

SpectralFunction make_spectral(VectorXd xi_nodes, VectorXcd values) {
  if (xi_nodes.size() == 0) throw ValidationError("spectral function needs a nonempty window");
  if (xi_nodes.size() != values.size()) {
    throw ValidationError("spectral function: node/value count mismatch");
  }
  for (int i = 0; i + 1 < xi_nodes.size(); ++i) {
    if (!(xi_nodes[i] < xi_nodes[i + 1])) {
      throw ValidationError("spectral function: xi nodes must be strictly increasing");
    }
  }
  SpectralFunction f;
  f.xi_lo = xi_nodes[0];
  f.xi_hi = xi_nodes[xi_nodes.size() - 1];
  f.xi = std::move(xi_nodes);
  f.values = std::move(values);
  return f;
}

VectorXd uniform_xi_window(double half_width, int count) {
  if (!(half_width > 0.0) || count < 3) {
    throw ValidationError("xi window needs positive width and at least 3 nodes");
  }
  return VectorXd::LinSpaced(count, -half_width, half_width);
}

SpectralFunction forward_transform(const WaveFunction& psi, const VectorXd& xi_nodes) {
  if (psi.picture != Picture::CapitalPhi) {
    throw ValidationError("forward_transform expects a capital-Phi wavefunction");
  }
  if (xi_nodes.size() == 0) throw ValidationError("forward_transform: empty xi window");
  const Grid& g = *psi.grid;
  const WaveFunction small = to_picture(psi, Picture::SmallPhi);
  const double c = normalization_constant(g.params);
  const double inv_hbar = 1.0 / g.params.hbar;

  // integral dx Psi f^{-1/2} e^{-i xi u/hbar} = integral du/f-measure of the
  // small-phi samples against the plane wave.
  VectorXcd weighted = g.w_deformed.cast<complexd>().cwiseProduct(small.samples);
  VectorXcd out(xi_nodes.size());
  VectorXcd terms(g.n());
  for (int m = 0; m < xi_nodes.size(); ++m) {
    const double k = xi_nodes[m] * inv_hbar;
    for (int i = 0; i < g.n(); ++i) {
      terms[i] = weighted[i] * std::polar(1.0, -k * g.u[i]);
    }
    out[m] = c * pairwise_sum(terms.data(), static_cast<std::size_t>(g.n()));
  }
  return make_spectral(xi_nodes, std::move(out));
}

WaveFunction inverse_transform(const SpectralFunction& f, GridPtr grid) {
  if (f.xi.size() < 2) throw ValidationError("inverse_transform: window too small");
  const Grid& g = *grid;
  const double pref =
      1.0 / (g.params.hbar * std::sqrt(4.0 * kPi * g.params.tau * kSqrt3));
  const double inv_hbar = 1.0 / g.params.hbar;
  const VectorXd w_xi = trapezoid_weights(f.xi);
  const VectorXcd weighted = w_xi.cast<complexd>().cwiseProduct(f.values);

  VectorXcd out(g.n());
  VectorXcd terms(f.xi.size());
  for (int i = 0; i < g.n(); ++i) {
    const double u = g.u[i];
    for (int m = 0; m < f.xi.size(); ++m) {
      terms[m] = weighted[m] * std::polar(1.0, f.xi[m] * u * inv_hbar);
    }
    out[i] = pref / std::sqrt(g.f[i]) *
             pairwise_sum(terms.data(), static_cast<std::size_t>(terms.size()));
  }
  return make_wavefunction(std::move(grid), std::move(out), Picture::CapitalPhi);
}

double parseval_ratio(const WaveFunction& psi, const SpectralFunction& f) {
  const VectorXd w_xi = trapezoid_weights(f.xi);
  VectorXd dens = f.values.cwiseAbs2();
  double num = 0.0;
  {
    VectorXd prod = w_xi.cwiseProduct(dens);
    num = pairwise_sum(prod.data(), static_cast<std::size_t>(prod.size()));
  }
  const WaveFunction cap = to_picture(psi, Picture::CapitalPhi);
  const double den =
      integrate_flat(*cap.grid, cap.samples.conjugate().cwiseProduct(cap.samples)).real();
  return num / den;
}

SpectralFunction apply_operator_spectral(GridPtr grid, SpectralOperator op,
                                         const SpectralFunction& f,
                                         const VectorXd* potential) {
  WaveFunction psi = inverse_transform(f, grid);
  const Grid& g = *grid;
  switch (op) {
    case SpectralOperator::Position:
      psi.samples = apply_position(g, psi.samples);
      break;
    case SpectralOperator::Momentum:
      psi.samples = apply_momentum_hermitian_consistent(g, psi.samples);
      break;
    case SpectralOperator::Hamiltonian: {
      Eigen::VectorXcd hv = apply_kinetic_compact_consistent(g, psi.samples);
      if (potential != nullptr) {
        if (potential->size() != g.n()) {
          throw ValidationError("apply_operator_spectral: potential does not match grid");
        }
        hv += potential->cast<complexd>().cwiseProduct(psi.samples);
      }
      psi.samples = std::move(hv);
      break;
    }
  }
  return forward_transform(psi, f.xi);
}

}  // namespace pdha

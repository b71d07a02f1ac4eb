#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <sstream>

#include "pdha/io.hpp"
#include "pdha/operators.hpp"
#include "pdha/propagator.hpp"

using namespace pdha;

namespace {

const DeformationParams kParams = make_params(0.1, 1.0, 1.0);

}  // namespace

TEST_CASE("closed free kernel: coincidence limit and validation") {
  const double dt = 0.7;
  const double mag = std::sqrt(kParams.mass / (2.0 * kPi * kParams.hbar * dt));

  const complexd eu = free_propagator_closed(kParams, 2.0, 2.0, dt, TimeKind::Euclidean);
  CHECK(eu.real() == doctest::Approx(mag).epsilon(1e-14));
  CHECK(eu.imag() == 0.0);

  const complexd rt = free_propagator_closed(kParams, 2.0, 2.0, dt, TimeKind::RealTime);
  CHECK(std::abs(rt) == doctest::Approx(mag).epsilon(1e-14));
  CHECK(std::arg(rt) == doctest::Approx(-kPi / 4.0).epsilon(1e-12));

  CHECK_THROWS_AS(free_propagator_closed(kParams, 0.0, 1.0, 0.0, TimeKind::Euclidean),
                  ValidationError);
  CHECK_THROWS_AS(free_action(kParams, 0.0, 1.0, -1.0), ValidationError);
}

TEST_CASE("exponent identity: arctan form equals m du^2/(2 dt)") {
  const double dt = 1.0;
  for (double x : {-9.5, -3.0, 0.0, 2.7, 5.0, 9.9}) {
    for (double xp : {-8.0, -1.0, 1.3, 6.6}) {
      const double s = free_action(kParams, x, xp, dt).s;
      const double du = u_of_x(kParams, x) - u_of_x(kParams, xp);
      const double flat = 0.5 * kParams.mass * du * du / dt;
      CHECK(s == doctest::Approx(flat).epsilon(1e-12));
    }
  }
  // a worked pair crossing the domain center
  const double s05 = free_action(kParams, 0.0, 5.0, 1.0).s;
  const double du = u_of_x(kParams, 5.0);
  CHECK(s05 == doctest::Approx(0.5 * du * du).epsilon(1e-12));
}

TEST_CASE("free kinetic is the action divided by dt") {
  CHECK(free_kinetic(kParams, 1.0, -2.0, 0.5).s ==
        doctest::Approx(free_action(kParams, 1.0, -2.0, 0.5).s / 0.5).epsilon(1e-14));
  CHECK(free_kinetic(kParams, 3.0, 3.0, 0.5).s == 0.0);
}

TEST_CASE("small-tau limit reproduces the standard kernel and action") {
  const DeformationParams p0 = make_params(1e-6, 1.0, 1.0);
  const double dt = 1.0;
  for (auto [x, xp] : {std::pair{0.3, -0.4}, {1.0, 0.2}, {-0.8, 0.5}}) {
    const complexd deformed =
        free_propagator_closed(p0, x, xp, dt, TimeKind::RealTime, KernelConvention::Bare);
    const BaselineTriple base = standard_baseline(p0, x, xp, dt, TimeKind::RealTime);
    CHECK(std::abs(deformed - base.kernel) <= 1e-6 * std::abs(base.kernel));
    CHECK(free_action(p0, x, xp, dt).s == doctest::Approx(base.action).epsilon(1e-5));
  }
}

TEST_CASE("standard baseline scalings") {
  const double dt = 2.0;
  const BaselineTriple same = standard_baseline(kParams, 1.0, 1.0, dt, TimeKind::Euclidean);
  CHECK(same.action == 0.0);
  CHECK(same.kinetic == 0.0);
  CHECK(same.kernel.real() ==
        doctest::Approx(std::sqrt(kParams.mass / (2.0 * kPi * kParams.hbar * dt))));

  const double s1 = standard_baseline(kParams, 2.0, -1.0, dt, TimeKind::Euclidean).action;
  const double s2 = standard_baseline(kParams, 4.0, -2.0, dt, TimeKind::Euclidean).action;
  CHECK(s2 == doctest::Approx(4.0 * s1).epsilon(1e-14));

  const DeformationParams heavier = make_params(0.1, 1.0, 3.0);
  CHECK(standard_baseline(heavier, 2.0, -1.0, dt, TimeKind::Euclidean).action ==
        doctest::Approx(3.0 * s1).epsilon(1e-14));
}

TEST_CASE("measure-consistent convention divides by sqrt(f f')") {
  const double x = 1.0, xp = 4.0, dt = 1.0;
  const complexd bare =
      free_propagator_closed(kParams, x, xp, dt, TimeKind::Euclidean, KernelConvention::Bare);
  const complexd mc = free_propagator_closed(kParams, x, xp, dt, TimeKind::Euclidean,
                                             KernelConvention::MeasureConsistent);
  const double ff = deformation_factor(kParams, x) * deformation_factor(kParams, xp);
  CHECK(mc.real() == doctest::Approx(bare.real() / std::sqrt(ff)).epsilon(1e-14));
}

TEST_CASE("timeslice propagator: validation and convergence to the closed form") {
  const GridPtr g = make_grid(kParams, 513);
  const Eigen::VectorXd v0 = Eigen::VectorXd::Zero(g->n());
  CHECK_THROWS_AS(timeslice_propagator(g, v0, 1.0, 0, TimeKind::Euclidean), ValidationError);
  CHECK_THROWS_AS(timeslice_propagator(g, v0, 1.0, 4, TimeKind::RealTime), ValidationError);
  CHECK_THROWS_AS(timeslice_propagator(g, v0, -1.0, 4, TimeKind::Euclidean), ValidationError);

  const int col = static_cast<int>(std::lround(0.55 * (g->n() - 1)));
  const int row = static_cast<int>(std::lround(0.40 * (g->n() - 1)));
  for (int slices : {8, 64}) {
    const Eigen::VectorXd column = timeslice_column(*g, v0, 1.0, slices, col);
    const complexd cf =
        free_propagator_closed(kParams, g->x[row], g->x[col], 1.0, TimeKind::Euclidean,
                               KernelConvention::MeasureConsistent);
    CHECK(std::abs(column[row] - cf.real()) <= 1e-3 * std::abs(cf.real()));
  }

  // full matrix agrees with the column path
  const Kernel k = timeslice_propagator(g, v0, 1.0, 8, TimeKind::Euclidean);
  const Eigen::VectorXd column = timeslice_column(*g, v0, 1.0, 8, col);
  CHECK((k.k.col(col).real() - column).cwiseAbs().maxCoeff() <= 1e-13);
}

TEST_CASE("timeslice composition and short-time identity") {
  const GridPtr g = make_grid(kParams, 513);
  const Eigen::VectorXd v0 = Eigen::VectorXd::Zero(g->n());

  const Kernel whole = timeslice_propagator(g, v0, 1.0, 8, TimeKind::Euclidean);
  const Kernel half = timeslice_propagator(g, v0, 0.5, 4, TimeKind::Euclidean);
  const Kernel glued = compose(half, half);
  CHECK((glued.k - whole.k).norm() / whole.k.norm() <= 1e-6);
  CHECK(glued.delta_t == doctest::Approx(1.0));

  // K(eps) approaches the flat identity kernel on smooth states at O(eps).
  const WaveFunction psi = make_gaussian_in_u(
      g, kParams.u_min + 0.5 * kParams.u_length(), 0.06 * kParams.u_length(), 0.0);
  auto identity_error = [&](double eps) {
    const Kernel ks = timeslice_propagator(g, v0, eps, 1, TimeKind::Euclidean);
    const WaveFunction out = propagate(ks, psi);
    return (out.samples - psi.samples).cwiseAbs().maxCoeff() /
           psi.samples.cwiseAbs().maxCoeff();
  };
  const double e1 = identity_error(2e-3);
  const double e2 = identity_error(1e-3);
  CHECK(e1 <= 1e-2);
  CHECK(e1 / e2 >= 1.8);
}

TEST_CASE("spectral kernel properties") {
  const GridPtr g = make_grid(kParams, 513);
  const Eigen::VectorXd v0 = Eigen::VectorXd::Zero(g->n());
  const FlatSpectralBasis basis = flat_spectral_basis(hamiltonian_matrix(g, v0));
  const double dt = 1.0;

  const Kernel k = spectral_kernel(basis, dt, TimeKind::RealTime);
  const Kernel ktk = compose(kernel_adjoint(k), k);
  const Eigen::VectorXd sw = g->w_flat.cwiseSqrt();
  const Eigen::MatrixXcd scaled =
      sw.cast<complexd>().asDiagonal() * ktk.k * sw.cast<complexd>().asDiagonal();
  CHECK((scaled - Eigen::MatrixXcd::Identity(g->n(), g->n())).norm() / std::sqrt(g->n()) <=
        1e-8);

  const Kernel k1 = spectral_kernel(basis, 0.6, TimeKind::Euclidean);
  const Kernel k2 = spectral_kernel(basis, 0.4, TimeKind::Euclidean);
  CHECK((compose(k1, k2).k - spectral_kernel(basis, 1.0, TimeKind::Euclidean).k).norm() /
            spectral_kernel(basis, 1.0, TimeKind::Euclidean).k.norm() <=
        1e-10);

  CHECK((kernel_adjoint(k).k - spectral_kernel(basis, -dt, TimeKind::RealTime).k).norm() /
            k.k.norm() <=
        1e-10);

  CHECK_THROWS_AS(spectral_kernel(basis, -1.0, TimeKind::Euclidean), ValidationError);
  // non-Hermitian input rejected
  const OperatorMatrix bad{g, momentum_matrix_nonhermitian(g).m, Picture::CapitalPhi, "bad"};
  CHECK_THROWS_AS(spectral_propagator(g, bad, 1.0, TimeKind::Euclidean), ValidationError);
}

TEST_CASE("symmetric split converges at second order against the spectral oracle") {
  const GridPtr g = make_grid(kParams, 513);
  const double L = kParams.u_length();
  const double omega = 165.0 * kParams.hbar / (kParams.mass * L * L);
  const double u_mid = 0.5 * (kParams.u_min + kParams.u_max);
  Eigen::VectorXd pot(g->n());
  for (int i = 0; i < g->n(); ++i) {
    const double du = g->u[i] - u_mid;
    pot[i] = 0.5 * kParams.mass * omega * omega * du * du;
  }
  const double dt = 2.0 / omega;
  const Kernel oracle = spectral_propagator(g, hamiltonian_matrix(g, pot), dt,
                                            TimeKind::Euclidean);
  const int col = static_cast<int>(std::lround(0.45 * (g->n() - 1)));
  const int row = static_cast<int>(std::lround(0.52 * (g->n() - 1)));
  auto error_at = [&](int slices, bool symmetric) {
    const Eigen::VectorXd column = timeslice_column(*g, pot, dt, slices, col, symmetric);
    const double ref = oracle.k(row, col).real();
    return std::abs(column[row] - ref) / std::abs(ref);
  };
  const double s4 = error_at(4, true);
  const double s8 = error_at(8, true);
  const double s16 = error_at(16, true);
  CHECK(s4 / s8 >= 1.9);
  CHECK(s8 / s16 >= 1.9);

  // the asymmetric endpoint variant is first order: the doubling ratio sits
  // near 2, visibly below the symmetric split's 4
  const double a8 = error_at(8, false);
  const double a16 = error_at(16, false);
  const double a32 = error_at(32, false);
  CHECK(a8 / a16 >= 1.5);
  CHECK(a16 / a32 >= 1.5);
  CHECK(a16 / a32 <= 3.0);
}

TEST_CASE("momentum-side propagator concentrates on the diagonal") {
  const GridPtr g = make_grid(kParams, 513);
  const Eigen::VectorXd v0 = Eigen::VectorXd::Zero(g->n());
  const FlatSpectralBasis basis = flat_spectral_basis(hamiltonian_matrix(g, v0));
  const Kernel k = spectral_kernel(basis, 0.3, TimeKind::Euclidean);

  const double xi1 = kParams.tau * kParams.hbar * kSqrt3;
  double best = -1.0;
  double best_xi = -1.0;
  for (int m = -6; m <= 6; ++m) {
    const double val = std::abs(ft_propagator(k, m * xi1, 0.0));
    if (val > best) {
      best = val;
      best_xi = m * xi1;
    }
  }
  CHECK(best_xi == doctest::Approx(0.0));

  // shorter time concentrates harder
  const Kernel k2 = spectral_kernel(basis, 0.05, TimeKind::Euclidean);
  const double ratio_short = std::abs(ft_propagator(k2, 3.0 * xi1, 0.0)) /
                             std::abs(ft_propagator(k2, 0.0, 0.0));
  const double ratio_long = std::abs(ft_propagator(k, 3.0 * xi1, 0.0)) /
                            std::abs(ft_propagator(k, 0.0, 0.0));
  CHECK(ratio_short > ratio_long);
}

TEST_CASE("momentum-side free propagator carries the standard phase at small tau") {
  // The real-time kernel is a Fresnel integrand in u; the window and grid are
  // sized so its oscillations stay resolved (phase step << pi).
  const DeformationParams p0 = make_params(1e-6, 1.0, 1.0);
  const GridPtr g = make_grid_windowed(p0, 2049, SpacingMode::UniformInU, -8.0, 8.0);
  const double dt = 0.5;
  const Kernel k = free_kernel_closed(g, dt, TimeKind::RealTime,
                                      KernelConvention::MeasureConsistent);
  const complexd base = ft_propagator(k, 0.0, 0.0);
  for (double xi : {0.8, 1.2}) {
    const complexd val = ft_propagator(k, xi, xi);
    const double expected = -xi * xi * dt / (2.0 * p0.mass * p0.hbar);
    const double measured = std::arg(val / base);
    CHECK(measured == doctest::Approx(expected).epsilon(5e-2));
  }
}

TEST_CASE("bound scan: negative half-line holds, vertex region violates") {
  const double xs[3] = {-10.0, -4.0, 0.0};
  const auto rows = bound_scan(kParams, xs, 1.0);
  for (const auto& r : rows) {
    CHECK(r.pass_action_bound);
    CHECK(r.s_def <= r.s_std + 1e-12);
    if (r.x == r.x_prime) {
      CHECK(r.s_def == 0.0);
      CHECK(r.s_std == 0.0);
      CHECK(r.k_def == doctest::Approx(r.k_std));
    }
  }
  // the documented wide pair
  const double wide[2] = {-10.0, 10.0};
  const auto wide_rows = bound_scan(kParams, wide, 1.0);
  for (const auto& r : wide_rows) {
    if (r.x != r.x_prime) {
      CHECK(r.s_def == doctest::Approx(164.4934).epsilon(1e-4));
      CHECK(r.s_std == doctest::Approx(200.0).epsilon(1e-12));
    }
  }

  const double straddle[2] = {4.9, 5.1};
  bool found_violation = false;
  for (const auto& r : bound_scan(kParams, straddle, 1.0)) {
    if (r.x != r.x_prime) found_violation = !r.pass_action_bound;
  }
  CHECK(found_violation);

  const std::string json = bound_scan_to_json(rows);
  CHECK(json.find("pass_action_bound") != std::string::npos);
}

TEST_CASE("short-time bare kernel acts as the deformed delta") {
  // K(0+) ~ f(x) delta(x - x') means the bare kernel reproduces states
  // under the deformed measure dx/f.
  const GridPtr g = make_grid(kParams, 513);
  const double eps = 1e-3;
  const Kernel k = free_kernel_closed(g, eps, TimeKind::Euclidean,
                                      KernelConvention::Bare);
  const WaveFunction phi = to_picture(
      make_gaussian_in_u(g, kParams.u_min + 0.5 * kParams.u_length(),
                         0.06 * kParams.u_length(), 0.0),
      Picture::SmallPhi);
  const Eigen::VectorXcd out =
      k.k * g->w_deformed.cast<complexd>().asDiagonal() * phi.samples;
  const double scale = phi.samples.cwiseAbs().maxCoeff();
  double worst = 0.0;
  for (int i = 20; i < g->n() - 20; ++i) {
    worst = std::max(worst, std::abs(out[i] - phi.samples[i]));
  }
  CHECK(worst / scale <= 1e-2);
}

TEST_CASE("kernel CSV export uses the (x, x_prime, re, im) layout") {
  const GridPtr g = make_grid(kParams, 65);
  const Kernel k = free_kernel_closed(g, 1.0, TimeKind::Euclidean);
  std::stringstream ss;
  write_kernel_csv(ss, k, {{0, 1}, {10, 20}});
  std::string line;
  std::getline(ss, line);
  CHECK(line == "x,x_prime,re,im");
  int rows = 0;
  while (std::getline(ss, line)) ++rows;
  CHECK(rows == 2);
}

TEST_CASE("euclidean kernel is positive and decreasing in the action") {
  const double dt = 1.0;
  double prev = 1e300;
  for (double xp : {0.5, 1.5, 3.0, 4.5}) {
    const complexd k = free_propagator_closed(kParams, 0.0, xp, dt, TimeKind::Euclidean);
    CHECK(k.real() > 0.0);
    CHECK(k.real() < prev);
    prev = k.real();
  }
}

TEST_CASE("schroedinger residual of the spectral evolution shrinks at second order in dt") {
  const GridPtr g = make_grid(kParams, 513);
  const Eigen::VectorXd v0 = Eigen::VectorXd::Zero(g->n());
  const OperatorMatrix h = hamiltonian_matrix(g, v0);
  const FlatSpectralBasis basis = flat_spectral_basis(h);
  const WaveFunction psi0 = make_gaussian_in_u(
      g, kParams.u_min + 0.5 * kParams.u_length(), 0.06 * kParams.u_length(),
      2.0 * kParams.tau * kParams.hbar * kSqrt3);
  const double t = 0.4;

  auto residual = [&](double delta) {
    const WaveFunction plus = propagate(spectral_kernel(basis, t + delta, TimeKind::RealTime), psi0);
    const WaveFunction minus = propagate(spectral_kernel(basis, t - delta, TimeKind::RealTime), psi0);
    const WaveFunction now = propagate(spectral_kernel(basis, t, TimeKind::RealTime), psi0);
    const Eigen::VectorXcd dpsi =
        (plus.samples - minus.samples) / (2.0 * delta) * complexd(0.0, kParams.hbar);
    const Eigen::VectorXcd rhs = h.m * now.samples;
    double num = 0.0, den = 0.0;
    for (int i = 2; i < g->n() - 2; ++i) {
      num += std::norm(dpsi[i] - rhs[i]);
      den += std::norm(rhs[i]);
    }
    return std::sqrt(num / den);
  };
  const double r1 = residual(2e-2);
  const double r2 = residual(1e-2);
  CHECK(r2 <= 1e-3);
  CHECK(r1 / r2 >= 3.5);
}

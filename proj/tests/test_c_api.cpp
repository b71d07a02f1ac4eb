#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstring>
#include <string>
#include <vector>

#include "pdha.h"

namespace {

struct Params {
  pdha_params* p = nullptr;
  Params(double tau, double hbar, double mass) {
    REQUIRE(pdha_params_create(tau, hbar, mass, &p) == PDHA_OK);
  }
  ~Params() { pdha_params_free(p); }
};

struct Grid {
  pdha_grid* g = nullptr;
  Grid(const pdha_params* p, int n, pdha_spacing_mode mode = PDHA_UNIFORM_IN_U) {
    REQUIRE(pdha_grid_create(p, n, mode, &g) == PDHA_OK);
  }
  ~Grid() { pdha_grid_free(g); }
};

}  // namespace

TEST_CASE("params lifecycle, getters, error reporting") {
  Params params(0.1, 1.0, 1.0);
  pdha_params_info info{};
  REQUIRE(pdha_params_get(params.p, &info) == PDHA_OK);
  CHECK(info.ell_max == doctest::Approx(10.0));
  CHECK(info.delta_p_min == doctest::Approx(0.1));
  CHECK(info.u_max - info.u_min == doctest::Approx(M_PI / (0.1 * std::sqrt(3.0))));

  pdha_params* bad = nullptr;
  CHECK(pdha_params_create(1.5, 1.0, 1.0, &bad) == PDHA_ERR_INVALID_ARGUMENT);
  CHECK(bad == nullptr);
  CHECK(std::strlen(pdha_last_error()) > 0);

  double v = 0.0;
  CHECK(pdha_deformation_factor(params.p, 5.0, &v) == PDHA_OK);
  CHECK(v == doctest::Approx(0.75));
  CHECK(pdha_u_of_x(params.p, 10.0, &v) == PDHA_OK);
  CHECK(v == doctest::Approx(info.u_max));
  CHECK(pdha_x_of_u(params.p, 0.0, &v) == PDHA_OK);
  CHECK(v == doctest::Approx(0.0));
  CHECK(pdha_x_of_u(params.p, info.u_max + 1.0, &v) == PDHA_ERR_DOMAIN);
  CHECK(pdha_normalization_constant(params.p, &v) == PDHA_OK);
  CHECK(v == doctest::Approx(0.2348039).epsilon(1e-5));

  double lattice[5];
  CHECK(pdha_momentum_lattice(params.p, -2, 2, lattice) == PDHA_OK);
  CHECK(lattice[2] == 0.0);
  CHECK(lattice[3] == doctest::Approx(0.17320508));
}

TEST_CASE("eigenfunctions and overlaps through the C surface") {
  Params params(0.1, 1.0, 1.0);
  const double xs[3] = {-5.0, 0.0, 5.0};
  double re[3], im[3];
  REQUIRE(pdha_eigenfunction_eval(params.p, 0.0, xs, 3, re, im) == PDHA_OK);
  CHECK(re[1] == doctest::Approx(0.2348039).epsilon(1e-5));
  CHECK(im[1] == doctest::Approx(0.0));

  double ore = 0.0, oim = 0.0;
  REQUIRE(pdha_overlap(params.p, 0.3, 0.3, &ore, &oim) == PDHA_OK);
  CHECK(ore == doctest::Approx(1.0).epsilon(1e-12));

  const double zero = 2.0 * std::sqrt(3.0) * 0.1;
  REQUIRE(pdha_overlap(params.p, zero, 0.0, &ore, &oim) == PDHA_OK);
  CHECK(std::hypot(ore, oim) <= 1e-12);

  double sinc = 0.0;
  REQUIRE(pdha_overlap_sinc_form(params.p, std::sqrt(3.0) * 0.1, &sinc) == PDHA_OK);
  CHECK(std::abs(sinc) <= 1e-14);

  Grid grid(params.p, 257);
  REQUIRE(pdha_grid_overlap(grid.g, zero, 0.0, &ore, &oim) == PDHA_OK);
  CHECK(std::hypot(ore, oim) <= 1e-12);
}

TEST_CASE("grid data and quadrature") {
  Params params(0.1, 1.0, 1.0);
  Grid grid(params.p, 257);
  const int n = pdha_grid_size(grid.g);
  REQUIRE(n == 257);
  std::vector<double> x(n), u(n), wf(n), wd(n);
  REQUIRE(pdha_grid_nodes(grid.g, x.data(), u.data(), wf.data(), wd.data()) == PDHA_OK);
  CHECK(x.front() == doctest::Approx(-10.0));
  CHECK(x.back() == doctest::Approx(10.0));

  std::vector<double> ones(n, 1.0);
  double ire = 0.0, iim = 0.0;
  REQUIRE(pdha_grid_integrate_deformed(grid.g, ones.data(), nullptr, &ire, &iim) == PDHA_OK);
  CHECK(ire == doctest::Approx(M_PI / (0.1 * std::sqrt(3.0))).epsilon(1e-12));

  pdha_grid* bad = nullptr;
  CHECK(pdha_grid_create(params.p, 4, PDHA_UNIFORM_IN_U, &bad) == PDHA_ERR_INVALID_ARGUMENT);
  CHECK(pdha_grid_create_windowed(params.p, 64, PDHA_UNIFORM_IN_U, -50.0, 0.0, &bad) ==
        PDHA_ERR_INVALID_ARGUMENT);
}

TEST_CASE("transform round trip through the C surface") {
  Params params(0.1, 1.0, 1.0);
  Grid grid(params.p, 1025);
  const int n = pdha_grid_size(grid.g);
  std::vector<double> x(n), u(n);
  REQUIRE(pdha_grid_nodes(grid.g, x.data(), u.data(), nullptr, nullptr) == PDHA_OK);

  // gaussian in the flat coordinate, capital-Phi picture
  pdha_params_info info{};
  pdha_params_get(params.p, &info);
  const double span = info.u_max - info.u_min;
  const double u0 = info.u_min + 0.5 * span;
  const double sigma = 0.05 * span;
  std::vector<double> re(n), im(n);
  for (int i = 0; i < n; ++i) {
    double f = 0.0;
    pdha_deformation_factor(params.p, x[i], &f);
    const double du = u[i] - u0;
    re[i] = std::exp(-du * du / (4.0 * sigma * sigma)) / std::sqrt(f);
    im[i] = 0.0;
  }

  const int m = 401;
  std::vector<double> xi(m);
  const double half = 4.0 / sigma;
  for (int i = 0; i < m; ++i) xi[i] = -half + 2.0 * half * i / (m - 1);
  std::vector<double> fre(m), fim(m);
  REQUIRE(pdha_forward_transform(grid.g, re.data(), im.data(), PDHA_CAPITAL_PHI, xi.data(), m,
                                 fre.data(), fim.data()) == PDHA_OK);

  double ratio = 0.0;
  REQUIRE(pdha_parseval_ratio(grid.g, re.data(), im.data(), PDHA_CAPITAL_PHI, xi.data(),
                              fre.data(), fim.data(), m, &ratio) == PDHA_OK);
  CHECK(ratio == doctest::Approx(2.0 * 0.1 * std::sqrt(3.0)).epsilon(1e-6));

  std::vector<double> bre(n), bim(n);
  REQUIRE(pdha_inverse_transform(grid.g, xi.data(), fre.data(), fim.data(), m, bre.data(),
                                 bim.data()) == PDHA_OK);
  double worst = 0.0, scale = 0.0;
  for (int i = 0; i < n; ++i) {
    scale = std::max(scale, std::abs(re[i]));
    worst = std::max(worst, std::hypot(bre[i] - re[i], bim[i] - im[i]));
  }
  CHECK(worst / scale <= 1e-6);
}

TEST_CASE("closed forms and kernels through the C surface") {
  Params params(0.1, 1.0, 1.0);
  double s = 0.0, t = 0.0;
  REQUIRE(pdha_free_action(params.p, 0.0, 5.0, 1.0, &s) == PDHA_OK);
  double du = 0.0;
  pdha_u_of_x(params.p, 5.0, &du);
  CHECK(s == doctest::Approx(0.5 * du * du).epsilon(1e-12));
  REQUIRE(pdha_free_kinetic(params.p, 0.0, 5.0, 2.0, &t) == PDHA_OK);
  CHECK(pdha_free_action(params.p, 0.0, 5.0, -1.0, &s) == PDHA_ERR_INVALID_ARGUMENT);

  double kre = 0.0, kim = 0.0, act = 0.0, kin = 0.0;
  REQUIRE(pdha_standard_baseline(params.p, 1.0, 1.0, 1.0, PDHA_EUCLIDEAN, &kre, &kim, &act,
                                 &kin) == PDHA_OK);
  CHECK(act == 0.0);

  Grid grid(params.p, 257);
  pdha_kernel* closed = nullptr;
  pdha_kernel* sliced = nullptr;
  pdha_kernel* spectral = nullptr;
  REQUIRE(pdha_kernel_free_closed(grid.g, 1.0, PDHA_EUCLIDEAN, PDHA_MEASURE_CONSISTENT,
                                  &closed) == PDHA_OK);
  REQUIRE(pdha_kernel_timeslice(grid.g, nullptr, 1.0, 8, 1, &sliced) == PDHA_OK);
  REQUIRE(pdha_kernel_spectral(grid.g, nullptr, 1.0, PDHA_EUCLIDEAN, &spectral) == PDHA_OK);

  double cre = 0.0, cim = 0.0, tre = 0.0, tim = 0.0;
  REQUIRE(pdha_kernel_entry(closed, 100, 140, &cre, &cim) == PDHA_OK);
  REQUIRE(pdha_kernel_entry(sliced, 100, 140, &tre, &tim) == PDHA_OK);
  CHECK(tre == doctest::Approx(cre).epsilon(1e-6));
  CHECK(pdha_kernel_entry(closed, -1, 0, &cre, &cim) == PDHA_ERR_INVALID_ARGUMENT);

  pdha_kernel* glued = nullptr;
  REQUIRE(pdha_kernel_compose(sliced, sliced, &glued) == PDHA_OK);

  double fre = 0.0, fim = 0.0;
  REQUIRE(pdha_ft_propagator(spectral, 0.0, 0.0, &fre, &fim) == PDHA_OK);
  CHECK(std::hypot(fre, fim) > 0.0);

  pdha_kernel_free(glued);
  pdha_kernel_free(closed);
  pdha_kernel_free(sliced);
  pdha_kernel_free(spectral);

  const double xs[3] = {-10.0, 0.0, 5.0};
  char* json = nullptr;
  REQUIRE(pdha_bound_scan_json(params.p, xs, 3, 1.0, &json) == PDHA_OK);
  CHECK(std::string(json).find("pass_action_bound") != std::string::npos);
  pdha_string_free(json);
}

TEST_CASE("classical trajectories through the C surface") {
  Params params(0.1, 1.0, 1.0);
  const double osc[3] = {0.0, 0.0, 0.5};
  pdha_trajectory* traj = nullptr;
  REQUIRE(pdha_trajectory_integrate(params.p, osc, 3, 1.0, 0.0, 10.0, 1e-3, &traj) == PDHA_OK);
  const size_t count = pdha_trajectory_size(traj);
  CHECK(count == 10001);
  CHECK(pdha_trajectory_boundary_event(traj) == 0);

  std::vector<double> tt(count), x(count), xi(count), u(count), h(count);
  REQUIRE(pdha_trajectory_data(traj, tt.data(), x.data(), xi.data(), u.data(), h.data()) ==
          PDHA_OK);
  CHECK(tt.front() == 0.0);
  CHECK(x.front() == 1.0);

  double drift = 0.0;
  REQUIRE(pdha_trajectory_energy_drift(traj, &drift) == PDHA_OK);
  CHECK(drift <= 1e-8);
  double action = 0.0;
  REQUIRE(pdha_trajectory_action(traj, &action) == PDHA_OK);
  pdha_trajectory_free(traj);

  pdha_trajectory* bad = nullptr;
  CHECK(pdha_trajectory_integrate(params.p, osc, 3, 1.0, 0.0, 10.0, -1.0, &bad) ==
        PDHA_ERR_INVALID_ARGUMENT);
}

TEST_CASE("verification through the C surface") {
  char* report = nullptr;
  int all_pass = -1;
  // Small grid keeps this a smoke test; the acceptance binary runs the
  // pinned configuration.
  REQUIRE(pdha_verify_run(R"({"n": 513})", &report, &all_pass) == PDHA_OK);
  CHECK(all_pass == 1);
  CHECK(std::string(report).find("AC1_normalization") != std::string::npos);
  pdha_string_free(report);

  // forcing a tolerance to zero must fail the suite
  REQUIRE(pdha_verify_run(R"({"n": 513, "tolerances": {"AC1_normalization": 0.0}})", &report,
                          &all_pass) == PDHA_OK);
  CHECK(all_pass == 0);
  pdha_string_free(report);

  CHECK(pdha_verify_run("{not json", &report, &all_pass) == PDHA_ERR_INVALID_ARGUMENT);
}

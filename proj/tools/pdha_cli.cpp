// Batch front door for the deformed-algebra library: evaluates closed forms,
// runs transforms and propagators, executes the verification suite, and emits
// CSV/JSON artifacts for plotting. Links the C API only.

#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "pdha.h"

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct CliError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void check(pdha_status st, const char* what) {
  if (st != PDHA_OK) {
    throw CliError(std::string(what) + ": " + pdha_last_error());
  }
}

std::string fmt(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::string fmt_full(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

double parse_double(const std::string& s) {
  double v = 0.0;
  const char* b = s.data();
  const auto res = std::from_chars(b, b + s.size(), v);
  if (res.ec != std::errc{}) throw CliError("malformed number '" + s + "'");
  return v;
}

struct RunConfig {
  double tau = 0.1;
  double hbar = 1.0;
  double mass = 1.0;
  int n = 2049;
  std::string spacing_mode = "uniform-in-u";
  double delta_t = 1.0;
  int slices = 32;
  std::string time_kind = "euclidean";
  double xi_window = 0.0;  // 0 = derive from the state
  int interior_depth = 2;
  std::map<std::string, double> tolerances;
  std::string output_dir = "out";
};

void load_config_file(const std::string& path, RunConfig& cfg) {
  std::ifstream in(path);
  if (!in) throw CliError("cannot open config file " + path);
  json j;
  in >> j;
  if (j.contains("tau")) cfg.tau = j.at("tau").get<double>();
  if (j.contains("hbar")) cfg.hbar = j.at("hbar").get<double>();
  if (j.contains("mass")) cfg.mass = j.at("mass").get<double>();
  if (j.contains("n")) cfg.n = j.at("n").get<int>();
  if (j.contains("spacing_mode")) cfg.spacing_mode = j.at("spacing_mode").get<std::string>();
  if (j.contains("delta_t")) cfg.delta_t = j.at("delta_t").get<double>();
  if (j.contains("slices")) cfg.slices = j.at("slices").get<int>();
  if (j.contains("time_kind")) cfg.time_kind = j.at("time_kind").get<std::string>();
  if (j.contains("xi_window")) cfg.xi_window = j.at("xi_window").get<double>();
  if (j.contains("interior_depth")) cfg.interior_depth = j.at("interior_depth").get<int>();
  if (j.contains("output_dir")) cfg.output_dir = j.at("output_dir").get<std::string>();
  if (j.contains("tolerances")) {
    for (const auto& [k, v] : j.at("tolerances").items()) {
      cfg.tolerances[k] = v.get<double>();
    }
  }
}

pdha_spacing_mode spacing_of(const RunConfig& cfg) {
  if (cfg.spacing_mode == "uniform-in-u") return PDHA_UNIFORM_IN_U;
  if (cfg.spacing_mode == "uniform-in-x") return PDHA_UNIFORM_IN_X;
  throw CliError("unknown spacing_mode '" + cfg.spacing_mode + "'");
}

pdha_time_kind time_kind_of(const RunConfig& cfg) {
  if (cfg.time_kind == "euclidean") return PDHA_EUCLIDEAN;
  if (cfg.time_kind == "real-time") return PDHA_REAL_TIME;
  throw CliError("unknown time_kind '" + cfg.time_kind + "'");
}

struct ParamsHandle {
  pdha_params* p = nullptr;
  explicit ParamsHandle(const RunConfig& cfg) {
    check(pdha_params_create(cfg.tau, cfg.hbar, cfg.mass, &p), "params");
  }
  ~ParamsHandle() { pdha_params_free(p); }
  ParamsHandle(const ParamsHandle&) = delete;
  ParamsHandle& operator=(const ParamsHandle&) = delete;
};

struct GridHandle {
  pdha_grid* g = nullptr;
  GridHandle(const pdha_params* p, int n, pdha_spacing_mode mode) {
    check(pdha_grid_create(p, n, mode, &g), "grid");
  }
  GridHandle(const pdha_params* p, int n, pdha_spacing_mode mode, double lo, double hi) {
    check(pdha_grid_create_windowed(p, n, mode, lo, hi, &g), "grid");
  }
  ~GridHandle() { pdha_grid_free(g); }
  GridHandle(const GridHandle&) = delete;
  GridHandle& operator=(const GridHandle&) = delete;
};

std::ofstream open_output(const fs::path& dir, const std::string& name) {
  fs::create_directories(dir);
  std::ofstream os(dir / name);
  if (!os) throw CliError("cannot write " + (dir / name).string());
  std::cout << "wrote " << (dir / name).string() << "\n";
  return os;
}

struct WavefunctionFile {
  std::vector<double> x, u, re, im;
  std::string picture;
};

WavefunctionFile read_wavefunction_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw CliError("cannot open " + path);
  std::string line;
  do {
    if (!std::getline(in, line)) throw CliError("empty wavefunction file " + path);
  } while (line.empty() || line[0] == '#');
  WavefunctionFile out;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::stringstream ss(line);
    std::string field;
    std::vector<std::string> fields;
    while (std::getline(ss, field, ',')) fields.push_back(field);
    if (fields.size() != 5) throw CliError("wavefunction CSV expects 5 columns");
    out.x.push_back(parse_double(fields[0]));
    out.u.push_back(parse_double(fields[1]));
    out.re.push_back(parse_double(fields[2]));
    out.im.push_back(parse_double(fields[3]));
    if (out.picture.empty()) {
      out.picture = fields[4];
    } else if (out.picture != fields[4]) {
      throw CliError("wavefunction CSV mixes pictures");
    }
  }
  if (out.x.size() < 16) throw CliError("wavefunction CSV has too few rows");
  return out;
}

bool is_uniform(const std::vector<double>& t) {
  const double h = (t.back() - t.front()) / static_cast<double>(t.size() - 1);
  for (std::size_t i = 0; i + 1 < t.size(); ++i) {
    if (std::abs(t[i + 1] - t[i] - h) > 1e-9 * std::abs(h)) return false;
  }
  return true;
}

void write_wavefunction_rows(std::ofstream& os, const std::vector<double>& x,
                             const std::vector<double>& u, const std::vector<double>& re,
                             const std::vector<double>& im, const std::string& picture) {
  os << "x,u,re,im,picture\n";
  for (std::size_t i = 0; i < x.size(); ++i) {
    os << fmt_full(x[i]) << ',' << fmt_full(u[i]) << ',' << fmt_full(re[i]) << ','
       << fmt_full(im[i]) << ',' << picture << '\n';
  }
}

// ---- subcommands ----------------------------------------------------------

int cmd_eigen(const RunConfig& cfg, const std::vector<double>& xi_list) {
  ParamsHandle params(cfg);
  GridHandle grid(params.p, cfg.n, spacing_of(cfg));
  const int n = pdha_grid_size(grid.g);
  std::vector<double> x(n), u(n), re(n), im(n);
  check(pdha_grid_nodes(grid.g, x.data(), u.data(), nullptr, nullptr), "nodes");

  std::vector<double> xis = xi_list;
  if (xis.empty()) {
    xis.resize(7);
    check(pdha_momentum_lattice(params.p, -3, 3, xis.data()), "lattice");
  }

  const fs::path dir(cfg.output_dir);
  for (std::size_t k = 0; k < xis.size(); ++k) {
    check(pdha_grid_eigenfunction(grid.g, xis[k], re.data(), im.data()), "eigenfunction");
    auto os = open_output(dir, "eigenfunction_" + std::to_string(k) + ".csv");
    os << "# xi = " << fmt(xis[k]) << "\n";
    write_wavefunction_rows(os, x, u, re, im, "capital-Phi");
  }

  {
    auto os = open_output(dir, "overlap_matrix.csv");
    os << "xi,xi_prime,re_quadrature,im_quadrature,sinc_form\n";
    for (double a : xis) {
      for (double b : xis) {
        double qre = 0.0, qim = 0.0, sinc = 0.0;
        check(pdha_grid_overlap(grid.g, a, b, &qre, &qim), "overlap");
        check(pdha_overlap_sinc_form(params.p, a - b, &sinc), "overlap sinc form");
        os << fmt(a) << ',' << fmt(b) << ',' << fmt_full(qre) << ',' << fmt_full(qim) << ','
           << fmt_full(sinc) << '\n';
      }
    }
  }

  // Overlap profile versus delta-xi for a few deformation strengths.
  {
    auto os = open_output(dir, "overlap_sweep.csv");
    os << "tau,delta_xi,re,im,abs,sinc_form\n";
    for (double tau : {0.2, 0.4, 0.6}) {
      pdha_params* p2 = nullptr;
      check(pdha_params_create(tau, cfg.hbar, cfg.mass, &p2), "params");
      const double spacing = tau * cfg.hbar * std::sqrt(3.0);
      for (int k = -240; k <= 240; ++k) {
        const double dxi = 0.025 * spacing * k;
        double ore = 0.0, oim = 0.0, sinc = 0.0;
        check(pdha_overlap(p2, dxi, 0.0, &ore, &oim), "overlap");
        check(pdha_overlap_sinc_form(p2, dxi, &sinc), "overlap sinc form");
        os << fmt(tau) << ',' << fmt_full(dxi) << ',' << fmt_full(ore) << ',' << fmt_full(oim)
           << ',' << fmt_full(std::hypot(ore, oim)) << ',' << fmt_full(sinc) << '\n';
      }
      pdha_params_free(p2);
    }
  }
  return 0;
}

int cmd_transform(const RunConfig& cfg, const std::string& input, const std::string& direction) {
  ParamsHandle params(cfg);
  pdha_params_info info{};
  check(pdha_params_get(params.p, &info), "params info");
  const fs::path dir(cfg.output_dir);

  if (direction == "forward") {
    const WavefunctionFile wf = read_wavefunction_file(input);
    const int n = static_cast<int>(wf.x.size());
    pdha_spacing_mode mode;
    if (is_uniform(wf.u)) {
      mode = PDHA_UNIFORM_IN_U;
    } else if (is_uniform(wf.x)) {
      mode = PDHA_UNIFORM_IN_X;
    } else {
      throw CliError("input nodes are neither uniform in x nor in u");
    }
    GridHandle grid(params.p, n, mode, wf.x.front(), wf.x.back());

    const pdha_picture pic = (wf.picture == "small-phi") ? PDHA_SMALL_PHI : PDHA_CAPITAL_PHI;
    constexpr double pi = 3.14159265358979323846;
    double half = cfg.xi_window;
    if (half <= 0.0) half = 40.0 * cfg.hbar / (info.u_max - info.u_min);
    const double step = pi * cfg.hbar / (2.0 * (info.u_max - info.u_min));
    const int count = 2 * static_cast<int>(std::ceil(half / step)) + 1;
    std::vector<double> xi(count);
    for (int i = 0; i < count; ++i) xi[i] = -half + 2.0 * half * i / (count - 1);

    std::vector<double> fre(count), fim(count);
    check(pdha_forward_transform(grid.g, wf.re.data(), wf.im.data(), pic, xi.data(),
                                 xi.size(), fre.data(), fim.data()),
          "forward transform");

    {
      auto os = open_output(dir, "spectral.csv");
      os << "xi,re,im\n";
      for (int i = 0; i < count; ++i) {
        os << fmt_full(xi[i]) << ',' << fmt_full(fre[i]) << ',' << fmt_full(fim[i]) << '\n';
      }
    }

    double ratio = 0.0;
    check(pdha_parseval_ratio(grid.g, wf.re.data(), wf.im.data(), pic, xi.data(), fre.data(),
                              fim.data(), xi.size(), &ratio),
          "parseval");
    const double expected = 2.0 * cfg.hbar * cfg.tau * std::sqrt(3.0);

    std::vector<double> back_re(n), back_im(n);
    check(pdha_inverse_transform(grid.g, xi.data(), fre.data(), fim.data(), xi.size(),
                                 back_re.data(), back_im.data()),
          "inverse transform");
    // Round trip is reported against the capital-Phi picture of the input.
    std::vector<double> cap_re = wf.re, cap_im = wf.im;
    if (pic == PDHA_SMALL_PHI) {
      for (int i = 0; i < n; ++i) {
        double f = 0.0;
        check(pdha_deformation_factor(params.p, wf.x[i], &f), "f");
        cap_re[i] /= std::sqrt(f);
        cap_im[i] /= std::sqrt(f);
      }
    }
    double scale = 0.0, err = 0.0;
    for (int i = 0; i < n; ++i) scale = std::max(scale, std::hypot(cap_re[i], cap_im[i]));
    for (int i = 0; i < n; ++i) {
      err = std::max(err, std::hypot(back_re[i] - cap_re[i], back_im[i] - cap_im[i]));
    }
    std::cout << "parseval_ratio = " << fmt(ratio) << " (2*hbar*tau*sqrt3 = " << fmt(expected)
              << ", relative deviation " << fmt(std::abs(ratio / expected - 1.0)) << ")\n";
    std::cout << "roundtrip_max_error = " << fmt(err / scale) << "\n";
    return 0;
  }

  if (direction == "inverse") {
    std::ifstream in(input);
    if (!in) throw CliError("cannot open " + input);
    std::string line;
    if (!std::getline(in, line)) throw CliError("empty spectral file " + input);
    std::vector<double> xi, fre, fim;
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      std::stringstream ss(line);
      std::string field;
      std::vector<std::string> fields;
      while (std::getline(ss, field, ',')) fields.push_back(field);
      if (fields.size() != 3) throw CliError("spectral CSV expects 3 columns");
      xi.push_back(parse_double(fields[0]));
      fre.push_back(parse_double(fields[1]));
      fim.push_back(parse_double(fields[2]));
    }
    if (xi.empty()) throw CliError("spectral CSV has no rows");

    GridHandle grid(params.p, cfg.n, spacing_of(cfg));
    const int n = pdha_grid_size(grid.g);
    std::vector<double> x(n), u(n), re(n), im(n);
    check(pdha_grid_nodes(grid.g, x.data(), u.data(), nullptr, nullptr), "nodes");
    check(pdha_inverse_transform(grid.g, xi.data(), fre.data(), fim.data(), xi.size(),
                                 re.data(), im.data()),
          "inverse transform");
    auto os = open_output(dir, "wavefunction.csv");
    std::vector<double> xv(x.begin(), x.end()), uv(u.begin(), u.end());
    write_wavefunction_rows(os, xv, uv, re, im, "capital-Phi");
    return 0;
  }

  throw CliError("direction must be 'forward' or 'inverse'");
}

int cmd_propagate(const RunConfig& cfg, const std::vector<std::string>& pair_args) {
  ParamsHandle params(cfg);
  pdha_params_info info{};
  check(pdha_params_get(params.p, &info), "params info");

  std::vector<std::pair<double, double>> pairs;
  for (const std::string& s : pair_args) {
    const auto comma = s.find(',');
    if (comma == std::string::npos) throw CliError("--pair expects 'x,x_prime'");
    pairs.emplace_back(parse_double(s.substr(0, comma)), parse_double(s.substr(comma + 1)));
  }
  if (pairs.empty()) {
    pairs = {{-0.5 * info.ell_max, 0.2 * info.ell_max},
             {0.0, 0.35 * info.ell_max},
             {0.1 * info.ell_max, 0.1 * info.ell_max}};
  }

  const pdha_time_kind kind = time_kind_of(cfg);
  const fs::path dir(cfg.output_dir);

  {
    auto os = open_output(dir, "closed_forms.csv");
    os << "x,x_prime,k_bare_re,k_bare_im,k_mc_re,k_mc_im,s_def,t_def,k_std_re,k_std_im,"
          "s_std,t_std\n";
    for (const auto& [x, xp] : pairs) {
      double pre = 0.0, pim = 0.0, mre = 0.0, mim = 0.0, s = 0.0, t = 0.0;
      double bre = 0.0, bim = 0.0, bs = 0.0, bt = 0.0;
      check(pdha_free_propagator(params.p, x, xp, cfg.delta_t, kind, PDHA_BARE_FORM, &pre,
                                 &pim),
            "free propagator");
      check(pdha_free_propagator(params.p, x, xp, cfg.delta_t, kind, PDHA_MEASURE_CONSISTENT,
                                 &mre, &mim),
            "free propagator");
      check(pdha_free_action(params.p, x, xp, cfg.delta_t, &s), "free action");
      check(pdha_free_kinetic(params.p, x, xp, cfg.delta_t, &t), "free kinetic");
      check(pdha_standard_baseline(params.p, x, xp, cfg.delta_t, kind, &bre, &bim, &bs, &bt),
            "baseline");
      os << fmt(x) << ',' << fmt(xp) << ',' << fmt_full(pre) << ',' << fmt_full(pim) << ','
         << fmt_full(mre) << ',' << fmt_full(mim) << ',' << fmt_full(s) << ',' << fmt_full(t)
         << ',' << fmt_full(bre) << ',' << fmt_full(bim) << ',' << fmt_full(bs) << ','
         << fmt_full(bt) << '\n';
    }
  }

  // Numeric kernels at the nearest grid nodes.
  GridHandle grid(params.p, cfg.n, spacing_of(cfg));
  const int n = pdha_grid_size(grid.g);
  std::vector<double> x(n);
  check(pdha_grid_nodes(grid.g, x.data(), nullptr, nullptr, nullptr), "nodes");
  auto nearest = [&](double value) {
    int best = 0;
    for (int i = 1; i < n; ++i) {
      if (std::abs(x[i] - value) < std::abs(x[best] - value)) best = i;
    }
    return best;
  };

  pdha_kernel* closed = nullptr;
  pdha_kernel* sliced = nullptr;
  pdha_kernel* spectral = nullptr;
  check(pdha_kernel_free_closed(grid.g, cfg.delta_t, PDHA_EUCLIDEAN, PDHA_MEASURE_CONSISTENT,
                                &closed),
        "closed kernel");
  check(pdha_kernel_timeslice(grid.g, nullptr, cfg.delta_t, cfg.slices, 1, &sliced),
        "timeslice kernel");
  check(pdha_kernel_spectral(grid.g, nullptr, cfg.delta_t, PDHA_EUCLIDEAN, &spectral),
        "spectral kernel");

  {
    auto os = open_output(dir, "kernel_compare.csv");
    os << "x,x_prime,closed_re,closed_im,timeslice_re,timeslice_im,spectral_re,spectral_im\n";
    for (const auto& [xv, xpv] : pairs) {
      const int i = nearest(xv);
      const int j = nearest(xpv);
      double cre = 0, cim = 0, tre = 0, tim = 0, sre = 0, sim = 0;
      check(pdha_kernel_entry(closed, i, j, &cre, &cim), "entry");
      check(pdha_kernel_entry(sliced, i, j, &tre, &tim), "entry");
      check(pdha_kernel_entry(spectral, i, j, &sre, &sim), "entry");
      os << fmt(x[i]) << ',' << fmt(x[j]) << ',' << fmt_full(cre) << ',' << fmt_full(cim)
         << ',' << fmt_full(tre) << ',' << fmt_full(tim) << ',' << fmt_full(sre) << ','
         << fmt_full(sim) << '\n';
    }
  }

  // Per-source kernel exports in the plain (x, x_prime, re, im) layout.
  {
    const std::pair<const char*, pdha_kernel*> kernels[3] = {
        {"kernel_closed.csv", closed},
        {"kernel_timeslice.csv", sliced},
        {"kernel_spectral.csv", spectral}};
    for (const auto& [name, kernel] : kernels) {
      auto os = open_output(dir, name);
      os << "x,x_prime,re,im\n";
      for (const auto& [xv, xpv] : pairs) {
        const int i = nearest(xv);
        const int j = nearest(xpv);
        double re = 0, im = 0;
        check(pdha_kernel_entry(kernel, i, j, &re, &im), "entry");
        os << fmt_full(x[i]) << ',' << fmt_full(x[j]) << ',' << fmt_full(re) << ','
           << fmt_full(im) << '\n';
      }
    }
  }

  // Slice-count convergence toward the closed form.
  {
    auto os = open_output(dir, "timeslice_convergence.csv");
    os << "slices,max_relative_error\n";
    for (int slices : {8, 16, 32, 64}) {
      pdha_kernel* k = nullptr;
      check(pdha_kernel_timeslice(grid.g, nullptr, cfg.delta_t, slices, 1, &k), "timeslice");
      double worst = 0.0;
      for (const auto& [xv, xpv] : pairs) {
        const int i = nearest(xv);
        const int j = nearest(xpv);
        double kre = 0, kim = 0, cre = 0, cim = 0;
        check(pdha_kernel_entry(k, i, j, &kre, &kim), "entry");
        check(pdha_kernel_entry(closed, i, j, &cre, &cim), "entry");
        const double mag = std::hypot(cre, cim);
        if (mag > 0.0) worst = std::max(worst, std::hypot(kre - cre, kim - cim) / mag);
      }
      os << slices << ',' << fmt(worst) << '\n';
      pdha_kernel_free(k);
    }
  }

  pdha_kernel_free(closed);
  pdha_kernel_free(sliced);
  pdha_kernel_free(spectral);

  {
    std::vector<double> xs;
    for (int k = 0; k <= 8; ++k) {
      xs.push_back(-info.ell_max + 2.0 * info.ell_max * k / 8.0);
    }
    char* json_text = nullptr;
    check(pdha_bound_scan_json(params.p, xs.data(), xs.size(), cfg.delta_t, &json_text),
          "bound scan");
    auto os = open_output(dir, "bound_scan.json");
    os << json_text << '\n';
    pdha_string_free(json_text);
  }
  return 0;
}

int cmd_verify(const RunConfig& cfg) {
  json config{{"tau", cfg.tau},        {"hbar", cfg.hbar},
              {"mass", cfg.mass},      {"n", cfg.n},
              {"delta_t", cfg.delta_t}, {"slices", cfg.slices},
              {"interior_depth", cfg.interior_depth}};
  if (!cfg.tolerances.empty()) {
    json tol = json::object();
    for (const auto& [k, v] : cfg.tolerances) tol[k] = v;
    config["tolerances"] = tol;
  }

  char* report_text = nullptr;
  int all_pass = 0;
  check(pdha_verify_run(config.dump().c_str(), &report_text, &all_pass), "verify");
  const json report = json::parse(report_text);
  pdha_string_free(report_text);

  for (const auto& entry : report.at("checks")) {
    const bool expected = entry.value("expected_divergence", false);
    const char* tag = expected ? "DIVERGENCE" : (entry.at("pass").get<bool>() ? "PASS" : "FAIL");
    std::cout << '[' << tag << "] " << entry.at("label").get<std::string>() << ": residual "
              << fmt(entry.at("residual").get<double>()) << " (tolerance "
              << fmt(entry.at("tolerance").get<double>()) << ")\n";
  }

  auto os = open_output(fs::path(cfg.output_dir), "verify_report.json");
  os << report.dump(2) << '\n';
  std::cout << (all_pass ? "verification PASSED" : "verification FAILED") << "\n";
  return all_pass ? 0 : 2;
}

int cmd_classical(const RunConfig& cfg, double x0, double xi0, double t_end, double dt,
                  const std::string& potential_arg) {
  ParamsHandle params(cfg);
  std::vector<double> coeffs;
  if (!potential_arg.empty()) {
    std::stringstream ss(potential_arg);
    std::string field;
    while (std::getline(ss, field, ',')) coeffs.push_back(parse_double(field));
  }

  pdha_trajectory* traj = nullptr;
  check(pdha_trajectory_integrate(params.p, coeffs.empty() ? nullptr : coeffs.data(),
                                  coeffs.size(), x0, xi0, t_end, dt, &traj),
        "trajectory");
  const size_t count = pdha_trajectory_size(traj);
  std::vector<double> t(count), x(count), xi(count), u(count), h(count);
  check(pdha_trajectory_data(traj, t.data(), x.data(), xi.data(), u.data(), h.data()),
        "trajectory data");

  {
    auto os = open_output(fs::path(cfg.output_dir), "trajectory.csv");
    os << "t,x,xi,u,h\n";
    for (size_t i = 0; i < count; ++i) {
      os << fmt_full(t[i]) << ',' << fmt_full(x[i]) << ',' << fmt_full(xi[i]) << ','
         << fmt_full(u[i]) << ',' << fmt_full(h[i]) << '\n';
    }
  }

  double action = 0.0, drift = 0.0;
  check(pdha_trajectory_action(traj, &action), "action");
  check(pdha_trajectory_energy_drift(traj, &drift), "drift");
  std::cout << "steps = " << count << "\naction = " << fmt(action)
            << "\nenergy_drift = " << fmt(drift)
            << "\nboundary_event = " << (pdha_trajectory_boundary_event(traj) ? "yes" : "no")
            << "\n";
  pdha_trajectory_free(traj);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"position-deformed Heisenberg algebra toolbox"};
  app.require_subcommand(1);

  RunConfig cfg;
  std::string config_path;
  std::vector<std::string> tolerance_args;
  app.add_option("--config", config_path, "JSON config file");
  app.add_option("--out", cfg.output_dir, "output directory");
  app.add_option("--tolerance", tolerance_args, "override label=value (repeatable)");
  app.add_option("--tau", cfg.tau, "deformation strength in (0,1)");
  app.add_option("--hbar", cfg.hbar, "reduced Planck constant");
  app.add_option("--mass", cfg.mass, "particle mass");
  app.add_option("--n", cfg.n, "grid size");
  app.add_option("--spacing-mode", cfg.spacing_mode, "uniform-in-u | uniform-in-x");
  app.add_option("--delta-t", cfg.delta_t, "propagation interval");
  app.add_option("--slices", cfg.slices, "time slices");
  app.add_option("--time-kind", cfg.time_kind, "euclidean | real-time");
  app.add_option("--xi-window", cfg.xi_window, "momentum window half-width (0 = default)");
  app.add_option("--interior-depth", cfg.interior_depth,
                 "boundary layers excluded from interior-restricted residuals");

  auto* eigen = app.add_subcommand("eigen", "eigenfunctions and overlaps");
  std::vector<double> xi_list;
  eigen->add_option("--xi", xi_list, "momentum eigenvalues (default: lattice -3..3)");

  auto* transform = app.add_subcommand("transform", "forward/inverse transform of a CSV state");
  std::string input, direction = "forward";
  transform->add_option("--input", input, "input CSV")->required();
  transform->add_option("--direction", direction, "forward | inverse");

  auto* propagate = app.add_subcommand("propagate", "free-particle kernels and bound scan");
  std::vector<std::string> pair_args;
  propagate->add_option("--pair", pair_args, "x,x_prime (repeatable)");

  auto* verify = app.add_subcommand("verify", "run the verification suite");

  auto* classical = app.add_subcommand("classical", "integrate the deformed Hamilton equations");
  double x0 = 0.0, xi0 = 1.0, t_end = 10.0, dt = 1e-3;
  std::string potential_arg;
  classical->add_option("--x0", x0, "initial position");
  classical->add_option("--xi0", xi0, "initial momentum");
  classical->add_option("--t-end", t_end, "final time");
  classical->add_option("--dt", dt, "time step");
  classical->add_option("--potential", potential_arg, "polynomial coefficients c0,c1,...");

  CLI11_PARSE(app, argc, argv);

  try {
    if (!config_path.empty()) {
      RunConfig from_file;
      load_config_file(config_path, from_file);
      // Command-line values win over file values for explicitly passed flags.
      RunConfig merged = from_file;
      if (app.count("--tau")) merged.tau = cfg.tau;
      if (app.count("--hbar")) merged.hbar = cfg.hbar;
      if (app.count("--mass")) merged.mass = cfg.mass;
      if (app.count("--n")) merged.n = cfg.n;
      if (app.count("--spacing-mode")) merged.spacing_mode = cfg.spacing_mode;
      if (app.count("--delta-t")) merged.delta_t = cfg.delta_t;
      if (app.count("--slices")) merged.slices = cfg.slices;
      if (app.count("--time-kind")) merged.time_kind = cfg.time_kind;
      if (app.count("--xi-window")) merged.xi_window = cfg.xi_window;
      if (app.count("--interior-depth")) merged.interior_depth = cfg.interior_depth;
      if (app.count("--out")) merged.output_dir = cfg.output_dir;
      merged.tolerances.insert(cfg.tolerances.begin(), cfg.tolerances.end());
      cfg = merged;
    }
    for (const std::string& t : tolerance_args) {
      const auto eq = t.find('=');
      if (eq == std::string::npos) throw CliError("--tolerance expects label=value");
      cfg.tolerances[t.substr(0, eq)] = parse_double(t.substr(eq + 1));
    }

    if (eigen->parsed()) return cmd_eigen(cfg, xi_list);
    if (transform->parsed()) return cmd_transform(cfg, input, direction);
    if (propagate->parsed()) return cmd_propagate(cfg, pair_args);
    if (verify->parsed()) return cmd_verify(cfg);
    if (classical->parsed()) return cmd_classical(cfg, x0, xi0, t_end, dt, potential_arg);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}

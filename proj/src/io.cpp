#include "pdha/io.hpp"

#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

#include "json.hpp"

namespace pdha {
namespace {

using nlohmann::json;

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::stringstream ss(line);
  while (std::getline(ss, field, ',')) fields.push_back(field);
  return fields;
}

double parse_double(const std::string& s) {
  double v = 0.0;
  const char* begin = s.data();
  const char* end = begin + s.size();
  while (begin < end && (*begin == ' ' || *begin == '\t')) ++begin;
  const auto res = std::from_chars(begin, end, v);
  if (res.ec != std::errc{}) throw ValidationError("malformed number in CSV: '" + s + "'");
  return v;
}

}  // namespace

std::string format_shortest(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::string format_full(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

void write_wavefunction_csv(std::ostream& os, const WaveFunction& w) {
  os << "x,u,re,im,picture\n";
  const char* pic = (w.picture == Picture::CapitalPhi) ? "capital-Phi" : "small-phi";
  const Grid& g = *w.grid;
  for (int i = 0; i < g.n(); ++i) {
    os << format_full(g.x[i]) << ',' << format_full(g.u[i]) << ','
       << format_full(w.samples[i].real()) << ',' << format_full(w.samples[i].imag()) << ','
       << pic << '\n';
  }
}

WaveFunction read_wavefunction_csv(std::istream& is, const DeformationParams& params) {
  std::string line;
  do {
    if (!std::getline(is, line)) throw ValidationError("wavefunction CSV is empty");
  } while (line.empty() || line[0] == '#');
  std::vector<double> xs;
  std::vector<complexd> vs;
  std::string picture_text;
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#') continue;
    const auto fields = split_csv_line(line);
    if (fields.size() != 5) throw ValidationError("wavefunction CSV expects 5 columns");
    xs.push_back(parse_double(fields[0]));
    vs.emplace_back(parse_double(fields[2]), parse_double(fields[3]));
    if (picture_text.empty()) {
      picture_text = fields[4];
    } else if (picture_text != fields[4]) {
      throw ValidationError("wavefunction CSV mixes pictures");
    }
  }
  if (xs.size() < 16) throw ValidationError("wavefunction CSV has too few rows");
  Picture pic;
  if (picture_text == "capital-Phi") {
    pic = Picture::CapitalPhi;
  } else if (picture_text == "small-phi") {
    pic = Picture::SmallPhi;
  } else {
    throw ValidationError("unknown picture tag '" + picture_text + "'");
  }

  // Rebuild the grid from the node set; spacing mode is detected from
  // whichever coordinate is uniform.
  const int n = static_cast<int>(xs.size());
  Eigen::VectorXd x = Eigen::Map<const Eigen::VectorXd>(xs.data(), n);
  Eigen::VectorXd u(n);
  for (int i = 0; i < n; ++i) u[i] = u_of_x(params, x[i]);
  auto uniform = [](const Eigen::VectorXd& t) {
    const double h = (t[t.size() - 1] - t[0]) / static_cast<double>(t.size() - 1);
    for (int i = 0; i + 1 < t.size(); ++i) {
      if (std::abs(t[i + 1] - t[i] - h) > 1e-9 * std::abs(h)) return false;
    }
    return true;
  };
  SpacingMode mode;
  if (uniform(u)) {
    mode = SpacingMode::UniformInU;
  } else if (uniform(x)) {
    mode = SpacingMode::UniformInX;
  } else {
    throw ValidationError("wavefunction CSV nodes are neither uniform in x nor in u");
  }
  GridPtr grid = make_grid_windowed(params, n, mode, x[0], x[n - 1]);
  Eigen::VectorXcd samples = Eigen::Map<const Eigen::VectorXcd>(vs.data(), n);
  return make_wavefunction(std::move(grid), std::move(samples), pic);
}

void write_spectral_csv(std::ostream& os, const SpectralFunction& f) {
  os << "xi,re,im\n";
  for (int i = 0; i < f.xi.size(); ++i) {
    os << format_full(f.xi[i]) << ',' << format_full(f.values[i].real()) << ','
       << format_full(f.values[i].imag()) << '\n';
  }
}

SpectralFunction read_spectral_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) throw ValidationError("spectral CSV is empty");
  std::vector<double> xi;
  std::vector<complexd> vs;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    const auto fields = split_csv_line(line);
    if (fields.size() != 3) throw ValidationError("spectral CSV expects 3 columns");
    xi.push_back(parse_double(fields[0]));
    vs.emplace_back(parse_double(fields[1]), parse_double(fields[2]));
  }
  if (xi.empty()) throw ValidationError("spectral CSV has no rows");
  const int n = static_cast<int>(xi.size());
  return make_spectral(Eigen::Map<const Eigen::VectorXd>(xi.data(), n),
                       Eigen::Map<const Eigen::VectorXcd>(vs.data(), n));
}

void write_kernel_csv(std::ostream& os, const Kernel& k,
                      const std::vector<std::pair<int, int>>& index_pairs) {
  os << "x,x_prime,re,im\n";
  const Grid& g = *k.grid;
  for (const auto& [i, j] : index_pairs) {
    const complexd v = k.k(i, j);
    os << format_full(g.x[i]) << ',' << format_full(g.x[j]) << ',' << format_full(v.real())
       << ',' << format_full(v.imag()) << '\n';
  }
}

void write_trajectory_csv(std::ostream& os, const DeformationParams& p, const Trajectory& traj,
                          const Potential& pot) {
  os << "t,x,xi,u,h\n";
  for (const PhaseState& s : traj.states) {
    os << format_full(s.t) << ',' << format_full(s.x) << ',' << format_full(s.xi) << ','
       << format_full(u_of_x(p, s.x)) << ',' << format_full(hamiltonian_value(p, pot, s))
       << '\n';
  }
}

std::string residuals_to_json(const std::vector<ResidualReport>& reports) {
  json arr = json::array();
  for (const ResidualReport& r : reports) {
    json entry{{"label", r.label},
               {"relation", r.relation},
               {"residual", r.residual},
               {"tolerance", r.tolerance},
               {"pass", r.pass}};
    if (r.expected_divergence) entry["expected_divergence"] = true;
    arr.push_back(entry);
  }
  return arr.dump(2);
}

std::string bound_scan_to_json(const std::vector<BoundScanRow>& rows) {
  json arr = json::array();
  for (const BoundScanRow& r : rows) {
    arr.push_back(json{{"x", r.x},
                       {"x_prime", r.x_prime},
                       {"s_def", r.s_def},
                       {"s_std", r.s_std},
                       {"t_def", r.t_def},
                       {"t_std", r.t_std},
                       {"k_def", r.k_def},
                       {"k_std", r.k_std},
                       {"pass_action_bound", r.pass_action_bound}});
  }
  return arr.dump(2);
}

}  // namespace pdha

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "pdha/classical.hpp"
#include "pdha/eigenstates.hpp"
#include "pdha/operators.hpp"
#include "pdha/propagator.hpp"

namespace pdha {

/// Shortest decimal representation that round-trips to the same double.
std::string format_shortest(double v);

/// 17 significant digits; round-trips exactly and is format-stable.
std::string format_full(double v);

// Wavefunction CSV: header "x,u,re,im,picture", 17-digit values.
void write_wavefunction_csv(std::ostream& os, const WaveFunction& w);
WaveFunction read_wavefunction_csv(std::istream& is, const DeformationParams& params);

// Spectral CSV: header "xi,re,im".
void write_spectral_csv(std::ostream& os, const SpectralFunction& f);
SpectralFunction read_spectral_csv(std::istream& is);

// Kernel CSV rows "x,x_prime,re,im" for the requested node-index pairs.
void write_kernel_csv(std::ostream& os, const Kernel& k,
                      const std::vector<std::pair<int, int>>& index_pairs);

// Trajectory CSV: header "t,x,xi,u,h".
void write_trajectory_csv(std::ostream& os, const DeformationParams& p, const Trajectory& traj,
                          const Potential& pot);

std::string residuals_to_json(const std::vector<ResidualReport>& reports);
std::string bound_scan_to_json(const std::vector<BoundScanRow>& rows);

}  // namespace pdha

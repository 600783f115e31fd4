#pragma once

#include <string>
#include <vector>

#include "nsexact/solution.hpp"
#include "nsexact/verifier.hpp"

namespace nsexact {

/// Flat key=value configuration error with a line-precise message.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Parsed run configuration. Defaults reproduce the reference flow
/// (alpha=3, beta=4, zeta=5, cosh profile, standard kernel, nu=1, F=0).
struct RunConfig {
  // solution parameters
  double alpha = 3.0;
  double beta = 4.0;
  double zeta = 5.0;
  double psi_a = 0.5;
  double psi_b = 0.5;
  double phi_radius = 1.0;
  double phi_offset = 0.0;  // must stay 0: the 1-D profile has to be even
  std::string h_kind = "standard";  // standard | shifted | product
  double h_radius = 0.5;  // half-unit kernel keeps the convolution well resolved
  Vec3 h_offset{0.15, 0.0, 0.0};
  Vec3 h_radii{0.5, 0.4, 0.3};
  double nu = 1.0;
  std::string forcing = "zero";  // zero | linear | quadratic-potential

  // evaluation grid
  std::string grid_kind = "tensor";  // tensor | random (random draws resolution^3 seeded points)
  double grid_extent = 1.0;
  int grid_resolution = 4;
  std::vector<double> times{0.1, 0.5, 1.0};

  // numerics
  int quad_nodes_1d = 128;
  int quad_nodes_3d = 64;
  int normalization_nodes = 24;
  FDSpec fd{};

  // verification
  ToleranceProfile tolerances{};
  double trunc_radius = 6.0;
  int radial_nodes = 48;
  int radial_check_nodes = 192;

  // run control
  unsigned seed = 0;
  int threads = 1;
  std::string defect = "none";  // test hook: none | pressure | nonharmonic-g |
                                // zeta-constraint | unnormalized-h

  // sweep defaults (overridable on the command line)
  std::string sweep_axis = "quad-nodes";
  std::vector<double> sweep_levels{};
};

RunConfig parse_config_file(const std::string& path);
/// `origin` names the source in error messages (a path or "<string>").
RunConfig parse_config_text(const std::string& text, const std::string& origin);

/// Maps the parsed values onto a validated SolutionSpec; throws ConfigError
/// with the offending field named (the wave-vector message quotes
/// "zeta^2 = alpha^2 + beta^2").
SolutionSpec make_solution_spec(const RunConfig& config);

Defect parse_defect(const std::string& name);
SweepAxis parse_sweep_axis(const std::string& name);
SampleGrid make_grid(const RunConfig& config);
ToleranceProfile make_tolerances(const RunConfig& config);

}  // namespace nsexact

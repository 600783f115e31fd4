#include "nsexact/run_config.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

namespace nsexact {

namespace {

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

struct KeyContext {
  const std::string& origin;
  int line;
  const std::string& key;

  [[noreturn]] void fail(const std::string& what) const {
    std::ostringstream os;
    os << origin << ":" << line << " (" << key << "): " << what;
    throw ConfigError(os.str());
  }
};

double parse_double(const KeyContext& ctx, const std::string& value) {
  char* end = nullptr;
  const double v = std::strtod(value.c_str(), &end);
  if (end == value.c_str() || *end != '\0') ctx.fail("cannot parse '" + value + "' as a real");
  return v;
}

long parse_int(const KeyContext& ctx, const std::string& value) {
  char* end = nullptr;
  const long v = std::strtol(value.c_str(), &end, 10);
  if (end == value.c_str() || *end != '\0') ctx.fail("cannot parse '" + value + "' as an integer");
  return v;
}

std::vector<double> parse_list(const KeyContext& ctx, const std::string& value) {
  std::vector<double> out;
  std::istringstream is(value);
  std::string item;
  while (is >> item) out.push_back(parse_double(ctx, item));
  if (out.empty()) ctx.fail("expected at least one value");
  return out;
}

Vec3 parse_vec3(const KeyContext& ctx, const std::string& value) {
  const auto list = parse_list(ctx, value);
  if (list.size() != 3) ctx.fail("expected exactly three components");
  return {list[0], list[1], list[2]};
}

}  // namespace

RunConfig parse_config_text(const std::string& text, const std::string& origin) {
  RunConfig config;
  std::istringstream stream(text);
  std::string raw;
  int line_no = 0;
  while (std::getline(stream, raw)) {
    ++line_no;
    const auto hash = raw.find('#');
    if (hash != std::string::npos) raw = raw.substr(0, hash);
    const std::string line = trim(raw);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      std::ostringstream os;
      os << origin << ":" << line_no << ": expected key = value, got '" << line << "'";
      throw ConfigError(os.str());
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    const KeyContext ctx{origin, line_no, key};
    if (value.empty()) ctx.fail("missing value");

    if (key == "alpha") config.alpha = parse_double(ctx, value);
    else if (key == "beta") config.beta = parse_double(ctx, value);
    else if (key == "zeta") config.zeta = parse_double(ctx, value);
    else if (key == "psi_a") config.psi_a = parse_double(ctx, value);
    else if (key == "psi_b") config.psi_b = parse_double(ctx, value);
    else if (key == "phi_radius") config.phi_radius = parse_double(ctx, value);
    else if (key == "phi_offset") config.phi_offset = parse_double(ctx, value);
    else if (key == "h_kind") config.h_kind = value;
    else if (key == "h_radius") config.h_radius = parse_double(ctx, value);
    else if (key == "h_offset") config.h_offset = parse_vec3(ctx, value);
    else if (key == "h_radii") config.h_radii = parse_vec3(ctx, value);
    else if (key == "nu") config.nu = parse_double(ctx, value);
    else if (key == "forcing") config.forcing = value;
    else if (key == "grid_kind") config.grid_kind = value;
    else if (key == "grid_extent") config.grid_extent = parse_double(ctx, value);
    else if (key == "grid_resolution") config.grid_resolution = static_cast<int>(parse_int(ctx, value));
    else if (key == "times") config.times = parse_list(ctx, value);
    else if (key == "quad_nodes_1d") config.quad_nodes_1d = static_cast<int>(parse_int(ctx, value));
    else if (key == "quad_nodes_3d") config.quad_nodes_3d = static_cast<int>(parse_int(ctx, value));
    else if (key == "normalization_nodes")
      config.normalization_nodes = static_cast<int>(parse_int(ctx, value));
    else if (key == "fd_step") config.fd.space_step = parse_double(ctx, value);
    else if (key == "fd_time_step") config.fd.time_step = parse_double(ctx, value);
    else if (key == "fd_order") config.fd.stencil_order = static_cast<int>(parse_int(ctx, value));
    else if (key == "tol_div") config.tolerances.divergence = parse_double(ctx, value);
    else if (key == "tol_curl") config.tolerances.curl = parse_double(ctx, value);
    else if (key == "tol_momentum") config.tolerances.momentum = parse_double(ctx, value);
    else if (key == "tol_harmonicity") config.tolerances.harmonicity = parse_double(ctx, value);
    else if (key == "tol_mean_value") config.tolerances.mean_value = parse_double(ctx, value);
    else if (key == "tol_radial_identity")
      config.tolerances.radial_identity = parse_double(ctx, value);
    else if (key == "trunc_radius") config.trunc_radius = parse_double(ctx, value);
    else if (key == "radial_nodes") config.radial_nodes = static_cast<int>(parse_int(ctx, value));
    else if (key == "radial_check_nodes")
      config.radial_check_nodes = static_cast<int>(parse_int(ctx, value));
    else if (key == "seed") config.seed = static_cast<unsigned>(parse_int(ctx, value));
    else if (key == "threads") config.threads = static_cast<int>(parse_int(ctx, value));
    else if (key == "defect") config.defect = value;
    else if (key == "sweep_axis") config.sweep_axis = value;
    else if (key == "sweep_levels") config.sweep_levels = parse_list(ctx, value);
    else ctx.fail("unknown key");
  }
  return config;
}

RunConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_config_text(buffer.str(), path);
}

SolutionSpec make_solution_spec(const RunConfig& config) {
  SolutionSpec spec;
  spec.alpha = config.alpha;
  spec.beta = config.beta;
  spec.zeta = config.zeta;
  spec.psi = PsiSpec{config.psi_a, config.psi_b};

  if (config.phi_offset != 0.0)
    throw ConfigError(
        "phi_offset: phi must be an even profile; a nonzero offset breaks evenness");
  spec.phi = MollifierSpec{MollifierKind::EvenBump1D, config.phi_radius};

  MollifierSpec kernel;
  if (config.h_kind == "standard") {
    kernel = MollifierSpec{MollifierKind::StandardBump3D, config.h_radius};
  } else if (config.h_kind == "shifted") {
    kernel = MollifierSpec{MollifierKind::ShiftedBump3D, config.h_radius, config.h_offset};
    if (config.h_offset == Vec3{0.0, 0.0, 0.0})
      throw ConfigError("h_offset: the shifted kernel needs a nonzero offset");
  } else if (config.h_kind == "product") {
    kernel = MollifierSpec{MollifierKind::ProductBump3D, 1.0, Vec3{}, config.h_radii};
  } else {
    throw ConfigError("h_kind: expected standard | shifted | product, got '" + config.h_kind +
                      "'");
  }
  spec.kernel = kernel;

  spec.viscosity = config.nu;
  if (config.forcing == "zero") {
    spec.forcing_potential = ScalarField::constant(0.0);
  } else if (config.forcing == "linear") {
    spec.forcing_potential =
        ScalarField::polynomial({{1.0, 1, 0, 0}, {1.0, 0, 1, 0}, {1.0, 0, 0, 1}});
  } else if (config.forcing == "quadratic-potential") {
    spec.forcing_potential =
        ScalarField::polynomial({{0.5, 2, 0, 0}, {0.5, 0, 2, 0}, {0.5, 0, 0, 2}});
  } else {
    throw ConfigError("forcing: expected zero | linear | quadratic-potential, got '" +
                      config.forcing + "'");
  }

  spec.potential_nodes = config.quad_nodes_1d;
  spec.convolution_nodes = config.quad_nodes_3d;
  spec.normalization_nodes = config.normalization_nodes;

  try {
    spec.validate();
    config.fd.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  if (config.grid_resolution < 1 || !(config.grid_extent > 0.0))
    throw ConfigError("grid: resolution must be >= 1 and extent positive");
  if (config.times.empty()) throw ConfigError("times: need at least one value");
  if (config.threads < 1) throw ConfigError("threads: must be >= 1");
  return spec;
}

Defect parse_defect(const std::string& name) {
  if (name == "none") return Defect::None;
  if (name == "pressure") return Defect::CorruptPressure;
  if (name == "nonharmonic-g") return Defect::NonharmonicPotential;
  if (name == "zeta-constraint") return Defect::ZetaConstraint;
  if (name == "unnormalized-h") return Defect::UnnormalizedKernel;
  throw ConfigError(
      "defect: expected none | pressure | nonharmonic-g | zeta-constraint | unnormalized-h, "
      "got '" + name + "'");
}

SweepAxis parse_sweep_axis(const std::string& name) {
  if (name == "quad-nodes") return SweepAxis::QuadNodes;
  if (name == "fd-step") return SweepAxis::FdStep;
  if (name == "trunc-radius") return SweepAxis::TruncRadius;
  throw ConfigError("sweep axis: expected quad-nodes | fd-step | trunc-radius, got '" + name +
                    "'");
}

SampleGrid make_grid(const RunConfig& config) {
  if (config.grid_kind == "tensor")
    return SampleGrid::tensor(config.grid_extent, config.grid_resolution, config.times);
  if (config.grid_kind == "random") {
    const int count =
        config.grid_resolution * config.grid_resolution * config.grid_resolution;
    return SampleGrid::random(count, config.grid_extent, config.times, config.seed);
  }
  throw ConfigError("grid_kind: expected tensor | random, got '" + config.grid_kind + "'");
}

ToleranceProfile make_tolerances(const RunConfig& config) {
  ToleranceProfile tol = config.tolerances;
  tol.mean_value_radius = config.trunc_radius;
  tol.mean_value_nodes = config.radial_nodes;
  tol.radial_check_nodes = config.radial_check_nodes;
  return tol;
}

}  // namespace nsexact

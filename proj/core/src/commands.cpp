#include "nsexact/commands.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "nsexact/parallel.hpp"

namespace nsexact {

std::string format_g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

std::ofstream open_output(const std::string& out_dir, const std::string& name) {
  std::filesystem::create_directories(out_dir);
  const auto path = std::filesystem::path(out_dir) / name;
  std::ofstream out(path, std::ios::binary);  // fixed newlines across platforms
  if (!out) throw std::runtime_error("cannot open output file '" + path.string() + "'");
  return out;
}

void render_report(const ResidualReport& report, const RunConfig& config, std::ostream& os) {
  os << "verification report\n";
  os << "  solution: alpha=" << config.alpha << " beta=" << config.beta << " zeta=" << config.zeta
     << " psi=(" << config.psi_a << "," << config.psi_b << ") kernel=" << config.h_kind
     << " nu=" << config.nu << " forcing=" << config.forcing << "\n";
  os << "  grid: " << config.grid_resolution << "^3 in [-" << config.grid_extent << ","
     << config.grid_extent << "]^3, " << config.times.size() << " times\n";
  os << "  quadrature: " << config.quad_nodes_1d << " inner nodes, " << config.quad_nodes_3d
     << "^3 kernel nodes\n";
  if (config.defect != "none") os << "  injected defect: " << config.defect << "\n";
  os << "\n";
  os << "  " << std::left << std::setw(22) << "check" << std::setw(14) << "max" << std::setw(14)
     << "mean" << std::setw(14) << "tolerance" << "result\n";
  for (const auto& c : report.checks) {
    os << "  " << std::left << std::setw(22) << c.name;
    if (!c.ran) {
      os << std::setw(14) << "-" << std::setw(14) << "-" << std::setw(14) << "-"
         << "SKIPPED (" << c.detail << ")\n";
      continue;
    }
    std::ostringstream maxs, means, tols;
    maxs << std::scientific << std::setprecision(3) << c.max;
    means << std::scientific << std::setprecision(3) << c.mean;
    tols << std::scientific << std::setprecision(3) << c.tolerance;
    os << std::setw(14) << maxs.str() << std::setw(14) << means.str() << std::setw(14)
       << tols.str() << (c.passed ? "PASS" : "FAIL");
    if (c.sense == CheckResult::Sense::LowerBound) os << "  (lower bound)";
    os << "\n";
    if (!c.detail.empty()) os << "      " << c.detail << "\n";
    if (!c.passed && !c.worst.empty()) {
      os << "      worst offenders:\n";
      for (const auto& w : c.worst)
        os << "        t=" << w.t << " x=(" << w.x.x << "," << w.x.y << "," << w.x.z
           << ") |.|=" << std::scientific << std::setprecision(3) << w.magnitude << "\n";
    }
  }
  os << "\n";
  if (report.passed()) {
    os << "overall: PASS\n";
  } else {
    os << "overall: FAIL (dominant check: " << report.dominant_failure() << ")\n";
  }
}

}  // namespace

int cmd_generate(const RunConfig& config, const std::string& out_dir, std::ostream& diag) {
  SolutionSpec spec;
  SampleGrid grid{};
  Defect defect = Defect::None;
  try {
    spec = make_solution_spec(config);
    grid = make_grid(config);
    defect = parse_defect(config.defect);
  } catch (const ConfigError& e) {
    diag << "config error: " << e.what() << "\n";
    return kExitConfig;
  }

  try {
    const NSSolution sol = build_defective_solution(spec, defect);
    struct Row {
      Vec3 x;
      double t;
      Vec3 u;
      double p;
    };
    std::vector<Row> rows;
    rows.reserve(grid.points.size() * grid.times.size());
    for (double t : grid.times)
      for (const auto& x : grid.points) rows.push_back({x, t, {}, 0.0});
    parallel_for(rows.size(), config.threads, [&](std::size_t i) {
      rows[i].u = sol.velocity(rows[i].x, rows[i].t);
      rows[i].p = sol.pressure(rows[i].x, rows[i].t);
    });

    auto out = open_output(out_dir, "fields.csv");
    out << "x,y,z,t,ux,uy,uz,p\n";
    for (const auto& r : rows)
      out << format_g17(r.x.x) << ',' << format_g17(r.x.y) << ',' << format_g17(r.x.z) << ','
          << format_g17(r.t) << ',' << format_g17(r.u.x) << ',' << format_g17(r.u.y) << ','
          << format_g17(r.u.z) << ',' << format_g17(r.p) << '\n';
    diag << "wrote " << rows.size() << " rows\n";
    return kExitOk;
  } catch (const std::exception& e) {
    diag << "build failure: " << e.what() << "\n";
    return kExitFailure;
  }
}

int cmd_verify(const RunConfig& config, const std::string& out_dir, std::ostream& diag) {
  SolutionSpec spec;
  SampleGrid grid{};
  Defect defect = Defect::None;
  try {
    spec = make_solution_spec(config);
    grid = make_grid(config);
    defect = parse_defect(config.defect);
  } catch (const ConfigError& e) {
    diag << "config error: " << e.what() << "\n";
    return kExitConfig;
  }

  try {
    const ResidualReport report =
        verify_solution(spec, grid, make_tolerances(config), config.fd, defect, config.threads);

    std::ostringstream text;
    render_report(report, config, text);
    diag << text.str();
    auto report_file = open_output(out_dir, "report.txt");
    report_file << text.str();

    auto csv = open_output(out_dir, "checks.csv");
    csv << "check,max,mean,tolerance,pass\n";
    for (const auto& c : report.checks) {
      if (c.ran)
        csv << c.name << ',' << format_g17(c.max) << ',' << format_g17(c.mean) << ','
            << format_g17(c.tolerance) << ',' << (c.passed ? 1 : 0) << '\n';
      else
        csv << c.name << ",nan,nan,nan,0\n";
    }
    return report.passed() ? kExitOk : kExitFailure;
  } catch (const std::exception& e) {
    diag << "verification failure: " << e.what() << "\n";
    return kExitFailure;
  }
}

int cmd_sweep(const RunConfig& config, const std::string& axis,
              const std::vector<double>& levels, const std::string& out_dir,
              std::ostream& diag) {
  SolutionSpec spec;
  SweepAxis sweep_axis;
  Defect defect = Defect::None;
  try {
    spec = make_solution_spec(config);
    sweep_axis = parse_sweep_axis(axis);
    defect = parse_defect(config.defect);
    if (levels.size() < 3) throw ConfigError("sweep: need at least 3 levels");
  } catch (const ConfigError& e) {
    diag << "config error: " << e.what() << "\n";
    return kExitConfig;
  }

  try {
    const auto rows = convergence_sweep(spec, sweep_axis, levels, defect, config.threads);
    auto out = open_output(out_dir, "sweep.csv");
    out << "level,residual\n";
    for (const auto& r : rows)
      out << format_g17(r.level) << ',' << format_g17(r.residual) << '\n';
    diag << "wrote " << rows.size() << " levels\n";
    return kExitOk;
  } catch (const std::exception& e) {
    diag << "sweep failure: " << e.what() << "\n";
    return kExitFailure;
  }
}

}  // namespace nsexact

// Benchmark driver: assembles the tracking problem, runs multigrid solves
// and reproduces the smoothing-step and robustness tables.

#include "stokesmg/bench.hpp"
#include "stokesmg/io.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>

namespace {

int exit_status(const stokesmg::ConvergenceReport& report) { return report.converged ? 0 : 2; }

void emit_table(const std::vector<stokesmg::ConvergenceReport>& reports,
                const std::string& out_path) {
  if (out_path.empty())
    stokesmg::write_table_csv(reports, std::cout);
  else
    stokesmg::write_table_csv(reports, out_path);
}

bool all_converged(const std::vector<stokesmg::ConvergenceReport>& reports) {
  for (const auto& r : reports)
    if (!r.converged)
      return false;
  return true;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multigrid solver benchmarks for the Stokes velocity-tracking control problem"};
  app.require_subcommand(1);

  stokesmg::RunConfig run;
  std::string cycle = "w";
  std::string out_path;

  auto* solve = app.add_subcommand("solve", "run one multigrid solve and print a JSON report");
  solve->add_option("--level", run.level, "grid level k")->required();
  solve->add_option("--alpha", run.alpha, "regularization parameter");
  solve->add_option("--nu-pre", run.nu_pre, "pre-smoothing steps");
  solve->add_option("--nu-post", run.nu_post, "post-smoothing steps");
  solve->add_option("--cycle", cycle, "cycle type: v or w")
      ->check(CLI::IsMember({"v", "w"}));
  solve->add_option("--tau", run.tau, "smoother damping");
  solve->add_option("--eps", run.eps, "residual reduction target");
  solve->add_option("--export-fields", run.export_fields_path, "write solution fields as CSV");
  solve->add_option("--out", out_path, "append the JSON report to this file");

  int k_max = 6;
  auto* tnu = app.add_subcommand("table-nu", "smoothing-step sweep at k=4, alpha=1");
  tnu->add_option("--out", out_path, "write CSV here instead of stdout");

  auto* talpha = app.add_subcommand("table-alpha", "robustness grid over k and alpha");
  talpha->add_option("--kmax", k_max, "largest grid level")->check(CLI::Range(3, 8));
  talpha->add_option("--out", out_path, "write CSV here instead of stdout");

  int spec_level = 4;
  double spec_alpha = 1.0;
  double spec_tau = 0.35;
  auto* spectrum = app.add_subcommand("check-spectrum", "report tau * rho(L^-1 A L^-1 A)");
  spectrum->add_option("--level", spec_level, "grid level k")->required();
  spectrum->add_option("--alpha", spec_alpha, "regularization parameter");
  spectrum->add_option("--tau", spec_tau, "damping to check");

  CLI11_PARSE(app, argc, argv);

  try {
    if (solve->parsed()) {
      run.cycle = (cycle == "w") ? stokesmg::CycleType::w : stokesmg::CycleType::v;
      const auto report = stokesmg::run_solve(run);
      const std::string record = stokesmg::report_json(report);
      std::cout << record << '\n';
      if (!out_path.empty()) {
        std::ofstream out(out_path, std::ios::app);
        out << record << '\n';
      }
      return exit_status(report);
    }
    if (tnu->parsed()) {
      const auto reports = stokesmg::table_nu();
      emit_table(reports, out_path);
      return all_converged(reports) ? 0 : 2;
    }
    if (talpha->parsed()) {
      const auto reports = stokesmg::table_alpha(k_max);
      emit_table(reports, out_path);
      return all_converged(reports) ? 0 : 2;
    }
    if (spectrum->parsed()) {
      const auto report = stokesmg::check_spectrum(spec_level, spec_alpha, spec_tau);
      nlohmann::json j;
      j["k"] = report.level;
      j["alpha"] = report.alpha;
      j["tau"] = report.tau;
      j["rho"] = report.rho;
      j["tau_rho"] = report.tau_rho();
      j["safe"] = report.safe();
      std::cout << j.dump() << '\n';
      return report.safe() ? 0 : 2;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

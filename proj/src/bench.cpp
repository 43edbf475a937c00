#include "stokesmg/bench.hpp"

#include "stokesmg/io.hpp"

#include <atomic>
#include <mutex>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <stdexcept>
#include <thread>

namespace stokesmg {

void RunConfig::validate() const {
  if (level < 0 || level > 8)
    throw std::invalid_argument("level must lie in [0, 8]");
  if (!(alpha > 0.0))
    throw std::invalid_argument("alpha must be positive");
  if (!(eps > 0.0) || eps > 1.0)
    throw std::invalid_argument("eps must lie in (0, 1]");
  if (nu_pre < 0 || nu_post < 0 || nu_pre + nu_post == 0)
    throw std::invalid_argument("need at least one smoothing step per cycle");
  if (!(tau > 0.0))
    throw std::invalid_argument("tau must be positive");
}

CycleConfig RunConfig::cycle_config() const {
  CycleConfig cfg;
  cfg.cycle = cycle;
  cfg.smoother.tau = tau;
  cfg.smoother.nu_pre = nu_pre;
  cfg.smoother.nu_post = nu_post;
  return cfg;
}

ConvergenceReport run_solve(const RunConfig& config) {
  config.validate();
  const Hierarchy hierarchy = build_hierarchy(config.level, benchmark_problem(config.alpha));
  auto [x, report] = solve(hierarchy, config.level, config.alpha, config.cycle_config(),
                           config.eps);
  if (!config.export_fields_path.empty()) {
    const auto& level = hierarchy.levels[config.level];
    write_state_csv(level.mesh, level.dofs, x, config.alpha, config.export_fields_path);
  }
  return report;
}

int worker_count() {
  if (const char* env = std::getenv("STOKESMG_WORKERS")) {
    const int n = std::atoi(env);
    if (n >= 1)
      return n;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

std::vector<ConvergenceReport> run_many(const Hierarchy& hierarchy,
                                        const std::vector<RunConfig>& configs) {
  for (const auto& cfg : configs) {
    cfg.validate();
    if (cfg.level > hierarchy.max_level())
      throw std::invalid_argument("run level exceeds the hierarchy");
  }
  std::vector<ConvergenceReport> reports(configs.size());
  const int workers = std::min<int>(worker_count(), static_cast<int>(configs.size()));
  if (workers <= 1) {
    for (std::size_t i = 0; i < configs.size(); ++i)
      reports[i] = solve(hierarchy, configs[i].level, configs[i].alpha,
                         configs[i].cycle_config(), configs[i].eps)
                       .second;
    return reports;
  }

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      try {
        for (std::size_t i = next.fetch_add(1); i < configs.size(); i = next.fetch_add(1))
          reports[i] = solve(hierarchy, configs[i].level, configs[i].alpha,
                             configs[i].cycle_config(), configs[i].eps)
                           .second;
      } catch (...) {
        const std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure)
          failure = std::current_exception();
      }
    });
  for (auto& t : pool)
    t.join();
  if (failure)
    std::rethrow_exception(failure);
  return reports;
}

std::vector<ConvergenceReport> table_nu() {
  const Hierarchy hierarchy = build_hierarchy(4, benchmark_problem());
  std::vector<RunConfig> configs;
  for (const int nu : {1, 2, 4, 8}) {
    RunConfig cfg;
    cfg.level = 4;
    cfg.alpha = 1.0;
    cfg.nu_pre = nu;
    cfg.nu_post = nu;
    configs.push_back(cfg);
  }
  return run_many(hierarchy, configs);
}

std::vector<ConvergenceReport> table_alpha(int k_max) {
  if (k_max < 3 || k_max > 8)
    throw std::invalid_argument("table-alpha k_max must lie in [3, 8]");
  const Hierarchy hierarchy = build_hierarchy(k_max, benchmark_problem());
  std::vector<RunConfig> configs;
  for (int k = 3; k <= k_max; ++k)
    for (const double alpha : {1.0, 1e-3, 1e-6, 1e-9, 1e-12}) {
      RunConfig cfg;
      cfg.level = k;
      cfg.alpha = alpha;
      configs.push_back(cfg);
    }
  return run_many(hierarchy, configs);
}

void write_table_csv(const std::vector<ConvergenceReport>& reports, std::ostream& out) {
  out << "k,alpha,nu_pre,nu_post,cycle,tau,eps,n,q,converged\n";
  out << std::setprecision(12);
  for (const auto& r : reports)
    out << r.level << ',' << r.alpha << ',' << r.nu_pre << ',' << r.nu_post << ','
        << cycle_name(r.cycle) << ',' << r.tau << ',' << r.eps << ',' << r.iterations << ','
        << r.rate << ',' << (r.converged ? 1 : 0) << '\n';
}

void write_table_csv(const std::vector<ConvergenceReport>& reports, const std::string& path) {
  std::ofstream out(path);
  if (!out)
    throw std::runtime_error("cannot open " + path);
  write_table_csv(reports, out);
}

SpectrumReport check_spectrum(int level, double alpha, double tau, int iterations) {
  if (level < 0 || level > 8)
    throw std::invalid_argument("level must lie in [0, 8]");
  SpectrumReport report;
  report.level = level;
  report.alpha = alpha;
  report.tau = tau;
  report.iterations = iterations;
  const Hierarchy hierarchy = build_hierarchy(level, benchmark_problem(alpha));
  const auto& blocks = hierarchy.levels[level].blocks;
  const KktOperator op(blocks, alpha);
  const auto precond = build_precond(blocks, alpha, Hierarchy::level_scale(level));
  report.rho = estimate_spectral_radius(op, precond, iterations);
  return report;
}

} // namespace stokesmg

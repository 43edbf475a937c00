#pragma once

#include "stokesmg/multigrid.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace stokesmg {

/// One benchmark run. Validation: 0 <= level <= 8 (resource guard),
/// alpha > 0, eps in (0, 1].
struct RunConfig {
  int level = 3;
  double alpha = 1.0;
  int nu_pre = 2;
  int nu_post = 2;
  CycleType cycle = CycleType::w;
  double tau = 0.35;
  double eps = 1e-6;
  std::string export_fields_path; // empty: no field export

  void validate() const;
  CycleConfig cycle_config() const;
};

/// Builds the hierarchy for the run, solves, optionally exports the fields.
ConvergenceReport run_solve(const RunConfig& config);

/// Same runs against a shared prebuilt hierarchy (no field export).
std::vector<ConvergenceReport> run_many(const Hierarchy& hierarchy,
                                        const std::vector<RunConfig>& configs);

/// Smoothing-step sweep nu in {1+1, 2+2, 4+4, 8+8} at level 4, alpha = 1.
std::vector<ConvergenceReport> table_nu();

/// Robustness grid k in {3..k_max} x alpha in {1, 1e-3, 1e-6, 1e-9, 1e-12}.
std::vector<ConvergenceReport> table_alpha(int k_max = 6);

/// CSV with one row per run, echoing the full configuration:
/// k,alpha,nu_pre,nu_post,cycle,tau,eps,n,q,converged
void write_table_csv(const std::vector<ConvergenceReport>& reports, std::ostream& out);
void write_table_csv(const std::vector<ConvergenceReport>& reports, const std::string& path);

struct SpectrumReport {
  int level = 0;
  double alpha = 1.0;
  double tau = 0.35;
  double rho = 0.0; // estimate of rho(L^-1 A L^-1 A)
  int iterations = 0;

  double tau_rho() const { return tau * rho; }
  bool safe() const { return tau_rho() <= 2.0; }
};

SpectrumReport check_spectrum(int level, double alpha, double tau = 0.35, int iterations = 200);

/// Worker count for fanned-out table runs: STOKESMG_WORKERS if set, else the
/// hardware concurrency.
int worker_count();

} // namespace stokesmg

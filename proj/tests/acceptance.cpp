// Acceptance gate: every criterion below runs at its stated tolerance and
// prints one PASS/FAIL line. The process exits nonzero if any criterion
// fails.

#include "stokesmg/bench.hpp"
#include "stokesmg/io.hpp"
#include "stokesmg/multigrid.hpp"
#include "support/reference_fe.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <cstdio>
#include <random>
#include <sstream>
#include <vector>

using namespace stokesmg;

namespace {

int failures = 0;

void report(int id, const std::string& label, bool ok, const std::string& detail) {
  std::printf("[%s] criterion %d: %s (%s)\n", ok ? "PASS" : "FAIL", id, label.c_str(),
              detail.c_str());
  std::fflush(stdout);
  if (!ok)
    ++failures;
}

StateVector random_state(const StateLayout& layout, unsigned seed) {
  std::mt19937 gen(seed);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  StateVector x(layout);
  for (Index i = 0; i < x.coeffs.size(); ++i)
    x.coeffs[i] = dist(gen);
  return x;
}

double max_abs(const SparseMatrix& m) {
  double v = 0.0;
  for (int k = 0; k < m.outerSize(); ++k)
    for (SparseMatrix::InnerIterator it(m, k); it; ++it)
      v = std::max(v, std::abs(it.value()));
  return v;
}

void criterion_1_nu_sweep() {
  const std::vector<double> q_ref{0.796, 0.647, 0.507, 0.390};
  const std::vector<int> n_ref{61, 32, 21, 15};
  const auto reports = table_nu();
  bool ok = reports.size() == 4;
  std::ostringstream detail;
  for (std::size_t i = 0; ok && i < reports.size(); ++i) {
    const auto& r = reports[i];
    detail << "nu=" << r.nu_pre << "+" << r.nu_post << ": n=" << r.iterations
           << " q=" << r.rate << "  ";
    ok = ok && r.converged;
    ok = ok && std::abs(r.rate - q_ref[i]) <= 0.08;
    ok = ok && std::abs(r.iterations - n_ref[i]) <= 0.25 * n_ref[i];
    if (i > 0) {
      // strictly decreasing, with ratios consistent with the nu^-1/2 trend
      const double ratio = reports[i].rate / reports[i - 1].rate;
      ok = ok && ratio < 1.0 && ratio >= 0.6 && ratio <= 0.9;
    }
  }
  report(1, "nu-sweep reproduction at k=4, alpha=1", ok, detail.str());
}

std::vector<ConvergenceReport> criterion_2_robustness() {
  const auto reports = table_alpha(5);
  bool ok = true;
  std::ostringstream detail;
  for (const auto& r : reports) {
    ok = ok && r.converged && r.rate <= 0.85 && r.iterations <= 90;
    if (r.alpha >= 1e-6)
      ok = ok && r.rate >= 0.58 && r.rate <= 0.72;
    detail << "k=" << r.level << "/a=" << r.alpha << ": n=" << r.iterations << " q=" << r.rate
           << "  ";
  }
  report(2, "robustness grid k=3..5, alpha down to 1e-12", ok, detail.str());
  return reports;
}

void criterion_3_level_robustness(const std::vector<ConvergenceReport>& grid) {
  double lo = 1.0, hi = 0.0;
  for (const auto& r : grid)
    if (r.alpha == 1.0 && r.level >= 3 && r.level <= 5) {
      lo = std::min(lo, r.rate);
      hi = std::max(hi, r.rate);
    }
  std::ostringstream detail;
  detail << "q range over k=3..5 at alpha=1: [" << lo << ", " << hi << "]";
  report(3, "level-robustness spread <= 0.05", hi - lo <= 0.05, detail.str());
}

void criterion_4_galerkin() {
  const Hierarchy h = build_hierarchy(3, benchmark_problem());
  bool ok = true;
  double worst = 0.0;
  for (int fine = 1; fine <= 3; ++fine) {
    const SparseMatrix p = state_prolongation_matrix(h.transfers[fine - 1]);
    for (const double alpha : {1.0, 1e-6, 1e-12}) {
      const SparseMatrix a_fine = kkt_matrix(h.levels[fine].blocks, alpha);
      const SparseMatrix a_coarse = kkt_matrix(h.levels[fine - 1].blocks, alpha);
      const SparseMatrix diff = SparseMatrix(p.transpose() * a_fine * p) - a_coarse;
      const double rel = max_abs(diff) / max_abs(a_coarse);
      worst = std::max(worst, rel);
      ok = ok && rel <= 1e-10;
    }
  }
  std::ostringstream detail;
  detail << "worst relative max-norm defect " << worst;
  report(4, "Galerkin identity P'AP = A_coarse for pairs (1,0),(2,1),(3,2)", ok, detail.str());
}

void criterion_5_smoother_safety() {
  const Hierarchy h = build_hierarchy(4, benchmark_problem());
  bool ok = true;
  double worst = 0.0;
  for (int level = 0; level <= 4; ++level)
    for (const double alpha : {1.0, 1e-3, 1e-6, 1e-9, 1e-12}) {
      const KktOperator op(h.levels[level].blocks, alpha);
      const auto l = build_precond(h.levels[level].blocks, alpha, Hierarchy::level_scale(level));
      const double tau_rho = 0.35 * estimate_spectral_radius(op, l, 200);
      worst = std::max(worst, tau_rho);
      ok = ok && tau_rho <= 2.0;
    }

  // at k=0 the power estimate must agree with a dense eigensolver to 1%
  const KktOperator op0(h.levels[0].blocks, 1.0);
  const auto l0 = build_precond(h.levels[0].blocks, 1.0, 1.0);
  const Vector inv_sqrt = l0.diag.cwiseSqrt().cwiseInverse();
  const Matrix t =
      inv_sqrt.asDiagonal() * Matrix(kkt_matrix(h.levels[0].blocks, 1.0)) * inv_sqrt.asDiagonal();
  const Eigen::SelfAdjointEigenSolver<Matrix> eig(0.5 * (t + t.transpose()));
  const double dense =
      std::pow(std::max(std::abs(eig.eigenvalues().minCoeff()), eig.eigenvalues().maxCoeff()), 2);
  const double power = estimate_spectral_radius(op0, l0, 200);
  const double mismatch = std::abs(power - dense) / dense;
  ok = ok && mismatch <= 0.01;

  std::ostringstream detail;
  detail << "max tau*rho = " << worst << ", k=0 power-vs-dense mismatch " << mismatch;
  report(5, "tau = 0.35 keeps tau*rho <= 2 for k <= 4 and all alpha", ok, detail.str());
}

void criterion_6_oracle_equivalence() {
  const Hierarchy h = build_hierarchy(3, benchmark_problem());
  bool ok = true;
  double worst = 0.0;
  for (int level = 1; level <= 3; ++level)
    for (const double alpha : {1.0, 1e-6, 1e-12}) {
      const auto [x, r] = solve(h, level, alpha, CycleConfig{}, 1e-6);
      const StateVector x_star = direct_reference_solve(h, level, alpha);
      const auto l = build_precond(h.levels[level].blocks, alpha, Hierarchy::level_scale(level));
      StateVector diff(x.layout);
      diff.coeffs = x.coeffs - x_star.coeffs;
      const double rel = norm_0k(l, diff) / norm_0k(l, x_star);
      worst = std::max(worst, rel);
      ok = ok && r.converged && rel <= 1e-5;
    }
  std::ostringstream detail;
  detail << "worst |||x - x*||| / |||x*||| = " << worst;
  report(6, "W-cycle solution matches the direct reference at k <= 3", ok, detail.str());
}

void criterion_7_structural_suite() {
  bool ok = true;
  std::ostringstream detail;

  // element-level symbolic oracles
  {
    const std::array<Vector2, 3> unit_right{Vector2{0, 0}, Vector2{1, 0}, Vector2{0, 1}};
    const auto em = element_matrices(unit_right);
    Eigen::Matrix3d mass_expected;
    mass_expected << 2, 1, 1, 1, 2, 1, 1, 1, 2;
    mass_expected *= 0.5 / 12.0;
    ok = ok && (em.p1_mass - mass_expected).cwiseAbs().maxCoeff() < 1e-15;

    const auto grads = barycentric_gradients(unit_right);
    Eigen::Matrix3d stiff;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        stiff(i, j) = 0.5 * grads[i].dot(grads[j]);
    Eigen::Matrix3d stiff_expected;
    stiff_expected << 1.0, -0.5, -0.5, -0.5, 0.5, 0.0, -0.5, 0.0, 0.5;
    ok = ok && (stiff - stiff_expected).cwiseAbs().maxCoeff() < 1e-15;

    for (int i = 0; i < 3; ++i)
      ok = ok && std::abs(em.p2_mass.row(i).sum()) < 1e-15;
    for (int i = 3; i < 6; ++i)
      ok = ok && std::abs(em.p2_mass.row(i).sum() - 0.5 / 3.0) < 1e-14;
    if (!ok)
      detail << "element oracles failed; ";
  }

  Hierarchy h = build_hierarchy(2, benchmark_problem());
  for (int level = 0; level <= 2 && ok; ++level) {
    const auto& blocks = h.levels[level].blocks;
    for (const double alpha : {1.0, 1e-6, 1e-12}) {
      const KktOperator op(blocks, alpha);
      const auto l = build_precond(blocks, alpha, Hierarchy::level_scale(level));

      // operator symmetry
      for (unsigned seed = 0; seed < 3; ++seed) {
        const StateVector x = random_state(op.layout(), 900 + seed);
        const StateVector y = random_state(op.layout(), 950 + seed);
        const double axy = op.apply(x).coeffs.dot(y.coeffs);
        const double xay = x.coeffs.dot(op.apply(y).coeffs);
        ok = ok && std::abs(axy - xay) <=
                       1e-12 / alpha * x.coeffs.norm() * y.coeffs.norm();
      }
      // constant-pressure nullspace
      StateVector p_const(op.layout()), mu_const(op.layout());
      p_const.p().setOnes();
      mu_const.mu().setOnes();
      ok = ok && op.apply(p_const).coeffs.cwiseAbs().maxCoeff() <= 1e-12;
      ok = ok && op.apply(mu_const).coeffs.cwiseAbs().maxCoeff() <= 1e-12;
      // zero-mean residual compatibility
      const StateVector f = op.rhs();
      for (unsigned seed = 0; seed < 3; ++seed) {
        const StateVector x = random_state(op.layout(), 980 + seed);
        StateVector r = op.apply(x);
        r.coeffs = f.coeffs - r.coeffs;
        ok = ok && std::abs(r.p().sum()) <= 1e-12 * x.coeffs.norm();
        ok = ok && std::abs(r.mu().sum()) <= 1e-12 * x.coeffs.norm();
      }
      // norm duality
      for (unsigned seed = 0; seed < 3; ++seed) {
        const StateVector r = random_state(op.layout(), 990 + seed);
        const StateVector x = random_state(op.layout(), 995 + seed);
        ok = ok && std::abs(r.coeffs.dot(x.coeffs)) <=
                       norm_2k_residual(l, r) * norm_0k(l, x) * (1.0 + 1e-12);
      }
      if (!ok) {
        detail << "invariants failed at level " << level << " alpha " << alpha << "; ";
        break;
      }
    }
  }

  // transfer transpose identities
  for (int fine = 1; fine <= 2 && ok; ++fine) {
    const auto& t = h.transfers[fine - 1];
    for (unsigned seed = 0; seed < 3; ++seed) {
      const StateVector xc = random_state(h.layout(fine - 1), 700 + seed);
      const StateVector yf = random_state(h.layout(fine), 750 + seed);
      const double a = prolongate(t, xc).coeffs.dot(yf.coeffs);
      const double b = xc.coeffs.dot(restrict_to_coarse(t, yf).coeffs);
      ok = ok && std::abs(a - b) <= 1e-13 * xc.coeffs.norm() * yf.coeffs.norm();
    }
  }

  if (ok)
    detail << "symmetry, nullspace, compatibility, element oracles, transposes, duality";
  report(7, "structural invariant suite on levels 0-2", ok, detail.str());
}

void criterion_8_smoother_monotonicity() {
  const Hierarchy h = build_hierarchy(2, benchmark_problem());
  bool ok = true;
  double worst = 0.0;
  for (const double alpha : {1.0, 1e-12}) {
    const KktOperator op(h.levels[2].blocks, alpha);
    const auto l = build_precond(h.levels[2].blocks, alpha, Hierarchy::level_scale(2));
    const StateVector f(op.layout()); // error equation: zero rhs
    for (unsigned seed = 0; seed < 100 && ok; ++seed) {
      StateVector e = random_state(op.layout(), 2000 + seed);
      double previous = norm_0k(l, e);
      for (int step = 0; step < 8; ++step) {
        smooth(op, l, SmootherConfig{}, e, f, 1);
        const double current = norm_0k(l, e);
        worst = std::max(worst, current / previous);
        ok = ok && current <= previous * (1.0 + 1e-12);
        previous = current;
      }
    }
  }
  std::ostringstream detail;
  detail << "100 random errors, 8 steps, worst step ratio " << worst;
  report(8, "smoothing steps never increase the error norm at k=2", ok, detail.str());
}

} // namespace

int main() {
  criterion_1_nu_sweep();
  const auto grid = criterion_2_robustness();
  criterion_3_level_robustness(grid);
  criterion_4_galerkin();
  criterion_5_smoother_safety();
  criterion_6_oracle_equivalence();
  criterion_7_structural_suite();
  criterion_8_smoother_monotonicity();

  if (failures == 0)
    std::printf("acceptance: all criteria passed\n");
  else
    std::printf("acceptance: %d criterion(s) failed\n", failures);
  return failures == 0 ? 0 : 1;
}

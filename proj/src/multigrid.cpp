#include "stokesmg/multigrid.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace stokesmg {

StateLayout Hierarchy::layout(int level) const {
  StateLayout l;
  l.velocity = levels.at(level).blocks.velocity_dof_count();
  l.pressure = levels.at(level).blocks.p1_count;
  return l;
}

Hierarchy build_hierarchy(int max_level, const ProblemSpec& problem) {
  if (max_level < 0)
    throw std::invalid_argument("hierarchy needs max_level >= 0");
  Hierarchy h;
  h.problem = problem;
  h.levels.reserve(max_level + 1);
  for (int k = 0; k <= max_level; ++k) {
    Hierarchy::Level level;
    level.mesh = (k == 0) ? build_coarse_mesh() : refine(h.levels[k - 1].mesh);
    level.dofs = build_dof_maps(level.mesh);
    level.blocks = assemble(level.mesh, level.dofs, problem);
    h.levels.push_back(std::move(level));
    if (k > 0)
      h.transfers.push_back(build_transfer(h.levels[k - 1].mesh, h.levels[k - 1].dofs,
                                           h.levels[k].mesh, h.levels[k].dofs));
  }
  return h;
}

CoarseSolver::CoarseSolver(const AssembledBlocks& blocks, double alpha) {
  layout_.velocity = blocks.velocity_dof_count();
  layout_.pressure = blocks.p1_count;
  pressure_weights_ = blocks.p1_mass * Vector::Ones(blocks.p1_count);

  const Index n = layout_.total();
  SparseMatrix a = kkt_matrix(blocks, alpha);
  std::vector<Triplet> trips;
  trips.reserve(a.nonZeros() + 4 * layout_.pressure);
  for (int k = 0; k < a.outerSize(); ++k)
    for (SparseMatrix::InnerIterator it(a, k); it; ++it)
      trips.emplace_back(it.row(), it.col(), it.value());
  for (Index i = 0; i < layout_.pressure; ++i) {
    const double w = pressure_weights_[i];
    trips.emplace_back(layout_.p_offset() + i, n, w);
    trips.emplace_back(n, layout_.p_offset() + i, w);
    trips.emplace_back(layout_.mu_offset() + i, n + 1, w);
    trips.emplace_back(n + 1, layout_.mu_offset() + i, w);
  }
  SparseMatrix augmented(n + 2, n + 2);
  augmented.setFromTriplets(trips.begin(), trips.end());
  lu_.compute(augmented);
  if (lu_.info() != Eigen::Success)
    throw std::runtime_error("coarse operator factorization failed (singular augmented system)");
}

StateVector CoarseSolver::solve(const StateVector& f) const {
  if (f.layout != layout_)
    throw std::invalid_argument("coarse_solve: rhs has wrong layout");
  Vector rhs = Vector::Zero(layout_.total() + 2);
  rhs.head(layout_.total()) = f.coeffs;
  const Vector sol = lu_.solve(rhs);
  StateVector x(layout_);
  x.coeffs = sol.head(layout_.total());
  return x;
}

void deflate_pressure_means(const AssembledBlocks& blocks, StateVector& x) {
  const Vector weights = blocks.p1_mass * Vector::Ones(blocks.p1_count);
  const double total = weights.sum();
  x.p() -= (weights.dot(x.p()) / total) * Vector::Ones(blocks.p1_count);
  x.mu() -= (weights.dot(x.mu()) / total) * Vector::Ones(blocks.p1_count);
}

MultigridSolver::MultigridSolver(const Hierarchy& hierarchy, int level, double alpha,
                                 CycleConfig config)
    : hierarchy_(&hierarchy),
      top_level_(level),
      alpha_(alpha),
      config_(config),
      coarse_(hierarchy.levels.at(config.coarsest_level).blocks, alpha) {
  if (level > hierarchy.max_level() || level < config_.coarsest_level)
    throw std::invalid_argument("solve level outside the hierarchy");
  ops_.reserve(level + 1);
  preconds_.reserve(level + 1);
  for (int k = 0; k <= level; ++k) {
    ops_.emplace_back(hierarchy.levels[k].blocks, alpha);
    preconds_.push_back(build_precond(hierarchy.levels[k].blocks, alpha,
                                      Hierarchy::level_scale(k)));
  }
}

void MultigridSolver::cycle(int level, StateVector& x, const StateVector& f) const {
  if (level < config_.coarsest_level || level > top_level_)
    throw std::invalid_argument("cycle level outside the solver range");
  if (x.layout != hierarchy_->layout(level) || f.layout != x.layout)
    throw std::invalid_argument("cycle: state/rhs layout mismatch");

  if (level == config_.coarsest_level) {
    x = coarse_.solve(f);
    return;
  }

  const auto& transfer = hierarchy_->transfers[level - 1];
  smooth(ops_[level], preconds_[level], config_.smoother, x, f, config_.smoother.nu_pre);

  StateVector residual(f.layout);
  ops_[level].apply(x, residual);
  residual.coeffs = f.coeffs - residual.coeffs;
  const StateVector coarse_rhs = restrict_to_coarse(transfer, residual);

  StateVector correction(hierarchy_->layout(level - 1));
  if (level - 1 == config_.coarsest_level) {
    correction = coarse_.solve(coarse_rhs);
  } else {
    const int steps = (config_.cycle == CycleType::w) ? 2 : 1;
    for (int s = 0; s < steps; ++s)
      cycle(level - 1, correction, coarse_rhs);
  }
  x.coeffs += prolongate(transfer, correction).coeffs;

  smooth(ops_[level], preconds_[level], config_.smoother, x, f, config_.smoother.nu_post);
}

std::pair<StateVector, ConvergenceReport> MultigridSolver::solve(double eps) const {
  if (!(eps > 0.0) || eps > 1.0)
    throw std::invalid_argument("stopping factor must lie in (0, 1]");

  ConvergenceReport report;
  report.level = top_level_;
  report.alpha = alpha_;
  report.nu_pre = config_.smoother.nu_pre;
  report.nu_post = config_.smoother.nu_post;
  report.cycle = config_.cycle;
  report.tau = config_.smoother.tau;
  report.eps = eps;

  const KktOperator& op = ops_[top_level_];
  const BlockPreconditioner& l = preconds_[top_level_];
  const StateVector f = op.rhs();
  StateVector x(op.layout());
  StateVector residual = f; // x = 0

  const double initial = norm_2k_residual(l, residual);
  report.residual_norms.push_back(initial);
  const double target = eps * initial;

  while (std::isfinite(report.residual_norms.back()) &&
         report.residual_norms.back() > target &&
         report.iterations < kMaxSolveIterations) {
    cycle(top_level_, x, f);
    ++report.iterations;
    op.apply(x, residual);
    residual.coeffs = f.coeffs - residual.coeffs;
    report.residual_norms.push_back(norm_2k_residual(l, residual));
  }

  report.converged = report.residual_norms.back() <= target;
  report.rate = 1.0;
  if (report.iterations > 0 && initial > 0.0) {
    const double reduction = report.residual_norms.back() / initial;
    report.rate = std::isfinite(reduction)
                      ? std::pow(reduction, 1.0 / report.iterations)
                      : std::numeric_limits<double>::infinity();
  }
  deflate_pressure_means(hierarchy_->levels[top_level_].blocks, x);
  return {std::move(x), std::move(report)};
}

std::pair<StateVector, ConvergenceReport> solve(const Hierarchy& hierarchy, int level,
                                                double alpha, const CycleConfig& config,
                                                double eps) {
  return MultigridSolver(hierarchy, level, alpha, config).solve(eps);
}

StateVector direct_reference_solve(const Hierarchy& hierarchy, int level, double alpha) {
  if (level > 3)
    throw std::invalid_argument("direct reference solve limited to level <= 3");
  const auto& blocks = hierarchy.levels.at(level).blocks;
  const CoarseSolver direct(blocks, alpha);
  const KktOperator op(blocks, alpha);
  return direct.solve(op.rhs());
}

} // namespace stokesmg

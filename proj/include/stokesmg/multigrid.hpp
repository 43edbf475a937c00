#pragma once

#include "stokesmg/assembly.hpp"
#include "stokesmg/kkt.hpp"
#include "stokesmg/mesh.hpp"
#include "stokesmg/precond.hpp"
#include "stokesmg/smoother.hpp"
#include "stokesmg/transfer.hpp"

#include <Eigen/SparseLU>

#include <cmath>

#include <utility>
#include <vector>

namespace stokesmg {

/// Nested discretizations of levels 0..max_level. Meshes, dof maps and the
/// assembled blocks are independent of the regularization parameter, so one
/// hierarchy serves solves for any alpha. Immutable after construction and
/// safe to share across concurrent solves.
struct Hierarchy {
  struct Level {
    Mesh mesh;
    DofMaps dofs;
    AssembledBlocks blocks;
  };
  ProblemSpec problem;
  std::vector<Level> levels;
  std::vector<TransferOperator> transfers; // transfers[k] maps level k -> k+1

  int max_level() const { return static_cast<int>(levels.size()) - 1; }
  StateLayout layout(int level) const;
  /// Level scale h_k = 2^-k used by the preconditioner norms.
  static double level_scale(int level) { return std::pow(0.5, level); }
};

Hierarchy build_hierarchy(int max_level, const ProblemSpec& problem = {});

/// Exact solve of the singular level operator, made nonsingular by two
/// Lagrange-multiplier rows enforcing the weighted zero-mean conditions
/// 1' M_P p = 0 and 1' M_P mu = 0.
class CoarseSolver {
 public:
  CoarseSolver(const AssembledBlocks& blocks, double alpha);

  StateLayout layout() const { return layout_; }
  /// Solves A x = f for compatible f; p and mu of the result have zero
  /// weighted mean.
  StateVector solve(const StateVector& f) const;

 private:
  StateLayout layout_;
  Vector pressure_weights_; // M_P * 1
  Eigen::SparseLU<SparseMatrix> lu_;
};

enum class CycleType { v, w };

struct CycleConfig {
  CycleType cycle = CycleType::w; // w: two recursive corrections per level
  SmootherConfig smoother;
  int coarsest_level = 0;
};

struct ConvergenceReport {
  int level = 0;
  double alpha = 1.0;
  int nu_pre = 0;
  int nu_post = 0;
  CycleType cycle = CycleType::w;
  double tau = 0.35;
  double eps = 1e-6;
  int iterations = 0;                 // n
  std::vector<double> residual_norms; // |||r|||_{2,k}, length n + 1
  double rate = 1.0;                  // q = (final/initial)^(1/n)
  bool converged = false;
};

/// Iteration cap of the outer loop; a capped run reports converged = false.
inline constexpr int kMaxSolveIterations = 500;

/// Multigrid state for one (hierarchy, top level, alpha) combination:
/// per-level operators and preconditioners plus the factorized coarse solve.
class MultigridSolver {
 public:
  MultigridSolver(const Hierarchy& hierarchy, int level, double alpha, CycleConfig config);

  /// One multigrid cycle for A_level x = f (pre-smooth, coarse-grid
  /// correction with 1 or 2 recursive steps, post-smooth).
  void cycle(int level, StateVector& x, const StateVector& f) const;

  /// Runs cycles from x = 0 until the residual norm drops below
  /// eps * |||f|||_{2,k} or the iteration cap; p and mu are mean-deflated
  /// before returning.
  std::pair<StateVector, ConvergenceReport> solve(double eps) const;

  const KktOperator& op(int level) const { return ops_[level]; }
  const BlockPreconditioner& precond(int level) const { return preconds_[level]; }
  const CoarseSolver& coarse() const { return coarse_; }
  int top_level() const { return top_level_; }

 private:
  const Hierarchy* hierarchy_;
  int top_level_;
  double alpha_;
  CycleConfig config_;
  std::vector<KktOperator> ops_;
  std::vector<BlockPreconditioner> preconds_;
  CoarseSolver coarse_;
};

/// Convenience wrapper: build the per-alpha solver state and run one solve.
std::pair<StateVector, ConvergenceReport> solve(const Hierarchy& hierarchy, int level,
                                                double alpha, const CycleConfig& config,
                                                double eps);

/// Reference solution by a direct factorization of the augmented level
/// operator. Guarded to level <= 3.
StateVector direct_reference_solve(const Hierarchy& hierarchy, int level, double alpha);

/// Removes the weighted means of p and mu (the invisible constant modes).
void deflate_pressure_means(const AssembledBlocks& blocks, StateVector& x);

} // namespace stokesmg

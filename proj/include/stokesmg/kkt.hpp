#pragma once

#include "stokesmg/assembly.hpp"
#include "stokesmg/types.hpp"

namespace stokesmg {

/// Sizes of the four state fields on one level; coefficients are stored
/// flat in the order [u, p, lambda, mu].
struct StateLayout {
  Index velocity = 0; // dofs of one velocity field (u or lambda)
  Index pressure = 0; // dofs of one pressure field (p or mu)

  Index total() const { return 2 * (velocity + pressure); }
  Index u_offset() const { return 0; }
  Index p_offset() const { return velocity; }
  Index lam_offset() const { return velocity + pressure; }
  Index mu_offset() const { return 2 * velocity + pressure; }

  bool operator==(const StateLayout&) const = default;
};

/// Coefficients of (u, p, lambda, mu) over one level, stored as one flat
/// vector so that linear-space operations are plain Eigen expressions.
struct StateVector {
  StateLayout layout;
  Vector coeffs;

  StateVector() = default;
  explicit StateVector(const StateLayout& l) : layout(l), coeffs(Vector::Zero(l.total())) {}

  auto u() { return coeffs.segment(layout.u_offset(), layout.velocity); }
  auto p() { return coeffs.segment(layout.p_offset(), layout.pressure); }
  auto lam() { return coeffs.segment(layout.lam_offset(), layout.velocity); }
  auto mu() { return coeffs.segment(layout.mu_offset(), layout.pressure); }
  auto u() const { return coeffs.segment(layout.u_offset(), layout.velocity); }
  auto p() const { return coeffs.segment(layout.p_offset(), layout.pressure); }
  auto lam() const { return coeffs.segment(layout.lam_offset(), layout.velocity); }
  auto mu() const { return coeffs.segment(layout.mu_offset(), layout.pressure); }
};

/// The symmetric reduced optimality-system operator
///
///   [ M_U   0    K_U    D^T ] [ u   ]
///   [ 0     0    D      0   ] [ p   ]
///   [ K_U   D^T  -M_U/a 0   ] [ lam ]
///   [ D     0    0      0   ] [ mu  ]
///
/// over the level's eliminated Taylor-Hood spaces. Constant pressures span
/// its nullspace. The referenced blocks must outlive the operator.
class KktOperator {
 public:
  KktOperator(const AssembledBlocks& blocks, double alpha);

  StateLayout layout() const { return layout_; }
  double alpha() const { return alpha_; }
  const AssembledBlocks& blocks() const { return *blocks_; }

  /// out must not alias x.
  void apply(const StateVector& x, StateVector& out) const;
  StateVector apply(const StateVector& x) const;

  /// Right-hand side (load_u, 0, 0, 0) of the tracking problem.
  StateVector rhs() const;

 private:
  const AssembledBlocks* blocks_;
  double alpha_;
  StateLayout layout_;
};

/// Control coefficients recovered from the adjoint velocity, f = lam / alpha.
Vector recover_control(const StateVector& x, double alpha);

/// Monolithic sparse form of the operator (used by direct solves and tests).
SparseMatrix kkt_matrix(const AssembledBlocks& blocks, double alpha);

} // namespace stokesmg

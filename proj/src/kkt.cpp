#include "stokesmg/kkt.hpp"

#include <stdexcept>

namespace stokesmg {

KktOperator::KktOperator(const AssembledBlocks& blocks, double alpha)
    : blocks_(&blocks), alpha_(alpha) {
  if (!(alpha > 0.0))
    throw std::invalid_argument("regularization parameter must be positive");
  layout_.velocity = blocks.velocity_dof_count();
  layout_.pressure = blocks.p1_count;
}

void KktOperator::apply(const StateVector& x, StateVector& out) const {
  if (x.layout != layout_)
    throw std::invalid_argument("state/operator dimension mismatch");
  if (out.layout != layout_)
    out = StateVector(layout_);

  const auto& b = *blocks_;
  const Index n = b.interior_count;
  const auto per_component = [&](const SparseMatrix& m, const auto& in, auto&& result,
                                 double scale) {
    result.segment(0, n).noalias() += scale * (m * in.segment(0, n));
    result.segment(n, n).noalias() += scale * (m * in.segment(n, n));
  };

  out.coeffs.setZero();
  auto row_u = out.u();
  per_component(b.p2_mass, x.u(), row_u, 1.0);
  per_component(b.p2_stiffness, x.lam(), row_u, 1.0);
  row_u.noalias() += b.divergence.transpose() * x.mu();

  out.p().noalias() += b.divergence * x.lam();

  auto row_lam = out.lam();
  per_component(b.p2_stiffness, x.u(), row_lam, 1.0);
  per_component(b.p2_mass, x.lam(), row_lam, -1.0 / alpha_);
  row_lam.noalias() += b.divergence.transpose() * x.p();

  out.mu().noalias() += b.divergence * x.u();
}

StateVector KktOperator::apply(const StateVector& x) const {
  StateVector out(layout_);
  apply(x, out);
  return out;
}

StateVector KktOperator::rhs() const {
  StateVector f(layout_);
  f.u() = blocks_->load_u;
  return f;
}

Vector recover_control(const StateVector& x, double alpha) {
  if (!(alpha > 0.0))
    throw std::invalid_argument("regularization parameter must be positive");
  return x.lam() / alpha;
}

SparseMatrix kkt_matrix(const AssembledBlocks& blocks, double alpha) {
  if (!(alpha > 0.0))
    throw std::invalid_argument("regularization parameter must be positive");
  StateLayout layout;
  layout.velocity = blocks.velocity_dof_count();
  layout.pressure = blocks.p1_count;
  const Index n = blocks.interior_count;
  const Index off_u = layout.u_offset();
  const Index off_p = layout.p_offset();
  const Index off_l = layout.lam_offset();
  const Index off_m = layout.mu_offset();

  std::vector<Triplet> trips;
  const auto scatter_scalar = [&](const SparseMatrix& m, Index row_off, Index col_off,
                                  double scale) {
    for (int k = 0; k < m.outerSize(); ++k)
      for (SparseMatrix::InnerIterator it(m, k); it; ++it)
        for (Index c = 0; c < 2; ++c)
          trips.emplace_back(row_off + c * n + it.row(), col_off + c * n + it.col(),
                             scale * it.value());
  };
  const auto scatter_div = [&](Index row_off, Index col_off, bool transpose) {
    const auto& d = blocks.divergence;
    for (int k = 0; k < d.outerSize(); ++k)
      for (SparseMatrix::InnerIterator it(d, k); it; ++it) {
        if (transpose)
          trips.emplace_back(row_off + it.col(), col_off + it.row(), it.value());
        else
          trips.emplace_back(row_off + it.row(), col_off + it.col(), it.value());
      }
  };

  scatter_scalar(blocks.p2_mass, off_u, off_u, 1.0);
  scatter_scalar(blocks.p2_stiffness, off_u, off_l, 1.0);
  scatter_div(off_u, off_m, true); // D^T mu
  scatter_div(off_p, off_l, false);
  scatter_scalar(blocks.p2_stiffness, off_l, off_u, 1.0);
  scatter_div(off_l, off_p, true); // D^T p
  scatter_scalar(blocks.p2_mass, off_l, off_l, -1.0 / alpha);
  scatter_div(off_m, off_u, false);

  SparseMatrix a(layout.total(), layout.total());
  a.setFromTriplets(trips.begin(), trips.end());
  return a;
}

} // namespace stokesmg

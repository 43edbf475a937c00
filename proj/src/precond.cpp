#include "stokesmg/precond.hpp"

#include <cmath>
#include <stdexcept>

namespace stokesmg {

BlockPreconditioner build_precond(const AssembledBlocks& blocks, double alpha, double h,
                                  PrecondVariant variant) {
  if (!(alpha > 0.0))
    throw std::invalid_argument("regularization parameter must be positive");
  BlockPreconditioner l;
  l.alpha = alpha;
  l.variant = variant;
  l.layout.velocity = blocks.velocity_dof_count();
  l.layout.pressure = blocks.p1_count;
  const Index n = blocks.interior_count;

  if (variant == PrecondVariant::practical) {
    Vector scalar_diag = blocks.p2_mass.diagonal() + std::sqrt(alpha) * blocks.p2_stiffness.diagonal();
    l.a_hat.resize(2 * n);
    l.a_hat << scalar_diag, scalar_diag;

    // S_ii = alpha * sum_j D_ij^2 / A_jj  (exact diagonal of alpha D A^-1 D^T)
    l.s_hat = Vector::Zero(blocks.p1_count);
    const auto& d = blocks.divergence;
    for (int k = 0; k < d.outerSize(); ++k)
      for (SparseMatrix::InnerIterator it(d, k); it; ++it)
        l.s_hat[it.row()] += it.value() * it.value() / l.a_hat[it.col()];
    l.s_hat *= alpha;
  } else {
    const double phi = 1.0 + std::sqrt(alpha) / (h * h);
    Vector scalar_diag = blocks.p2_mass.diagonal();
    l.a_hat.resize(2 * n);
    l.a_hat << scalar_diag, scalar_diag;
    l.a_hat *= phi;
    l.s_hat = (alpha / (h * h * phi)) * blocks.p1_mass.diagonal();
  }

  if ((l.a_hat.array() <= 0.0).any() || (l.s_hat.array() <= 0.0).any())
    throw std::runtime_error("preconditioner diagonal not positive: invalid discretization");

  l.diag.resize(l.layout.total());
  l.diag << l.a_hat, l.s_hat, l.a_hat / alpha, l.s_hat / alpha;
  l.inv_diag = l.diag.cwiseInverse();
  return l;
}

StateVector apply_inverse(const BlockPreconditioner& l, const StateVector& x) {
  if (x.layout != l.layout)
    throw std::invalid_argument("apply_inverse: state has wrong layout");
  StateVector out(l.layout);
  out.coeffs = l.inv_diag.cwiseProduct(x.coeffs);
  return out;
}

double norm_0k(const BlockPreconditioner& l, const StateVector& x) {
  if (x.layout != l.layout)
    throw std::invalid_argument("norm_0k: state has wrong layout");
  return std::sqrt(x.coeffs.dot(l.diag.cwiseProduct(x.coeffs)));
}

double norm_2k_residual(const BlockPreconditioner& l, const StateVector& r) {
  if (r.layout != l.layout)
    throw std::invalid_argument("norm_2k_residual: state has wrong layout");
  return std::sqrt(r.coeffs.dot(l.inv_diag.cwiseProduct(r.coeffs)));
}

} // namespace stokesmg

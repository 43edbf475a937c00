#pragma once

#include "stokesmg/assembly.hpp"
#include "stokesmg/kkt.hpp"
#include "stokesmg/types.hpp"

namespace stokesmg {

enum class PrecondVariant {
  practical,   // A = diag(M_U + sqrt(a) K_U), S = a diag(D A^-1 D^T)
  theoretical, // A = phi diag(M_U), S = a h^-2 phi^-1 diag(M_P), phi = 1 + sqrt(a) h^-2
};

/// Positive diagonal matrix diag(A, S, A/alpha, S/alpha) over the state
/// layout. It defines the smoother scaling and the level norms: the state
/// norm is sqrt(x' L x), the residual norm sqrt(r' L^-1 r).
struct BlockPreconditioner {
  Vector a_hat; // velocity-block diagonal (both components)
  Vector s_hat; // pressure-block diagonal
  double alpha = 1.0;
  PrecondVariant variant = PrecondVariant::practical;
  StateLayout layout;
  Vector diag;     // full state diagonal
  Vector inv_diag; // elementwise reciprocal
};

/// `h` enters the theoretical variant only; pass the level scale 2^-k.
BlockPreconditioner build_precond(const AssembledBlocks& blocks, double alpha, double h,
                                  PrecondVariant variant = PrecondVariant::practical);

StateVector apply_inverse(const BlockPreconditioner& l, const StateVector& x);

double norm_0k(const BlockPreconditioner& l, const StateVector& x);
double norm_2k_residual(const BlockPreconditioner& l, const StateVector& r);

} // namespace stokesmg

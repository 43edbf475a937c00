#pragma once

#include "stokesmg/kkt.hpp"
#include "stokesmg/mesh.hpp"
#include "stokesmg/types.hpp"

namespace stokesmg {

/// Canonical embedding between consecutive levels, stored as explicit sparse
/// matrices: entries are the coarse shape functions evaluated at the fine
/// node positions. Restriction is the transpose. The scalar P2 matrix acts
/// on each velocity component of u and lambda; the P1 matrix on p and mu.
struct TransferOperator {
  SparseMatrix p2_scalar; // fine interior P2 x coarse interior P2
  SparseMatrix p1;        // fine P1 x coarse P1
  StateLayout coarse_layout;
  StateLayout fine_layout;
};

/// Requires fine == refine(coarse); throws otherwise.
TransferOperator build_transfer(const Mesh& coarse, const DofMaps& coarse_dofs,
                                const Mesh& fine, const DofMaps& fine_dofs);

StateVector prolongate(const TransferOperator& t, const StateVector& coarse);
StateVector restrict_to_coarse(const TransferOperator& t, const StateVector& fine);

/// Block-diagonal prolongation over the full state layout (tests, direct
/// Galerkin products).
SparseMatrix state_prolongation_matrix(const TransferOperator& t);

} // namespace stokesmg

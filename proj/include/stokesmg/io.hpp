#pragma once

#include "stokesmg/kkt.hpp"
#include "stokesmg/mesh.hpp"
#include "stokesmg/multigrid.hpp"
#include "stokesmg/types.hpp"

#include <iosfwd>
#include <string>

namespace stokesmg {

/// Coordinate-format text export: one `row col value` line per stored entry,
/// 0-based indices.
void write_matrix_coordinate(const SparseMatrix& m, const std::string& path);
void write_matrix_coordinate(const SparseMatrix& m, std::ostream& out);

/// Node-wise field export with columns (node_id, x, y, field, value).
/// Velocity-like fields (u, lambda, f = lam/alpha) are written per component
/// at every scalar P2 node, boundary nodes with value 0; p and mu at the P1
/// nodes.
void write_state_csv(const Mesh& mesh, const DofMaps& dofs, const StateVector& x, double alpha,
                     const std::string& path);
void write_state_csv(const Mesh& mesh, const DofMaps& dofs, const StateVector& x, double alpha,
                     std::ostream& out);

/// One JSON object per line: full run configuration plus n, q, converged and
/// the residual-norm history.
std::string report_json(const ConvergenceReport& report);

std::string cycle_name(CycleType cycle);

} // namespace stokesmg

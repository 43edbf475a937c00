#include "stokesmg/transfer.hpp"

#include "stokesmg/assembly.hpp"

#include <stdexcept>

namespace stokesmg {

namespace {

Eigen::Vector3d barycentric(const std::array<Vector2, 3>& coords, const Vector2& x) {
  const double area = signed_area(coords[0], coords[1], coords[2]);
  return {signed_area(x, coords[1], coords[2]) / area,
          signed_area(coords[0], x, coords[2]) / area,
          signed_area(coords[0], coords[1], x) / area};
}

} // namespace

TransferOperator build_transfer(const Mesh& coarse, const DofMaps& coarse_dofs,
                                const Mesh& fine, const DofMaps& fine_dofs) {
  if (fine.level != coarse.level + 1 ||
      fine.parent_triangle.size() != fine.triangles.size() ||
      fine.vertex_count() != coarse.vertex_count() + coarse.edge_count())
    throw std::invalid_argument("transfer requires fine == refine(coarse)");

  TransferOperator t;
  t.coarse_layout.velocity = coarse_dofs.velocity_dof_count();
  t.coarse_layout.pressure = coarse_dofs.pressure_dof_count();
  t.fine_layout.velocity = fine_dofs.velocity_dof_count();
  t.fine_layout.pressure = fine_dofs.pressure_dof_count();

  // P1: fine vertices are either coarse vertices or coarse edge midpoints.
  std::vector<Triplet> p1_trips;
  for (int v = 0; v < coarse.vertex_count(); ++v)
    p1_trips.emplace_back(v, v, 1.0);
  for (int e = 0; e < coarse.edge_count(); ++e) {
    const int fv = coarse.vertex_count() + e;
    p1_trips.emplace_back(fv, coarse.edges[e][0], 0.5);
    p1_trips.emplace_back(fv, coarse.edges[e][1], 0.5);
  }
  t.p1.resize(fine.vertex_count(), coarse.vertex_count());
  t.p1.setFromTriplets(p1_trips.begin(), p1_trips.end());

  // P2: evaluate the coarse shape functions at every fine node, locating each
  // node inside the parent of some fine triangle that carries it.
  std::vector<Triplet> p2_trips;
  std::vector<bool> done(fine_dofs.p2_count(), false);
  for (int tf = 0; tf < fine.triangle_count(); ++tf) {
    const int tc = fine.parent_triangle[tf];
    const auto& ctri = coarse.triangles[tc];
    const std::array<Vector2, 3> ccoords{coarse.vertices[ctri[0]], coarse.vertices[ctri[1]],
                                         coarse.vertices[ctri[2]]};
    std::array<int, 6> coarse_nodes;
    for (int i = 0; i < 3; ++i) {
      coarse_nodes[i] = ctri[i];
      coarse_nodes[3 + i] = coarse.vertex_count() + coarse.triangle_edges[tc][i];
    }

    std::array<int, 6> fine_nodes;
    for (int i = 0; i < 3; ++i) {
      fine_nodes[i] = fine.triangles[tf][i];
      fine_nodes[3 + i] = fine.vertex_count() + fine.triangle_edges[tf][i];
    }
    for (const int node : fine_nodes) {
      if (done[node])
        continue;
      done[node] = true;
      const int fine_int = fine_dofs.p2_interior_index[node];
      if (fine_int < 0)
        continue;
      const auto phi = p2_values(barycentric(ccoords, fine_dofs.p2_coords[node]));
      for (int j = 0; j < 6; ++j) {
        const int coarse_int = coarse_dofs.p2_interior_index[coarse_nodes[j]];
        if (coarse_int >= 0 && std::abs(phi[j]) > 1e-14)
          p2_trips.emplace_back(fine_int, coarse_int, phi[j]);
      }
    }
  }
  t.p2_scalar.resize(fine_dofs.interior_count(), coarse_dofs.interior_count());
  t.p2_scalar.setFromTriplets(p2_trips.begin(), p2_trips.end());
  return t;
}

StateVector prolongate(const TransferOperator& t, const StateVector& coarse) {
  if (coarse.layout != t.coarse_layout)
    throw std::invalid_argument("prolongate: coarse state has wrong layout");
  StateVector fine(t.fine_layout);
  const Index nc = t.coarse_layout.velocity / 2;
  const Index nf = t.fine_layout.velocity / 2;
  for (Index c = 0; c < 2; ++c) {
    fine.u().segment(c * nf, nf).noalias() = t.p2_scalar * coarse.u().segment(c * nc, nc);
    fine.lam().segment(c * nf, nf).noalias() = t.p2_scalar * coarse.lam().segment(c * nc, nc);
  }
  fine.p().noalias() = t.p1 * coarse.p();
  fine.mu().noalias() = t.p1 * coarse.mu();
  return fine;
}

StateVector restrict_to_coarse(const TransferOperator& t, const StateVector& fine) {
  if (fine.layout != t.fine_layout)
    throw std::invalid_argument("restrict: fine state has wrong layout");
  StateVector coarse(t.coarse_layout);
  const Index nc = t.coarse_layout.velocity / 2;
  const Index nf = t.fine_layout.velocity / 2;
  for (Index c = 0; c < 2; ++c) {
    coarse.u().segment(c * nc, nc).noalias() =
        t.p2_scalar.transpose() * fine.u().segment(c * nf, nf);
    coarse.lam().segment(c * nc, nc).noalias() =
        t.p2_scalar.transpose() * fine.lam().segment(c * nf, nf);
  }
  coarse.p().noalias() = t.p1.transpose() * fine.p();
  coarse.mu().noalias() = t.p1.transpose() * fine.mu();
  return coarse;
}

SparseMatrix state_prolongation_matrix(const TransferOperator& t) {
  const Index nc = t.coarse_layout.velocity / 2;
  const Index nf = t.fine_layout.velocity / 2;
  std::vector<Triplet> trips;
  const auto scatter = [&](const SparseMatrix& m, Index row_off, Index col_off) {
    for (int k = 0; k < m.outerSize(); ++k)
      for (SparseMatrix::InnerIterator it(m, k); it; ++it)
        trips.emplace_back(row_off + it.row(), col_off + it.col(), it.value());
  };
  // [u_x, u_y, p, lam_x, lam_y, mu] block order of the flat layout
  for (Index c = 0; c < 2; ++c) {
    scatter(t.p2_scalar, t.fine_layout.u_offset() + c * nf, t.coarse_layout.u_offset() + c * nc);
    scatter(t.p2_scalar, t.fine_layout.lam_offset() + c * nf,
            t.coarse_layout.lam_offset() + c * nc);
  }
  scatter(t.p1, t.fine_layout.p_offset(), t.coarse_layout.p_offset());
  scatter(t.p1, t.fine_layout.mu_offset(), t.coarse_layout.mu_offset());

  SparseMatrix p(t.fine_layout.total(), t.coarse_layout.total());
  p.setFromTriplets(trips.begin(), trips.end());
  return p;
}

} // namespace stokesmg

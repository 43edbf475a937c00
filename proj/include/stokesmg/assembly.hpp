#pragma once

#include "stokesmg/mesh.hpp"
#include "stokesmg/types.hpp"

#include <array>
#include <functional>
#include <span>

namespace stokesmg {

/// Rigid rotation about the center of the square, truncated outside the
/// disk of the given radius around (1/2, 1/2).
Vector2 rotational_tracking_field(const Vector2& point, double radius);

/// The tracking field with radius 4/5. The disk covers the whole unit
/// square (every point is within distance sqrt(2)/2 of the center), so this
/// field is smooth on the domain.
Vector2 desired_velocity(const Vector2& point);

/// Tracking-disk radius of the benchmark runs: 4/5 of the half-width, which
/// places the jump circle inside the domain. The reported iteration counts
/// and rates refer to this configuration.
inline constexpr double kBenchmarkTrackingRadius = 0.4;

struct ProblemSpec {
  double alpha = 1.0;
  std::function<Vector2(const Vector2&)> desired = desired_velocity;
  int quadrature_order = 4; // polynomial exactness of the load integration
};

/// Problem of the benchmark tables: tracking disk of radius 0.4.
ProblemSpec benchmark_problem(double alpha = 1.0);

struct QuadraturePoint {
  Eigen::Vector3d bary;
  double weight; // normalized: weights sum to 1, scale by triangle area
};

/// Symmetric triangle rule with the requested polynomial exactness
/// (4 -> 6 points, 5 -> 7 points).
std::span<const QuadraturePoint> triangle_quadrature(int exactness);

/// P2 shape function values at a barycentric point. Node order: the three
/// vertices, then the midpoints of the edges opposite vertex 0, 1, 2.
Eigen::Matrix<double, 6, 1> p2_values(const Eigen::Vector3d& bary);

/// Gradients of the barycentric coordinates of a triangle (constant fields).
std::array<Vector2, 3> barycentric_gradients(const std::array<Vector2, 3>& coords);

struct ElementMatrices {
  Eigen::Matrix<double, 6, 6> p2_mass;
  Eigen::Matrix<double, 6, 6> p2_stiffness;
  Eigen::Matrix<double, 3, 3> p1_mass;
  // rows: P1 nodes; cols: 12 velocity dofs, component-major (x slots 0..5).
  // Entry (i, c*6+j) = (d/dx_c phi_j, psi_i).
  Eigen::Matrix<double, 3, 12> div_blocks;
};

/// Exact element integrals (the degree-4 rule integrates every product here
/// exactly). Throws on degenerate triangles (area <= 1e-14).
ElementMatrices element_matrices(const std::array<Vector2, 3>& coords);

/// Global Taylor-Hood matrices with homogeneous Dirichlet velocity dofs
/// eliminated. Velocity matrices are block-diagonal over the two components,
/// so only the scalar interior-P2 block is stored.
struct AssembledBlocks {
  SparseMatrix p2_mass;      // scalar interior P2, one velocity component
  SparseMatrix p2_stiffness; // scalar interior P2, one velocity component
  SparseMatrix p1_mass;      // pressure mass over all P1 nodes
  SparseMatrix divergence;   // rows: pressure dofs, cols: velocity dofs
  Vector load_u;             // (u_D, phi_j) over velocity dofs
  int interior_count = 0;
  int p1_count = 0;

  int velocity_dof_count() const { return 2 * interior_count; }

  /// Two-component expansions (block diagonal, component-major layout).
  SparseMatrix velocity_mass() const;
  SparseMatrix velocity_stiffness() const;
};

AssembledBlocks assemble(const Mesh& mesh, const DofMaps& dofs, const ProblemSpec& spec);

} // namespace stokesmg

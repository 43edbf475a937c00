#include "stokesmg/assembly.hpp"

#include <cmath>
#include <stdexcept>

namespace stokesmg {

Vector2 rotational_tracking_field(const Vector2& point, double radius) {
  const double dx = point.x() - 0.5;
  const double dy = point.y() - 0.5;
  if (std::sqrt(dx * dx + dy * dy) < radius)
    return {point.y() - 0.5, 0.5 - point.x()};
  return {0.0, 0.0};
}

Vector2 desired_velocity(const Vector2& point) {
  return rotational_tracking_field(point, 0.8);
}

ProblemSpec benchmark_problem(double alpha) {
  ProblemSpec spec;
  spec.alpha = alpha;
  spec.desired = [](const Vector2& p) {
    return rotational_tracking_field(p, kBenchmarkTrackingRadius);
  };
  return spec;
}

namespace {

// Symmetric Gauss rules on the triangle, weights normalized to 1.
constexpr double kA4 = 0.816847572980459;
constexpr double kB4 = 0.091576213509771;
constexpr double kW4 = 0.109951743655322;
constexpr double kC4 = 0.108103018168070;
constexpr double kD4 = 0.445948490915965;
constexpr double kV4 = 0.223381589678011;

const QuadraturePoint kRuleDegree4[6] = {
    {{kA4, kB4, kB4}, kW4}, {{kB4, kA4, kB4}, kW4}, {{kB4, kB4, kA4}, kW4},
    {{kC4, kD4, kD4}, kV4}, {{kD4, kC4, kD4}, kV4}, {{kD4, kD4, kC4}, kV4},
};

constexpr double kA5 = 0.470142064105115;
constexpr double kB5 = 0.059715871789770;
constexpr double kW5 = 0.132394152788506;
constexpr double kC5 = 0.101286507323456;
constexpr double kD5 = 0.797426985353087;
constexpr double kV5 = 0.125939180544827;

const QuadraturePoint kRuleDegree5[7] = {
    {{1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0}, 0.225},
    {{kA5, kA5, kB5}, kW5}, {{kA5, kB5, kA5}, kW5}, {{kB5, kA5, kA5}, kW5},
    {{kC5, kC5, kD5}, kV5}, {{kC5, kD5, kC5}, kV5}, {{kD5, kC5, kC5}, kV5},
};

} // namespace

std::span<const QuadraturePoint> triangle_quadrature(int exactness) {
  if (exactness <= 4)
    return kRuleDegree4;
  if (exactness == 5)
    return kRuleDegree5;
  throw std::invalid_argument("no triangle quadrature rule of exactness " +
                              std::to_string(exactness));
}

Eigen::Matrix<double, 6, 1> p2_values(const Eigen::Vector3d& bary) {
  Eigen::Matrix<double, 6, 1> phi;
  for (int i = 0; i < 3; ++i)
    phi[i] = bary[i] * (2.0 * bary[i] - 1.0);
  phi[3] = 4.0 * bary[1] * bary[2];
  phi[4] = 4.0 * bary[2] * bary[0];
  phi[5] = 4.0 * bary[0] * bary[1];
  return phi;
}

std::array<Vector2, 3> barycentric_gradients(const std::array<Vector2, 3>& coords) {
  const double two_area = 2.0 * signed_area(coords[0], coords[1], coords[2]);
  std::array<Vector2, 3> grads;
  for (int i = 0; i < 3; ++i) {
    const Vector2 opposite = coords[(i + 2) % 3] - coords[(i + 1) % 3];
    grads[i] = Vector2(-opposite.y(), opposite.x()) / two_area;
  }
  return grads;
}

namespace {

Eigen::Matrix<double, 6, 2> p2_gradients(const Eigen::Vector3d& bary,
                                         const std::array<Vector2, 3>& grads) {
  Eigen::Matrix<double, 6, 2> g;
  for (int i = 0; i < 3; ++i)
    g.row(i) = ((4.0 * bary[i] - 1.0) * grads[i]).transpose();
  g.row(3) = 4.0 * (bary[1] * grads[2] + bary[2] * grads[1]).transpose();
  g.row(4) = 4.0 * (bary[2] * grads[0] + bary[0] * grads[2]).transpose();
  g.row(5) = 4.0 * (bary[0] * grads[1] + bary[1] * grads[0]).transpose();
  return g;
}

} // namespace

ElementMatrices element_matrices(const std::array<Vector2, 3>& coords) {
  const double area = signed_area(coords[0], coords[1], coords[2]);
  if (area <= 1e-14)
    throw std::invalid_argument("degenerate triangle in element integration");

  const auto grads = barycentric_gradients(coords);
  ElementMatrices em;
  em.p2_mass.setZero();
  em.p2_stiffness.setZero();
  em.p1_mass.setZero();
  em.div_blocks.setZero();

  for (const auto& qp : triangle_quadrature(4)) {
    const double w = qp.weight * area;
    const auto phi = p2_values(qp.bary);
    const auto dphi = p2_gradients(qp.bary, grads);
    em.p2_mass += w * phi * phi.transpose();
    em.p2_stiffness += w * dphi * dphi.transpose();
    em.p1_mass += w * qp.bary * qp.bary.transpose();
    for (int c = 0; c < 2; ++c)
      em.div_blocks.block<3, 6>(0, 6 * c) += w * qp.bary * dphi.col(c).transpose();
  }
  return em;
}

SparseMatrix AssembledBlocks::velocity_mass() const {
  SparseMatrix full(2 * interior_count, 2 * interior_count);
  std::vector<Triplet> trips;
  trips.reserve(2 * p2_mass.nonZeros());
  for (int k = 0; k < p2_mass.outerSize(); ++k)
    for (SparseMatrix::InnerIterator it(p2_mass, k); it; ++it)
      for (int c = 0; c < 2; ++c)
        trips.emplace_back(c * interior_count + it.row(), c * interior_count + it.col(),
                           it.value());
  full.setFromTriplets(trips.begin(), trips.end());
  return full;
}

SparseMatrix AssembledBlocks::velocity_stiffness() const {
  SparseMatrix full(2 * interior_count, 2 * interior_count);
  std::vector<Triplet> trips;
  trips.reserve(2 * p2_stiffness.nonZeros());
  for (int k = 0; k < p2_stiffness.outerSize(); ++k)
    for (SparseMatrix::InnerIterator it(p2_stiffness, k); it; ++it)
      for (int c = 0; c < 2; ++c)
        trips.emplace_back(c * interior_count + it.row(), c * interior_count + it.col(),
                           it.value());
  full.setFromTriplets(trips.begin(), trips.end());
  return full;
}

AssembledBlocks assemble(const Mesh& mesh, const DofMaps& dofs, const ProblemSpec& spec) {
  AssembledBlocks blocks;
  blocks.interior_count = dofs.interior_count();
  blocks.p1_count = dofs.p1_count;
  const int n_int = blocks.interior_count;

  std::vector<Triplet> mass_trips, stiff_trips, p1_trips, div_trips;
  blocks.load_u = Vector::Zero(2 * n_int);
  const auto load_rule = triangle_quadrature(spec.quadrature_order);

  for (int t = 0; t < mesh.triangle_count(); ++t) {
    const auto& tri = mesh.triangles[t];
    const std::array<Vector2, 3> coords{mesh.vertices[tri[0]], mesh.vertices[tri[1]],
                                        mesh.vertices[tri[2]]};
    const auto em = element_matrices(coords);

    // global P2 nodes in local order (vertices, then opposite-edge midpoints)
    std::array<int, 6> nodes;
    for (int i = 0; i < 3; ++i) {
      nodes[i] = tri[i];
      nodes[3 + i] = mesh.vertex_count() + mesh.triangle_edges[t][i];
    }
    std::array<int, 6> interior;
    for (int i = 0; i < 6; ++i)
      interior[i] = dofs.p2_interior_index[nodes[i]];

    for (int i = 0; i < 6; ++i) {
      if (interior[i] < 0)
        continue;
      for (int j = 0; j < 6; ++j) {
        if (interior[j] < 0)
          continue;
        mass_trips.emplace_back(interior[i], interior[j], em.p2_mass(i, j));
        stiff_trips.emplace_back(interior[i], interior[j], em.p2_stiffness(i, j));
      }
    }
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        p1_trips.emplace_back(tri[i], tri[j], em.p1_mass(i, j));
    for (int i = 0; i < 3; ++i)
      for (int c = 0; c < 2; ++c)
        for (int j = 0; j < 6; ++j)
          if (interior[j] >= 0)
            div_trips.emplace_back(tri[i], c * n_int + interior[j], em.div_blocks(i, 6 * c + j));

    const double area = signed_area(coords[0], coords[1], coords[2]);
    for (const auto& qp : load_rule) {
      const Vector2 x = qp.bary[0] * coords[0] + qp.bary[1] * coords[1] + qp.bary[2] * coords[2];
      const Vector2 value = spec.desired(x);
      const auto phi = p2_values(qp.bary);
      const double w = qp.weight * area;
      for (int j = 0; j < 6; ++j)
        if (interior[j] >= 0)
          for (int c = 0; c < 2; ++c)
            blocks.load_u[c * n_int + interior[j]] += w * value[c] * phi[j];
    }
  }

  blocks.p2_mass.resize(n_int, n_int);
  blocks.p2_mass.setFromTriplets(mass_trips.begin(), mass_trips.end());
  blocks.p2_stiffness.resize(n_int, n_int);
  blocks.p2_stiffness.setFromTriplets(stiff_trips.begin(), stiff_trips.end());
  blocks.p1_mass.resize(dofs.p1_count, dofs.p1_count);
  blocks.p1_mass.setFromTriplets(p1_trips.begin(), p1_trips.end());
  blocks.divergence.resize(dofs.p1_count, 2 * n_int);
  blocks.divergence.setFromTriplets(div_trips.begin(), div_trips.end());
  return blocks;
}

} // namespace stokesmg

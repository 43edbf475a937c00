#include "stokesmg/mesh.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <stdexcept>

namespace stokesmg {

double signed_area(const Vector2& a, const Vector2& b, const Vector2& c) {
  return 0.5 * ((b.x() - a.x()) * (c.y() - a.y()) - (c.x() - a.x()) * (b.y() - a.y()));
}

namespace {

// Rebuilds the unique edge table, the per-triangle edge references and the
// boundary flags. An edge is boundary iff it belongs to exactly one triangle;
// a vertex is boundary iff it is an endpoint of a boundary edge.
void finalize_topology(Mesh& mesh) {
  std::map<std::array<int, 2>, int> edge_index;
  mesh.edges.clear();
  mesh.triangle_edges.assign(mesh.triangles.size(), {-1, -1, -1});
  std::vector<int> adjacency;

  for (std::size_t t = 0; t < mesh.triangles.size(); ++t) {
    const auto& tri = mesh.triangles[t];
    for (int i = 0; i < 3; ++i) {
      // edge opposite local vertex i
      int a = tri[(i + 1) % 3];
      int b = tri[(i + 2) % 3];
      std::array<int, 2> key{std::min(a, b), std::max(a, b)};
      auto [it, inserted] = edge_index.try_emplace(key, static_cast<int>(mesh.edges.size()));
      if (inserted) {
        mesh.edges.push_back(key);
        adjacency.push_back(0);
      }
      mesh.triangle_edges[t][i] = it->second;
      ++adjacency[it->second];
    }
  }

  mesh.boundary_edge.assign(mesh.edges.size(), false);
  mesh.boundary_vertex.assign(mesh.vertices.size(), false);
  for (std::size_t e = 0; e < mesh.edges.size(); ++e) {
    if (adjacency[e] == 1) {
      mesh.boundary_edge[e] = true;
      mesh.boundary_vertex[mesh.edges[e][0]] = true;
      mesh.boundary_vertex[mesh.edges[e][1]] = true;
    }
  }

  mesh.h = 0.0;
  for (const auto& e : mesh.edges)
    mesh.h = std::max(mesh.h, (mesh.vertices[e[0]] - mesh.vertices[e[1]]).norm());
}

} // namespace

Mesh build_coarse_mesh() {
  Mesh mesh;
  mesh.level = 0;
  mesh.vertices = {
      {0.0, 0.0}, {1.0, 0.0}, {1.0, 1.0}, {0.0, 1.0}, // corners
      {0.5, 0.0}, {1.0, 0.5}, {0.5, 1.0}, {0.0, 0.5}, // side midpoints
      {0.5, 0.5},                                     // center
  };
  const int center = 8;
  // Each subsquare is split along its diagonal that ends at the center, so
  // every triangle has the interior center vertex.
  mesh.triangles = {
      {0, 4, center}, {0, center, 7}, // lower left
      {4, 1, center}, {1, 5, center}, // lower right
      {5, 2, center}, {2, 6, center}, // upper right
      {6, 3, center}, {3, 7, center}, // upper left
  };
  for (const auto& tri : mesh.triangles) {
    if (signed_area(mesh.vertices[tri[0]], mesh.vertices[tri[1]], mesh.vertices[tri[2]]) <= 0.0)
      throw std::logic_error("coarse mesh triangle not counterclockwise");
  }
  finalize_topology(mesh);
  return mesh;
}

Mesh refine(const Mesh& mesh) {
  Mesh fine;
  fine.level = mesh.level + 1;
  fine.vertices = mesh.vertices;
  fine.vertices.reserve(mesh.vertices.size() + mesh.edges.size());
  for (const auto& e : mesh.edges)
    fine.vertices.push_back(0.5 * (mesh.vertices[e[0]] + mesh.vertices[e[1]]));

  const int nv = mesh.vertex_count();
  fine.triangles.reserve(4 * mesh.triangles.size());
  fine.parent_triangle.reserve(4 * mesh.triangles.size());
  for (std::size_t t = 0; t < mesh.triangles.size(); ++t) {
    const auto& tri = mesh.triangles[t];
    // m[i] = fine vertex at the midpoint of the edge opposite local vertex i
    const std::array<int, 3> m{nv + mesh.triangle_edges[t][0],
                               nv + mesh.triangle_edges[t][1],
                               nv + mesh.triangle_edges[t][2]};
    fine.triangles.push_back({tri[0], m[2], m[1]});
    fine.triangles.push_back({tri[1], m[0], m[2]});
    fine.triangles.push_back({tri[2], m[1], m[0]});
    fine.triangles.push_back({m[0], m[1], m[2]});
    for (int c = 0; c < 4; ++c)
      fine.parent_triangle.push_back(static_cast<int>(t));
  }

  finalize_topology(fine);
  return fine;
}

DofMaps build_dof_maps(const Mesh& mesh) {
  DofMaps dofs;
  dofs.p1_count = mesh.vertex_count();
  dofs.p2_coords.reserve(mesh.vertex_count() + mesh.edge_count());
  for (const auto& v : mesh.vertices)
    dofs.p2_coords.push_back(v);
  for (const auto& e : mesh.edges)
    dofs.p2_coords.push_back(0.5 * (mesh.vertices[e[0]] + mesh.vertices[e[1]]));

  dofs.p2_interior_index.assign(dofs.p2_coords.size(), -1);
  for (int v = 0; v < mesh.vertex_count(); ++v) {
    if (!mesh.boundary_vertex[v]) {
      dofs.p2_interior_index[v] = static_cast<int>(dofs.interior_p2.size());
      dofs.interior_p2.push_back(v);
    }
  }
  for (int e = 0; e < mesh.edge_count(); ++e) {
    if (!mesh.boundary_edge[e]) {
      const int node = mesh.vertex_count() + e;
      dofs.p2_interior_index[node] = static_cast<int>(dofs.interior_p2.size());
      dofs.interior_p2.push_back(node);
    }
  }
  return dofs;
}

void write_mesh_csv(const Mesh& mesh, const std::string& path) {
  std::ofstream out(path);
  if (!out)
    throw std::runtime_error("cannot open " + path);
  out << "vertices\nid,x,y,boundary\n";
  for (int v = 0; v < mesh.vertex_count(); ++v)
    out << v << ',' << mesh.vertices[v].x() << ',' << mesh.vertices[v].y() << ','
        << (mesh.boundary_vertex[v] ? 1 : 0) << '\n';
  out << "triangles\nid,v0,v1,v2\n";
  for (int t = 0; t < mesh.triangle_count(); ++t)
    out << t << ',' << mesh.triangles[t][0] << ',' << mesh.triangles[t][1] << ','
        << mesh.triangles[t][2] << '\n';
}

} // namespace stokesmg

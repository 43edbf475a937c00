#pragma once

#include "stokesmg/types.hpp"

#include <array>
#include <string>
#include <vector>

namespace stokesmg {

/// Triangulation of the unit square, obtained from an 8-triangle coarse grid
/// by uniform midpoint refinement. Triangles are stored counterclockwise;
/// edges are unique with sorted endpoints.
struct Mesh {
  std::vector<Vector2> vertices;
  std::vector<std::array<int, 3>> triangles;
  std::vector<std::array<int, 2>> edges;
  // triangle_edges[t][i] is the global edge opposite local vertex i,
  // i.e. the edge connecting the other two vertices of triangle t.
  std::vector<std::array<int, 3>> triangle_edges;
  std::vector<bool> boundary_vertex;
  std::vector<bool> boundary_edge;
  // Index of the parent triangle on the next-coarser mesh; empty at level 0.
  std::vector<int> parent_triangle;
  int level = 0;
  double h = 0.0; // longest edge length

  int vertex_count() const { return static_cast<int>(vertices.size()); }
  int triangle_count() const { return static_cast<int>(triangles.size()); }
  int edge_count() const { return static_cast<int>(edges.size()); }
};

/// Taylor-Hood degree-of-freedom maps: scalar P2 nodes are the vertices
/// followed by the edge midpoints, P1 nodes are the vertices. Velocity
/// components are numbered component-major over the interior P2 nodes
/// (all x-dofs first, then all y-dofs); pressure keeps every P1 node.
struct DofMaps {
  std::vector<Vector2> p2_coords;       // size = vertex count + edge count
  std::vector<int> interior_p2;         // P2 nodes not on the boundary
  std::vector<int> p2_interior_index;   // P2 node -> interior index, -1 if boundary
  int p1_count = 0;

  int p2_count() const { return static_cast<int>(p2_coords.size()); }
  int interior_count() const { return static_cast<int>(interior_p2.size()); }
  int velocity_dof_count() const { return 2 * interior_count(); }
  int pressure_dof_count() const { return p1_count; }

  /// Velocity dof index of interior node i, component c (0 = x, 1 = y).
  int velocity_dof(int interior_index, int component) const {
    return component * interior_count() + interior_index;
  }
};

/// Level-0 mesh: the unit square cut into 2x2 subsquares, each split along
/// its diagonal through the center point (1/2, 1/2). All 8 triangles share
/// the interior center vertex, so every element has an interior vertex.
Mesh build_coarse_mesh();

/// Splits every triangle into 4 congruent children through the edge
/// midpoints. Coarse vertex i keeps index i on the fine mesh and the
/// midpoint of coarse edge e becomes fine vertex (coarse vertex count + e).
Mesh refine(const Mesh& mesh);

DofMaps build_dof_maps(const Mesh& mesh);

double signed_area(const Vector2& a, const Vector2& b, const Vector2& c);

/// CSV dump with `vertices` (id,x,y,boundary) and `triangles` (id,v0,v1,v2)
/// sections.
void write_mesh_csv(const Mesh& mesh, const std::string& path);

} // namespace stokesmg

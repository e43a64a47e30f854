#pragma once

#include "anisofem/geometry.hpp"

#include <array>
#include <filesystem>
#include <string>
#include <vector>

namespace anisofem {

/// Undirected edge with sorted endpoints (v0 < v1) and the incident triangles.
/// `tri_count` may exceed 2 for broken input; only the first two ids are kept.
struct Edge {
  int v0 = -1, v1 = -1;
  std::array<int, 2> tris = {-1, -1};
  int tri_count = 0;
};

/// Conforming triangulation. Triangles are stored with positive orientation;
/// edges are sorted lexicographically by (v0, v1) and local edge i of a
/// triangle is the edge opposite its vertex i.
struct Mesh {
  std::vector<Point2> vertices;
  std::vector<std::array<int, 3>> triangles;
  std::vector<Edge> edges;
  std::vector<std::array<int, 3>> tri_edges;
  std::vector<char> vertex_on_boundary;

  int vertex_count() const { return static_cast<int>(vertices.size()); }
  int edge_count() const { return static_cast<int>(edges.size()); }
  int triangle_count() const { return static_cast<int>(triangles.size()); }

  TriangleGeom triangle_geom(int t) const;
  bool edge_on_boundary(int e) const { return edges[static_cast<std::size_t>(e)].tri_count == 1; }
  double edge_length(int e) const;
  Point2 edge_midpoint(int e) const;
  /// Unit normal fixed as the 90-degree clockwise rotation of the
  /// lower-to-higher-vertex-index edge direction.
  Point2 edge_normal(int e) const;
};

/// Builds the derived structure (orientation, edges, adjacency, boundary
/// flags). Throws std::invalid_argument on out-of-range vertex indices;
/// all other defects are left for validate().
Mesh make_mesh(std::vector<Point2> vertices, std::vector<std::array<int, 3>> triangles);

struct MeshStats {
  int vertices = 0, edges = 0, triangles = 0;
  double h = 0.0;             // max diameter
  double max_circumradius = 0.0;
};

MeshStats stats(const Mesh& m);

struct Violation {
  std::string kind;     // "degenerate", "non-manifold", "overlap", "hanging-node", "euler", "index"
  int entity = -1;      // offending triangle/edge/vertex id
  std::string message;
};

/// Structural checks: non-degenerate triangles, every edge in 1 or 2
/// triangles, consistent traversal of interior edges, no vertex strictly
/// inside an edge, Euler formula V - E + T = 1 for a simply connected domain.
std::vector<Violation> validate(const Mesh& m);

/// Anisotropic unit-square triangulation with N strips of height 1/N (N even)
/// and M horizontal intervals; odd-numbered lines carry the staggered points
/// (2j-1)/(2M) plus both corners. Strips are triangulated by a monotone merge
/// of the two point rows.
Mesh generate_aniso(int M, int N);

/// Smallest even integer count near M^alpha, at least 2.
int even_n_for(int M, double alpha);

void write_mesh(const Mesh& m, const std::filesystem::path& path);
Mesh read_mesh(const std::filesystem::path& path);

}  // namespace anisofem

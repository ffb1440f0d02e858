#pragma once

#include <Eigen/Core>
#include <array>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace divdiv {

struct Vertex {
  int id = -1;
  double x = 0.0, y = 0.0;
};

struct Edge {
  int id = -1;
  int a = -1, b = -1;        // endpoint vertex ids, a < b
  Eigen::Vector2d t, n;      // unit tangent a->b; n = t rotated +90 degrees
  double length = 0.0;
  std::array<int, 2> tri = {-1, -1};
  int ntri = 0;
};

struct Tri {
  int id = -1;
  std::array<int, 3> v;      // counterclockwise
  std::array<int, 3> e;      // edge i opposite vertex i
  std::array<int, 3> s;      // +1 if global edge normal is outward, else -1
  Eigen::Matrix2d B;         // x = B xhat + x1
  Eigen::Vector2d x1;
  double J = 0.0;            // det B = 2*area
};

struct Mesh {
  std::vector<Vertex> vertices;
  std::vector<Edge> edges;
  std::vector<Tri> tris;
  std::vector<char> boundary_vertex;
  std::string domain;
  int level = 1;

  Eigen::Vector2d point(int v) const {
    return {vertices[v].x, vertices[v].y};
  }
  // Physical coordinates of a reference point in triangle t.
  Eigen::Vector2d map_point(int t, double xhat, double yhat) const {
    return tris[t].B * Eigen::Vector2d(xhat, yhat) + tris[t].x1;
  }
  double diameter(int t) const;
  double max_diameter() const;
};

// Derives edges, orientation signs, affine maps, and boundary flags from a
// vertex/triangle soup; flips any clockwise triangle. Throws on degenerate
// triangles or a violated Euler identity.
Mesh finalize_mesh(std::vector<Vertex> vertices,
                   std::vector<std::array<int, 3>> triangles,
                   std::string domain, int level);

Mesh build_unit_square(int n);
Mesh single_triangle(const Eigen::Vector2d& p1, const Eigen::Vector2d& p2,
                     const Eigen::Vector2d& p3);
Mesh build_lshape(int n);
Mesh refine_red(const Mesh& mesh);
Mesh perturb(const Mesh& mesh, double factor, std::uint64_t seed);

void write_mesh(const Mesh& mesh, std::ostream& out);
Mesh read_mesh(std::istream& in, std::string domain = "imported");

}  // namespace divdiv

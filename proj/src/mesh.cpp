#include "divdiv/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <map>
#include <ostream>
#include <random>
#include <stdexcept>

namespace divdiv {

double Mesh::diameter(int t) const {
  double d = 0.0;
  for (int i = 0; i < 3; ++i)
    d = std::max(d, edges[tris[t].e[i]].length);
  return d;
}

double Mesh::max_diameter() const {
  double d = 0.0;
  for (const auto& e : edges) d = std::max(d, e.length);
  return d;
}

Mesh finalize_mesh(std::vector<Vertex> vertices,
                   std::vector<std::array<int, 3>> triangles,
                   std::string domain, int level) {
  Mesh m;
  m.domain = std::move(domain);
  m.level = level;
  m.vertices = std::move(vertices);
  for (int i = 0; i < static_cast<int>(m.vertices.size()); ++i)
    m.vertices[i].id = i;

  std::map<std::pair<int, int>, int> edge_of;
  m.tris.reserve(triangles.size());
  for (auto tv : triangles) {
    Tri t;
    t.id = static_cast<int>(m.tris.size());
    t.v = tv;
    Eigen::Vector2d p1 = m.point(tv[0]), p2 = m.point(tv[1]),
                    p3 = m.point(tv[2]);
    double j = (p2 - p1).x() * (p3 - p1).y() - (p2 - p1).y() * (p3 - p1).x();
    if (j < 0.0) {
      std::swap(t.v[1], t.v[2]);
      std::swap(p2, p3);
      j = -j;
    }
    if (!(j > 1e-14))
      throw std::runtime_error("finalize_mesh: degenerate triangle");
    t.B.col(0) = p2 - p1;
    t.B.col(1) = p3 - p1;
    t.x1 = p1;
    t.J = j;
    for (int i = 0; i < 3; ++i) {
      int va = t.v[(i + 1) % 3], vb = t.v[(i + 2) % 3];
      auto key = std::minmax(va, vb);
      auto it = edge_of.find(key);
      int eid;
      if (it == edge_of.end()) {
        Edge e;
        e.id = static_cast<int>(m.edges.size());
        e.a = key.first;
        e.b = key.second;
        Eigen::Vector2d d = m.point(e.b) - m.point(e.a);
        e.length = d.norm();
        e.t = d / e.length;
        e.n = Eigen::Vector2d(-e.t.y(), e.t.x());
        edge_of[key] = eid = e.id;
        m.edges.push_back(e);
      } else {
        eid = it->second;
      }
      Edge& e = m.edges[eid];
      if (e.ntri >= 2)
        throw std::runtime_error("finalize_mesh: edge with >2 triangles");
      e.tri[e.ntri++] = t.id;
      t.e[i] = eid;
      // Outward normal of the ccw-traversed edge v_{i+1} -> v_{i+2}.
      Eigen::Vector2d d = m.point(vb) - m.point(va);
      Eigen::Vector2d outward(d.y(), -d.x());
      t.s[i] = outward.dot(e.n) > 0.0 ? 1 : -1;
    }
    m.tris.push_back(t);
  }

  if (m.edges.size() + 1 != m.vertices.size() + m.tris.size())
    throw std::runtime_error("finalize_mesh: Euler identity violated");

  m.boundary_vertex.assign(m.vertices.size(), 0);
  for (const auto& e : m.edges)
    if (e.ntri == 1) {
      m.boundary_vertex[e.a] = 1;
      m.boundary_vertex[e.b] = 1;
    }
  return m;
}

Mesh build_unit_square(int n) {
  if (n < 1) throw std::invalid_argument("build_unit_square: n >= 1");
  std::vector<Vertex> verts;
  verts.reserve((n + 1) * (n + 1));
  for (int j = 0; j <= n; ++j)
    for (int i = 0; i <= n; ++i)
      verts.push_back({-1, double(i) / n, double(j) / n});
  auto vid = [n](int i, int j) { return j * (n + 1) + i; };
  std::vector<std::array<int, 3>> tris;
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      int p00 = vid(i, j), p10 = vid(i + 1, j);
      int p01 = vid(i, j + 1), p11 = vid(i + 1, j + 1);
      tris.push_back({p00, p10, p11});
      tris.push_back({p00, p11, p01});
    }
  return finalize_mesh(std::move(verts), std::move(tris), "square", 1);
}

Mesh single_triangle(const Eigen::Vector2d& p1, const Eigen::Vector2d& p2,
                     const Eigen::Vector2d& p3) {
  std::vector<Vertex> verts = {{-1, p1.x(), p1.y()},
                               {-1, p2.x(), p2.y()},
                               {-1, p3.x(), p3.y()}};
  return finalize_mesh(std::move(verts), {{0, 1, 2}}, "triangle", 1);
}

Mesh build_lshape(int n) {
  if (n < 1) throw std::invalid_argument("build_lshape: n >= 1");
  // (-1,1)^2 minus [0,1]x[-1,0]; grid spacing 1/n, reentrant corner at origin.
  std::map<std::pair<int, int>, int> vid;
  std::vector<Vertex> verts;
  auto get = [&](int i, int j) {
    auto it = vid.find({i, j});
    if (it != vid.end()) return it->second;
    int id = static_cast<int>(verts.size());
    verts.push_back({-1, double(i) / n - 1.0, double(j) / n - 1.0});
    vid[{i, j}] = id;
    return id;
  };
  std::vector<std::array<int, 3>> tris;
  for (int j = 0; j < 2 * n; ++j)
    for (int i = 0; i < 2 * n; ++i) {
      bool removed = i >= n && j < n;  // cell center in [0,1]x[-1,0]
      if (removed) continue;
      int p00 = get(i, j), p10 = get(i + 1, j);
      int p01 = get(i, j + 1), p11 = get(i + 1, j + 1);
      tris.push_back({p00, p10, p11});
      tris.push_back({p00, p11, p01});
    }
  return finalize_mesh(std::move(verts), std::move(tris), "lshape", 1);
}

Mesh refine_red(const Mesh& mesh) {
  std::vector<Vertex> verts = mesh.vertices;
  std::vector<int> mid(mesh.edges.size());
  for (const auto& e : mesh.edges) {
    mid[e.id] = static_cast<int>(verts.size());
    verts.push_back({-1, 0.5 * (mesh.vertices[e.a].x + mesh.vertices[e.b].x),
                     0.5 * (mesh.vertices[e.a].y + mesh.vertices[e.b].y)});
  }
  std::vector<std::array<int, 3>> tris;
  tris.reserve(4 * mesh.tris.size());
  for (const auto& t : mesh.tris) {
    int m1 = mid[t.e[0]], m2 = mid[t.e[1]], m3 = mid[t.e[2]];
    tris.push_back({t.v[0], m3, m2});
    tris.push_back({m3, t.v[1], m1});
    tris.push_back({m2, m1, t.v[2]});
    tris.push_back({m1, m2, m3});
  }
  return finalize_mesh(std::move(verts), std::move(tris), mesh.domain,
                       mesh.level + 1);
}

Mesh perturb(const Mesh& mesh, double factor, std::uint64_t seed) {
  if (factor < 0.0 || factor > 0.3)
    throw std::invalid_argument("perturb: factor out of [0, 0.3]");
  std::vector<double> hloc(mesh.vertices.size(),
                           std::numeric_limits<double>::max());
  for (const auto& e : mesh.edges) {
    hloc[e.a] = std::min(hloc[e.a], e.length);
    hloc[e.b] = std::min(hloc[e.b], e.length);
  }
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  std::vector<Vertex> verts = mesh.vertices;
  for (auto& v : verts) {
    // Draw for every vertex so the stream is independent of boundary layout.
    double angle = 2.0 * M_PI * uni(rng);
    double radius = factor * hloc[v.id] * uni(rng);
    if (mesh.boundary_vertex[v.id]) continue;
    v.x += radius * std::cos(angle);
    v.y += radius * std::sin(angle);
  }
  std::vector<std::array<int, 3>> tris;
  tris.reserve(mesh.tris.size());
  for (const auto& t : mesh.tris) tris.push_back(t.v);
  Mesh out = finalize_mesh(std::move(verts), std::move(tris), mesh.domain,
                           mesh.level);
  // finalize_mesh repairs orientation by flipping; a perturbation that
  // inverts a triangle must be reported instead.
  for (std::size_t i = 0; i < out.tris.size(); ++i)
    if (out.tris[i].v != mesh.tris[i].v)
      throw std::runtime_error("perturb: triangle inverted");
  return out;
}

void write_mesh(const Mesh& mesh, std::ostream& out) {
  out << mesh.vertices.size() << " " << mesh.tris.size() << "\n";
  out.precision(17);
  for (const auto& v : mesh.vertices) out << v.x << " " << v.y << "\n";
  for (const auto& t : mesh.tris)
    out << t.v[0] << " " << t.v[1] << " " << t.v[2] << "\n";
}

Mesh read_mesh(std::istream& in, std::string domain) {
  std::size_t nv = 0, nt = 0;
  if (!(in >> nv >> nt)) throw std::runtime_error("read_mesh: bad header");
  std::vector<Vertex> verts(nv);
  for (auto& v : verts)
    if (!(in >> v.x >> v.y)) throw std::runtime_error("read_mesh: bad vertex");
  std::vector<std::array<int, 3>> tris(nt);
  for (auto& t : tris)
    if (!(in >> t[0] >> t[1] >> t[2]))
      throw std::runtime_error("read_mesh: bad triangle");
  return finalize_mesh(std::move(verts), std::move(tris), std::move(domain), 1);
}

}  // namespace divdiv

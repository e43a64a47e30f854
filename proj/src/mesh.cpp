#include "anisofem/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace anisofem {

TriangleGeom Mesh::triangle_geom(int t) const {
  const auto& tri = triangles[static_cast<std::size_t>(t)];
  return {vertices[static_cast<std::size_t>(tri[0])], vertices[static_cast<std::size_t>(tri[1])],
          vertices[static_cast<std::size_t>(tri[2])]};
}

double Mesh::edge_length(int e) const {
  const Edge& ed = edges[static_cast<std::size_t>(e)];
  return (vertices[static_cast<std::size_t>(ed.v1)] - vertices[static_cast<std::size_t>(ed.v0)]).norm();
}

Point2 Mesh::edge_midpoint(int e) const {
  const Edge& ed = edges[static_cast<std::size_t>(e)];
  return 0.5 * (vertices[static_cast<std::size_t>(ed.v0)] + vertices[static_cast<std::size_t>(ed.v1)]);
}

Point2 Mesh::edge_normal(int e) const {
  const Edge& ed = edges[static_cast<std::size_t>(e)];
  const Point2 d =
      (vertices[static_cast<std::size_t>(ed.v1)] - vertices[static_cast<std::size_t>(ed.v0)]).normalized();
  return {d.y(), -d.x()};
}

Mesh make_mesh(std::vector<Point2> vertices, std::vector<std::array<int, 3>> triangles) {
  const int nv = static_cast<int>(vertices.size());
  for (std::size_t t = 0; t < triangles.size(); ++t) {
    for (int k = 0; k < 3; ++k) {
      const int v = triangles[t][static_cast<std::size_t>(k)];
      if (v < 0 || v >= nv) {
        throw std::invalid_argument("make_mesh: triangle " + std::to_string(t) +
                                    " references vertex " + std::to_string(v));
      }
    }
  }

  Mesh m;
  m.vertices = std::move(vertices);
  m.triangles = std::move(triangles);

  for (auto& tri : m.triangles) {
    const TriangleGeom g{m.vertices[static_cast<std::size_t>(tri[0])],
                         m.vertices[static_cast<std::size_t>(tri[1])],
                         m.vertices[static_cast<std::size_t>(tri[2])]};
    if (signed_area(g) < 0.0) std::swap(tri[1], tri[2]);
  }

  std::map<std::pair<int, int>, int> edge_ids;
  for (const auto& tri : m.triangles) {
    for (int i = 0; i < 3; ++i) {
      const int u = tri[static_cast<std::size_t>((i + 1) % 3)];
      const int v = tri[static_cast<std::size_t>((i + 2) % 3)];
      edge_ids.emplace(std::minmax(u, v), -1);
    }
  }
  m.edges.reserve(edge_ids.size());
  for (auto& [key, id] : edge_ids) {
    id = static_cast<int>(m.edges.size());
    Edge e;
    e.v0 = key.first;
    e.v1 = key.second;
    m.edges.push_back(e);
  }

  m.tri_edges.resize(m.triangles.size());
  for (std::size_t t = 0; t < m.triangles.size(); ++t) {
    for (int i = 0; i < 3; ++i) {
      const int u = m.triangles[t][static_cast<std::size_t>((i + 1) % 3)];
      const int v = m.triangles[t][static_cast<std::size_t>((i + 2) % 3)];
      const int e = edge_ids.at(std::minmax(u, v));
      m.tri_edges[t][static_cast<std::size_t>(i)] = e;
      Edge& ed = m.edges[static_cast<std::size_t>(e)];
      if (ed.tri_count < 2) ed.tris[static_cast<std::size_t>(ed.tri_count)] = static_cast<int>(t);
      ++ed.tri_count;
    }
  }

  m.vertex_on_boundary.assign(m.vertices.size(), 0);
  for (const Edge& e : m.edges) {
    if (e.tri_count == 1) {
      m.vertex_on_boundary[static_cast<std::size_t>(e.v0)] = 1;
      m.vertex_on_boundary[static_cast<std::size_t>(e.v1)] = 1;
    }
  }
  return m;
}

MeshStats stats(const Mesh& m) {
  MeshStats s;
  s.vertices = m.vertex_count();
  s.edges = m.edge_count();
  s.triangles = m.triangle_count();
  for (int t = 0; t < m.triangle_count(); ++t) {
    const TriangleGeom g = m.triangle_geom(t);
    s.h = std::max(s.h, diameter(g));
    if (!is_degenerate(g)) s.max_circumradius = std::max(s.max_circumradius, circumradius(g));
  }
  return s;
}

namespace {

std::int64_t cell_key(int ix, int iy) {
  return (static_cast<std::int64_t>(ix) << 32) ^ (static_cast<std::int64_t>(iy) & 0xffffffff);
}

}  // namespace

std::vector<Violation> validate(const Mesh& m) {
  std::vector<Violation> out;

  const int nv = m.vertex_count();
  for (int t = 0; t < m.triangle_count(); ++t) {
    for (int k = 0; k < 3; ++k) {
      const int v = m.triangles[static_cast<std::size_t>(t)][static_cast<std::size_t>(k)];
      if (v < 0 || v >= nv) {
        out.push_back({"index", t, "triangle " + std::to_string(t) + " references vertex " +
                                       std::to_string(v)});
      }
    }
  }
  if (!out.empty()) return out;  // derived structure cannot be trusted past this point

  for (int t = 0; t < m.triangle_count(); ++t) {
    if (is_degenerate(m.triangle_geom(t))) {
      out.push_back({"degenerate", t, "triangle " + std::to_string(t) + " is degenerate"});
    }
  }

  for (int e = 0; e < m.edge_count(); ++e) {
    const int c = m.edges[static_cast<std::size_t>(e)].tri_count;
    if (c < 1 || c > 2) {
      out.push_back({"non-manifold", e, "edge " + std::to_string(e) + " lies in " +
                                            std::to_string(c) + " triangles"});
    }
  }

  // Two positively oriented triangles must traverse a shared edge in opposite
  // directions; a nonzero sum exposes overlapping elements on the same side.
  std::vector<int> traversal(static_cast<std::size_t>(m.edge_count()), 0);
  for (int t = 0; t < m.triangle_count(); ++t) {
    const auto& tri = m.triangles[static_cast<std::size_t>(t)];
    const int orient = signed_area(m.triangle_geom(t)) >= 0.0 ? 1 : -1;
    for (int i = 0; i < 3; ++i) {
      const int u = tri[static_cast<std::size_t>((i + 1) % 3)];
      const int e = m.tri_edges[static_cast<std::size_t>(t)][static_cast<std::size_t>(i)];
      const int dir = (u == m.edges[static_cast<std::size_t>(e)].v0) ? 1 : -1;
      traversal[static_cast<std::size_t>(e)] += orient * dir;
    }
  }
  for (int e = 0; e < m.edge_count(); ++e) {
    if (m.edges[static_cast<std::size_t>(e)].tri_count == 2 && traversal[static_cast<std::size_t>(e)] != 0) {
      out.push_back({"overlap", e, "edge " + std::to_string(e) + " is traversed twice in the same direction"});
    }
  }

  // Hanging nodes: spatial hash so large meshes stay near-linear.
  double max_len = 0.0;
  for (int e = 0; e < m.edge_count(); ++e) max_len = std::max(max_len, m.edge_length(e));
  if (max_len > 0.0) {
    const double cell = max_len;
    std::unordered_map<std::int64_t, std::vector<int>> grid;
    for (int v = 0; v < nv; ++v) {
      const Point2& p = m.vertices[static_cast<std::size_t>(v)];
      grid[cell_key(static_cast<int>(std::floor(p.x() / cell)),
                    static_cast<int>(std::floor(p.y() / cell)))]
          .push_back(v);
    }
    for (int e = 0; e < m.edge_count(); ++e) {
      const Edge& ed = m.edges[static_cast<std::size_t>(e)];
      const Point2& a = m.vertices[static_cast<std::size_t>(ed.v0)];
      const Point2& b = m.vertices[static_cast<std::size_t>(ed.v1)];
      const Point2 d = b - a;
      const double len2 = d.squaredNorm();
      const double len = std::sqrt(len2);
      const int ix0 = static_cast<int>(std::floor(std::min(a.x(), b.x()) / cell)) - 1;
      const int ix1 = static_cast<int>(std::floor(std::max(a.x(), b.x()) / cell)) + 1;
      const int iy0 = static_cast<int>(std::floor(std::min(a.y(), b.y()) / cell)) - 1;
      const int iy1 = static_cast<int>(std::floor(std::max(a.y(), b.y()) / cell)) + 1;
      for (int ix = ix0; ix <= ix1; ++ix) {
        for (int iy = iy0; iy <= iy1; ++iy) {
          const auto it = grid.find(cell_key(ix, iy));
          if (it == grid.end()) continue;
          for (const int v : it->second) {
            if (v == ed.v0 || v == ed.v1) continue;
            const Point2& p = m.vertices[static_cast<std::size_t>(v)];
            const double s = (p - a).dot(d) / len2;
            if (s <= 1e-9 || s >= 1.0 - 1e-9) continue;
            if ((p - (a + s * d)).norm() <= 1e-9 * len) {
              out.push_back({"hanging-node", v, "vertex " + std::to_string(v) +
                                                    " lies inside edge " + std::to_string(e)});
            }
          }
        }
      }
    }
  }

  if (m.vertex_count() - m.edge_count() + m.triangle_count() != 1) {
    out.push_back({"euler", -1, "V - E + T = " +
                                    std::to_string(m.vertex_count() - m.edge_count() +
                                                   m.triangle_count()) +
                                    ", expected 1"});
  }
  return out;
}

Mesh generate_aniso(int M, int N) {
  if (M < 1) throw std::invalid_argument("generate_aniso: M must be positive");
  if (N < 2 || N % 2 != 0) throw std::invalid_argument("generate_aniso: N must be even and positive");

  std::vector<Point2> verts;
  std::vector<std::vector<int>> rows(static_cast<std::size_t>(N + 1));
  std::vector<std::vector<double>> xs(static_cast<std::size_t>(N + 1));
  for (int k = 0; k <= N; ++k) {
    const double y = static_cast<double>(k) / N;
    std::vector<double>& x = xs[static_cast<std::size_t>(k)];
    if (k % 2 == 0) {
      for (int j = 0; j <= M; ++j) x.push_back(static_cast<double>(j) / M);
    } else {
      x.push_back(0.0);
      for (int j = 1; j <= M; ++j) x.push_back((2.0 * j - 1.0) / (2.0 * M));
      x.push_back(1.0);
    }
    for (const double xv : x) {
      rows[static_cast<std::size_t>(k)].push_back(static_cast<int>(verts.size()));
      verts.emplace_back(xv, y);
    }
  }

  std::vector<std::array<int, 3>> tris;
  for (int k = 0; k < N; ++k) {
    const auto& bot = rows[static_cast<std::size_t>(k)];
    const auto& top = rows[static_cast<std::size_t>(k + 1)];
    const auto& bx = xs[static_cast<std::size_t>(k)];
    const auto& tx = xs[static_cast<std::size_t>(k + 1)];
    const std::size_t p = bot.size() - 1, q = top.size() - 1;
    std::size_t b = 0, t = 0;
    while (b < p || t < q) {
      bool adv_bot;
      if (b == p) {
        adv_bot = false;
      } else if (t == q) {
        adv_bot = true;
      } else {
        // On a tie between the next points, advance the row whose current
        // point lags behind; anything else creates obtuse slivers at the
        // boundary that break the h = 1/M regime.
        adv_bot = bx[b + 1] < tx[t + 1] || (bx[b + 1] == tx[t + 1] && bx[b] <= tx[t]);
      }
      if (adv_bot) {
        tris.push_back({bot[b], bot[b + 1], top[t]});
        ++b;
      } else {
        tris.push_back({bot[b], top[t + 1], top[t]});
        ++t;
      }
    }
  }
  return make_mesh(std::move(verts), std::move(tris));
}

int even_n_for(int M, double alpha) {
  const long long n = 2 * std::llround(std::pow(static_cast<double>(M), alpha) / 2.0);
  return static_cast<int>(std::max<long long>(n, 2));
}

void write_mesh(const Mesh& m, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("write_mesh: cannot open " + path.string());
  out << "vertices " << m.vertex_count() << "\n";
  char buf[80];
  for (const Point2& p : m.vertices) {
    std::snprintf(buf, sizeof(buf), "%.17g %.17g\n", p.x(), p.y());
    out << buf;
  }
  out << "triangles " << m.triangle_count() << "\n";
  for (const auto& t : m.triangles) out << t[0] << " " << t[1] << " " << t[2] << "\n";
  if (!out) throw std::runtime_error("write_mesh: write failed for " + path.string());
}

namespace {

[[noreturn]] void parse_fail(int line, const std::string& what) {
  throw std::runtime_error("read_mesh: line " + std::to_string(line) + ": " + what);
}

// Next content line (comments stripped, blanks skipped); false on EOF.
bool next_line(std::istream& in, std::string& s, int& line) {
  while (std::getline(in, s)) {
    ++line;
    const std::size_t hash = s.find('#');
    if (hash != std::string::npos) s.erase(hash);
    if (s.find_first_not_of(" \t\r\n") != std::string::npos) return true;
  }
  return false;
}

}  // namespace

Mesh read_mesh(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("read_mesh: cannot open " + path.string());

  int line = 0;
  std::string s, word;

  auto expect_count = [&](const char* keyword) {
    if (!next_line(in, s, line)) parse_fail(line, std::string("expected '") + keyword + " <count>', got end of file");
    std::istringstream ls(s);
    long long n = -1;
    if (!(ls >> word >> n) || word != keyword || n < 0 || (ls >> word))
      parse_fail(line, std::string("expected '") + keyword + " <count>'");
    return static_cast<int>(n);
  };

  const int nv = expect_count("vertices");
  std::vector<Point2> verts;
  verts.reserve(static_cast<std::size_t>(nv));
  for (int i = 0; i < nv; ++i) {
    if (!next_line(in, s, line)) parse_fail(line, "expected vertex coordinates, got end of file");
    std::istringstream ls(s);
    double x = 0.0, y = 0.0;
    if (!(ls >> x >> y) || (ls >> word)) parse_fail(line, "expected two coordinates");
    verts.emplace_back(x, y);
  }

  const int nt = expect_count("triangles");
  std::vector<std::array<int, 3>> tris;
  tris.reserve(static_cast<std::size_t>(nt));
  for (int i = 0; i < nt; ++i) {
    if (!next_line(in, s, line)) parse_fail(line, "expected triangle indices, got end of file");
    std::istringstream ls(s);
    std::array<int, 3> t{};
    if (!(ls >> t[0] >> t[1] >> t[2]) || (ls >> word)) parse_fail(line, "expected three vertex indices");
    for (const int v : t) {
      if (v < 0 || v >= nv)
        parse_fail(line, "vertex index " + std::to_string(v) + " out of range [0, " +
                             std::to_string(nv) + ")");
    }
    tris.push_back(t);
  }
  if (next_line(in, s, line)) parse_fail(line, "unexpected trailing content");

  return make_mesh(std::move(verts), std::move(tris));
}

}  // namespace anisofem

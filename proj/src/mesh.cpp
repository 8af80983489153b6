#include "etdg/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <ostream>
#include <stdexcept>
#include <string>

namespace etdg {

namespace {

double signed_area(const Point& a, const Point& b, const Point& c) {
  return 0.5 * ((b.x() - a.x()) * (c.y() - a.y()) - (c.x() - a.x()) * (b.y() - a.y()));
}

// Outward normal of edge (a,b) of a counterclockwise triangle.
Point outward_normal(const Point& a, const Point& b) {
  const Point t = b - a;
  return Point(t.y(), -t.x()).normalized();
}

}  // namespace

ElementGeometry element_geometry(const Point& a, const Point& b, const Point& c) {
  const double area = std::abs(signed_area(a, b, c));
  const double la = (b - c).norm();  // opposite a
  const double lb = (c - a).norm();
  const double lc = (a - b).norm();
  const double perimeter = la + lb + lc;
  if (area <= 1e-14 * perimeter * perimeter) {
    throw std::invalid_argument("element_geometry: degenerate triangle");
  }
  ElementGeometry g;
  g.area = area;
  g.perimeter = perimeter;
  g.diameter = std::max({la, lb, lc});
  g.incenter = (la * a + lb * b + lc * c) / perimeter;
  g.inradius = area / (0.5 * perimeter);
  g.centroid = (a + b + c) / 3.0;
  return g;
}

ElementGeometry element_geometry(const Mesh& mesh, int element) {
  if (element < 0 || element >= mesh.num_elements()) {
    throw std::out_of_range("element_geometry: invalid element index " + std::to_string(element));
  }
  const auto c = mesh.corners(element);
  return element_geometry(c[0], c[1], c[2]);
}

Mesh::Mesh(std::vector<Point> vertices, std::vector<std::array<int, 3>> triangles,
           DomainKind domain, double domain_area)
    : vertices_(std::move(vertices)),
      triangles_(std::move(triangles)),
      domain_(domain),
      domain_area_(domain_area) {
  for (auto& t : triangles_) {
    for (int v : t) {
      if (v < 0 || v >= static_cast<int>(vertices_.size())) {
        throw std::invalid_argument("Mesh: triangle references unknown vertex");
      }
    }
    if (signed_area(vertices_[t[0]], vertices_[t[1]], vertices_[t[2]]) < 0.0) {
      std::swap(t[1], t[2]);
    }
  }
  geometry_.reserve(triangles_.size());
  for (const auto& t : triangles_) {
    geometry_.push_back(element_geometry(vertices_[t[0]], vertices_[t[1]], vertices_[t[2]]));
  }
  build_topology();
}

void Mesh::build_topology() {
  // (min vertex, max vertex) -> [(element, local edge)]
  std::map<std::pair<int, int>, std::vector<std::pair<int, int>>> edges;
  for (int k = 0; k < num_elements(); ++k) {
    const auto& t = triangles_[k];
    for (int e = 0; e < 3; ++e) {
      const int a = t[e];
      const int b = t[(e + 1) % 3];
      edges[{std::min(a, b), std::max(a, b)}].emplace_back(k, e);
    }
  }

  interior_faces_.clear();
  boundary_faces_.clear();
  element_interior_faces_.assign(triangles_.size(), {});
  element_boundary_faces_.assign(triangles_.size(), {});

  for (const auto& [key, owners] : edges) {
    const auto [ka, ea] = owners.front();
    const auto& ta = triangles_[ka];
    const Point& p0 = vertices_[ta[ea]];
    const Point& p1 = vertices_[ta[(ea + 1) % 3]];
    if (owners.size() == 1) {
      BoundaryFace f;
      f.endpoints = {ta[ea], ta[(ea + 1) % 3]};
      f.element = ka;
      f.unit_normal = outward_normal(p0, p1);
      f.length = (p1 - p0).norm();
      element_boundary_faces_[ka].push_back(static_cast<int>(boundary_faces_.size()));
      boundary_faces_.push_back(f);
    } else if (owners.size() == 2) {
      // plus side is the lower element index; normal is its outward normal
      auto [kp, ep] = owners[0];
      auto [km, em] = owners[1];
      if (kp > km) {
        std::swap(kp, km);
        std::swap(ep, em);
      }
      const auto& tp = triangles_[kp];
      const Point& q0 = vertices_[tp[ep]];
      const Point& q1 = vertices_[tp[(ep + 1) % 3]];
      InteriorFace f;
      f.endpoints = {tp[ep], tp[(ep + 1) % 3]};
      f.plus_element = kp;
      f.minus_element = km;
      f.unit_normal = outward_normal(q0, q1);
      f.length = (q1 - q0).norm();
      const int idx = static_cast<int>(interior_faces_.size());
      element_interior_faces_[kp].emplace_back(idx, +1);
      element_interior_faces_[km].emplace_back(idx, -1);
      interior_faces_.push_back(f);
    } else {
      throw std::invalid_argument("Mesh: non-manifold edge shared by more than two triangles");
    }
  }
}

std::array<Point, 3> Mesh::corners(int element) const {
  const auto& t = triangles_.at(element);
  return {vertices_[t[0]], vertices_[t[1]], vertices_[t[2]]};
}

double Mesh::max_diameter() const {
  double h = 0.0;
  for (const auto& g : geometry_) h = std::max(h, g.diameter);
  return h;
}

double Mesh::polygon_area() const {
  double a = 0.0;
  for (const auto& g : geometry_) a += g.area;
  return a;
}

Mesh Mesh::with_flipped_face(int face) const {
  Mesh copy = *this;
  auto& f = copy.interior_faces_.at(face);
  std::swap(f.plus_element, f.minus_element);
  std::swap(f.endpoints[0], f.endpoints[1]);
  f.unit_normal = -f.unit_normal;
  for (auto& list : copy.element_interior_faces_) {
    for (auto& [idx, side] : list) {
      if (idx == face) side = -side;
    }
  }
  return copy;
}

Mesh build_unit_square_mesh(int n) {
  if (n < 1) throw std::invalid_argument("build_unit_square_mesh: n must be >= 1");
  std::vector<Point> vertices;
  vertices.reserve(static_cast<std::size_t>((n + 1) * (n + 1)));
  for (int j = 0; j <= n; ++j) {
    for (int i = 0; i <= n; ++i) {
      vertices.emplace_back(static_cast<double>(i) / n, static_cast<double>(j) / n);
    }
  }
  auto id = [n](int i, int j) { return j * (n + 1) + i; };
  std::vector<std::array<int, 3>> triangles;
  triangles.reserve(static_cast<std::size_t>(2 * n * n));
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      triangles.push_back({id(i, j), id(i + 1, j), id(i + 1, j + 1)});
      triangles.push_back({id(i, j), id(i + 1, j + 1), id(i, j + 1)});
    }
  }
  return Mesh(std::move(vertices), std::move(triangles), DomainKind::unit_square, 1.0);
}

Mesh build_unit_disk_mesh(int rings) {
  if (rings < 1) throw std::invalid_argument("build_unit_disk_mesh: rings must be >= 1");
  constexpr double two_pi = 2.0 * std::numbers::pi;
  std::vector<Point> vertices{Point::Zero()};
  std::vector<int> ring_start{0};
  for (int k = 1; k <= rings; ++k) {
    ring_start.push_back(static_cast<int>(vertices.size()));
    const int m = 6 * k;
    const double r = (k == rings) ? 1.0 : static_cast<double>(k) / rings;
    for (int j = 0; j < m; ++j) {
      const double t = two_pi * j / m;
      vertices.emplace_back(r * std::cos(t), r * std::sin(t));
    }
  }

  std::vector<std::array<int, 3>> triangles;
  for (int j = 0; j < 6; ++j) {
    triangles.push_back({0, ring_start[1] + j, ring_start[1] + (j + 1) % 6});
  }
  for (int k = 2; k <= rings; ++k) {
    // zip inner ring (6(k-1) points) and outer ring (6k points) by angle
    const int mi = 6 * (k - 1);
    const int mo = 6 * k;
    int i = 0;
    int o = 0;
    while (i < mi || o < mo) {
      const double next_inner = static_cast<double>(i + 1) / mi;
      const double next_outer = static_cast<double>(o + 1) / mo;
      const int vi = ring_start[k - 1] + i % mi;
      const int vo = ring_start[k] + o % mo;
      if (o < mo && (i >= mi || next_outer <= next_inner)) {
        triangles.push_back({vi, vo, ring_start[k] + (o + 1) % mo});
        ++o;
      } else {
        triangles.push_back({vi, vo, ring_start[k - 1] + (i + 1) % mi});
        ++i;
      }
    }
  }
  return Mesh(std::move(vertices), std::move(triangles), DomainKind::unit_disk, std::numbers::pi);
}

Mesh refine(const Mesh& mesh) {
  std::vector<Point> vertices = mesh.vertices();
  std::map<std::pair<int, int>, int> midpoint;
  auto mid = [&](int a, int b) {
    const std::pair<int, int> key{std::min(a, b), std::max(a, b)};
    auto it = midpoint.find(key);
    if (it != midpoint.end()) return it->second;
    const int idx = static_cast<int>(vertices.size());
    vertices.push_back(0.5 * (vertices[a] + vertices[b]));
    midpoint.emplace(key, idx);
    return idx;
  };
  std::vector<std::array<int, 3>> triangles;
  triangles.reserve(4 * mesh.triangles().size());
  for (const auto& t : mesh.triangles()) {
    const int ab = mid(t[0], t[1]);
    const int bc = mid(t[1], t[2]);
    const int ca = mid(t[2], t[0]);
    triangles.push_back({t[0], ab, ca});
    triangles.push_back({ab, t[1], bc});
    triangles.push_back({ca, bc, t[2]});
    triangles.push_back({ab, bc, ca});
  }
  return Mesh(std::move(vertices), std::move(triangles), mesh.domain(), mesh.domain_area());
}

void write_mesh(const Mesh& mesh, std::ostream& out) {
  out.precision(17);
  out << "vertices " << mesh.vertices().size() << '\n';
  for (const auto& v : mesh.vertices()) out << v.x() << ' ' << v.y() << '\n';
  out << "triangles " << mesh.triangles().size() << '\n';
  for (const auto& t : mesh.triangles()) out << t[0] << ' ' << t[1] << ' ' << t[2] << '\n';
  out << "interior_faces " << mesh.interior_faces().size() << '\n';
  for (const auto& f : mesh.interior_faces()) {
    out << f.endpoints[0] << ' ' << f.endpoints[1] << ' ' << f.plus_element << ' '
        << f.minus_element << '\n';
  }
  out << "boundary_faces " << mesh.boundary_faces().size() << '\n';
  for (const auto& f : mesh.boundary_faces()) {
    out << f.endpoints[0] << ' ' << f.endpoints[1] << ' ' << f.element << '\n';
  }
}

}  // namespace etdg

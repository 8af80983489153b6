#pragma once

#include <array>
#include <cstddef>
#include <iosfwd>
#include <vector>

#include <Eigen/Core>

namespace etdg {

using Point = Eigen::Vector2d;

/// Face shared by two triangles. The normal points from `plus_element`
/// into `minus_element`; jumps are taken as v(plus) - v(minus).
struct InteriorFace {
  std::array<int, 2> endpoints{};
  int plus_element = -1;
  int minus_element = -1;
  Point unit_normal = Point::Zero();
  double length = 0.0;
};

struct BoundaryFace {
  std::array<int, 2> endpoints{};
  int element = -1;
  Point unit_normal = Point::Zero();  // outward
  double length = 0.0;
};

/// Per-element geometric data. `incenter` and `inradius` describe the
/// inscribed ball on which the bubble functions vanish.
struct ElementGeometry {
  double diameter = 0.0;  // longest edge
  Point incenter = Point::Zero();
  double inradius = 0.0;
  double area = 0.0;
  Point centroid = Point::Zero();
  double perimeter = 0.0;
};

enum class DomainKind { unit_square, unit_disk };

/// Conforming triangulation with face topology. Triangles are stored
/// counterclockwise. Immutable after construction.
class Mesh {
 public:
  Mesh(std::vector<Point> vertices, std::vector<std::array<int, 3>> triangles,
       DomainKind domain, double domain_area);

  [[nodiscard]] const std::vector<Point>& vertices() const { return vertices_; }
  [[nodiscard]] const std::vector<std::array<int, 3>>& triangles() const { return triangles_; }
  [[nodiscard]] const std::vector<InteriorFace>& interior_faces() const { return interior_faces_; }
  [[nodiscard]] const std::vector<BoundaryFace>& boundary_faces() const { return boundary_faces_; }
  [[nodiscard]] const ElementGeometry& geometry(int element) const { return geometry_.at(element); }
  [[nodiscard]] std::array<Point, 3> corners(int element) const;

  [[nodiscard]] int num_elements() const { return static_cast<int>(triangles_.size()); }
  [[nodiscard]] DomainKind domain() const { return domain_; }
  /// Exact area of the continuous domain (1 or pi), not the polygon area.
  [[nodiscard]] double domain_area() const { return domain_area_; }
  [[nodiscard]] double max_diameter() const;
  [[nodiscard]] double polygon_area() const;

  /// Face indices touching each element: interior faces as (index, +1 for plus side / -1 for
  /// minus side) and boundary faces as their index.
  [[nodiscard]] const std::vector<std::vector<std::pair<int, int>>>& element_interior_faces() const {
    return element_interior_faces_;
  }
  [[nodiscard]] const std::vector<std::vector<int>>& element_boundary_faces() const {
    return element_boundary_faces_;
  }

  /// Swap the plus/minus roles of one interior face (and negate its normal).
  [[nodiscard]] Mesh with_flipped_face(int face) const;

 private:
  void build_topology();

  std::vector<Point> vertices_;
  std::vector<std::array<int, 3>> triangles_;
  std::vector<InteriorFace> interior_faces_;
  std::vector<BoundaryFace> boundary_faces_;
  std::vector<ElementGeometry> geometry_;
  std::vector<std::vector<std::pair<int, int>>> element_interior_faces_;
  std::vector<std::vector<int>> element_boundary_faces_;
  DomainKind domain_;
  double domain_area_;
};

/// n x n grid on (0,1)^2, each cell cut along the (i,j)-(i+1,j+1) diagonal.
Mesh build_unit_square_mesh(int n);

/// Fan-plus-rings triangulation of the unit disk: ring k carries 6k vertices at
/// radius k/rings, the outermost on the unit circle.
Mesh build_unit_disk_mesh(int rings);

/// Geometry of a triangle given by its corners. Throws on (near) zero area.
ElementGeometry element_geometry(const Point& a, const Point& b, const Point& c);
ElementGeometry element_geometry(const Mesh& mesh, int element);

/// Uniform red refinement: every triangle split into four congruent children.
Mesh refine(const Mesh& mesh);

/// Plain-text dump (vertices, triangles, interior and boundary faces).
void write_mesh(const Mesh& mesh, std::ostream& out);

}  // namespace etdg

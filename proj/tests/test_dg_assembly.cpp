#include <doctest.h>

#include <cmath>

#include <Eigen/SVD>

#include "etdg/dg_assembly.hpp"
#include "etdg/space.hpp"
#include "oracles.hpp"

using namespace etdg;

namespace {

std::shared_ptr<const Mesh> shared(Mesh m) { return std::make_shared<const Mesh>(std::move(m)); }

double max_abs_diff(const SparseMatrixC& a, const SparseMatrixC& b) {
  const Eigen::MatrixXcd d = Eigen::MatrixXcd(a) - Eigen::MatrixXcd(b);
  return d.cwiseAbs().maxCoeff();
}

double max_abs(const SparseMatrixC& a) { return Eigen::MatrixXcd(a).cwiseAbs().maxCoeff(); }

}  // namespace

TEST_CASE("average and jump") {
  constexpr auto same = average_jump(Complex(2.5, -1.0), Complex(2.5, -1.0));
  CHECK(same.jump == Complex(0.0));
  CHECK(same.average == Complex(2.5, -1.0));
  constexpr auto step = average_jump(Complex(1.0), Complex(0.0));
  CHECK(step.jump == Complex(1.0));
  CHECK(step.average == Complex(0.5));
}

TEST_CASE("single element with constants") {
  const auto mesh = shared(Mesh({Point(0, 0), Point(1, 0), Point(0.2, 0.7)}, {{0, 1, 2}},
                                DomainKind::unit_square, 1.0));
  const BrokenSpace space(mesh, 0, BasisKind::monomial);
  const double omega = 1.0;
  const SparseMatrixC a = assemble_sipdg(space, FormParameters{Wavenumber(omega), 10.0});
  REQUIRE(a.rows() == 1);
  const auto& g = mesh->geometry(0);
  const Complex expected(-omega * omega * g.area, omega * g.perimeter);
  CHECK(std::abs(Complex(a.coeff(0, 0)) - expected) <= 1e-14);

  const Eigen::VectorXcd b = assemble_rhs(space, [](const Point&) { return Complex(1.0); },
                                          [](const Point&, const Point&) { return Complex(0.0); });
  CHECK(b[0].real() == doctest::Approx(g.area).epsilon(1e-14));
}

TEST_CASE("orientation of a face does not change the matrix") {
  const auto mesh = shared(build_unit_square_mesh(1));
  const auto flipped = shared(mesh->with_flipped_face(0));
  // entries scale like alpha p^2 / h^3 in the orthonormal basis, so compare relative to the largest
  for (int p : {1, 2, 4}) {
    const FormParameters params{Wavenumber(3.0), 10.0};
    const SparseMatrixC a = assemble_sipdg(BrokenSpace(mesh, p), params);
    const SparseMatrixC b = assemble_sipdg(BrokenSpace(flipped, p), params);
    CHECK(max_abs_diff(a, b) <= 1e-13 * max_abs(a));
  }
  // larger mesh, every face flipped
  Mesh m = build_unit_square_mesh(3);
  const SparseMatrixC ref = assemble_sipdg(BrokenSpace(shared(m), 3), FormParameters{Wavenumber(2.0), 10.0});
  for (std::size_t f = 0; f < m.interior_faces().size(); ++f) m = m.with_flipped_face(static_cast<int>(f));
  const SparseMatrixC all = assemble_sipdg(BrokenSpace(shared(m), 3), FormParameters{Wavenumber(2.0), 10.0});
  CHECK(max_abs_diff(ref, all) <= 1e-13 * max_abs(ref));
}

TEST_CASE("complex symmetry and sparsity") {
  for (int n : {1, 3}) {
    for (int p : {1, 2, 5}) {
      const auto mesh = shared(build_unit_square_mesh(n));
      const BrokenSpace space(mesh, p);
      const SparseMatrixC a = assemble_sipdg(space, FormParameters{Wavenumber(7.0), 10.0});
      CHECK(symmetry_defect(a) <= 1e-12);
      CHECK(a.nonZeros() <= static_cast<long>(mesh->num_elements()) * 4 * dim_poly(p) * dim_poly(p));
      // not Hermitian: the boundary term is i omega times a mass matrix
      const SparseMatrixC ah = a.adjoint();
      CHECK((Eigen::MatrixXcd(a) - Eigen::MatrixXcd(ah)).norm() > 1e-3);
    }
  }
  const auto disk = shared(build_unit_disk_mesh(3));
  CHECK(symmetry_defect(assemble_sipdg(BrokenSpace(disk, 3), FormParameters{Wavenumber(5.0), 10.0})) <= 1e-12);
  const Wavenumber variable([](const Point& x) { return 2.0 + x.x() * x.y(); }, 2.0, "2+xy");
  CHECK(symmetry_defect(assemble_sipdg(BrokenSpace(disk, 2), FormParameters{variable, 10.0})) <= 1e-12);
}

TEST_CASE("continuous polynomials see only volume and boundary terms") {
  const double omega = 2.5;
  for (int p : {1, 2, 3}) {
    const auto mesh = shared(build_unit_square_mesh(3));
    const BrokenSpace space(mesh, p);
    const oracle::Polynomial poly = oracle::random_polynomial(p, 100u + p);
    const Eigen::VectorXcd u = l2_projection(space, [&](const Point& x) { return Complex(poly.value(x)); });
    const SparseMatrixC a = assemble_sipdg(space, FormParameters{Wavenumber(omega), 10.0});
    const Complex form = form_value(a, u, u);

    double grad2 = 0.0;
    double mass = 0.0;
    double boundary = 0.0;
    for (int k = 0; k < mesh->num_elements(); ++k) {
      const auto q = element_quadrature(*mesh, k, 2 * p + 2);
      for (std::size_t i = 0; i < q.points.size(); ++i) {
        grad2 += q.weights[i] * poly.gradient(q.points[i]).squaredNorm();
        mass += q.weights[i] * std::pow(poly.value(q.points[i]), 2);
      }
    }
    for (const auto& f : mesh->boundary_faces()) {
      const auto q = map_to_segment(edge_quadrature_rule(2 * p + 2), mesh->vertices()[f.endpoints[0]],
                                    mesh->vertices()[f.endpoints[1]]);
      for (std::size_t i = 0; i < q.points.size(); ++i) boundary += q.weights[i] * std::pow(poly.value(q.points[i]), 2);
    }
    const Complex expected(grad2 - omega * omega * mass, omega * boundary);
    CHECK(std::abs(form - expected) <= 1e-12 * (1.0 + std::abs(expected)));
  }
}

TEST_CASE("right-hand side") {
  const auto mesh = shared(build_unit_square_mesh(3));
  const BrokenSpace space(mesh, 2);
  const auto zero_f = [](const Point&) { return Complex(0.0); };
  const auto zero_g = [](const Point&, const Point&) { return Complex(0.0); };
  CHECK(assemble_rhs(space, zero_f, zero_g).norm() == 0.0);

  const BrokenSpace p0(mesh, 0, BasisKind::monomial);
  const Eigen::VectorXcd b = assemble_rhs(p0, [](const Point&) { return Complex(1.0); }, zero_g);
  for (int k = 0; k < mesh->num_elements(); ++k) {
    CHECK(b[k].real() == doctest::Approx(mesh->geometry(k).area).epsilon(1e-14));
  }

  const Eigen::VectorXcd gb = assemble_rhs(space, zero_f, [](const Point& x, const Point&) {
    return Complex(1.0 + x.x(), x.y());
  });
  for (int k = 0; k < mesh->num_elements(); ++k) {
    const bool touches = !mesh->element_boundary_faces()[k].empty();
    const double block = gb.segment(space.dofs().offset(k), space.block_size()).norm();
    if (touches) {
      CHECK(block > 0.0);
    } else {
      CHECK(block == 0.0);
    }
  }
}

TEST_CASE("residual") {
  const auto mesh = shared(build_unit_square_mesh(2));
  const BrokenSpace space(mesh, 2);
  const SparseMatrixC a = assemble_sipdg(space, FormParameters{Wavenumber(1.0), 10.0});
  const Eigen::VectorXcd zero = Eigen::VectorXcd::Zero(space.size());
  CHECK(residual(a, zero, zero) == 0.0);

  Eigen::VectorXcd u = Eigen::VectorXcd::Random(space.size());
  const Eigen::VectorXcd b = Eigen::VectorXcd::Random(space.size());
  const double r0 = residual(a, b, u);
  const double eps = 1e-3;
  u[5] += eps;
  const double anorm = Eigen::JacobiSVD<Eigen::MatrixXcd>(Eigen::MatrixXcd(a)).singularValues()[0];
  CHECK(std::abs(residual(a, b, u) - r0) <= anorm * eps / (1.0 + b.norm()) * (1.0 + 1e-12));
  CHECK_THROWS_AS(residual(a, b.head(3), u), std::invalid_argument);
}

TEST_CASE("consistency: a continuous polynomial solves its own system") {
  const double omega = 3.0;
  for (int p : {2, 3, 4}) {
    const auto mesh = shared(refine(build_unit_square_mesh(2)));
    const BrokenSpace space(mesh, p);
    const auto c = oracle::polynomial_case(oracle::random_polynomial(p, 7u * p), omega);
    const GlobalSystem sys = assemble_system(space, FormParameters{c.omega, 10.0}, c.source(), c.impedance());
    const Eigen::VectorXcd u = l2_projection(space, c.u);
    CHECK(residual(sys.matrix, sys.rhs, u) <= 1e-9);
  }
}

TEST_CASE("serial and parallel assembly agree exactly") {
  const auto mesh = shared(build_unit_disk_mesh(4));
  const BrokenSpace space(mesh, 3);
  const auto c = oracle::polynomial_case(oracle::random_polynomial(3, 5u), 4.0);
  const FormParameters params{c.omega, 10.0};
  const GlobalSystem s = assemble_system(space, params, c.source(), c.impedance(), ExecutionPolicy::serial);
  const GlobalSystem t = assemble_system(space, params, c.source(), c.impedance(), ExecutionPolicy::parallel);
  CHECK(max_abs_diff(s.matrix, t.matrix) == 0.0);
  CHECK(s.rhs == t.rhs);
}

TEST_CASE("penalty must be positive") {
  const BrokenSpace space(shared(build_unit_square_mesh(1)), 1);
  CHECK_THROWS_AS(assemble_sipdg(space, FormParameters{Wavenumber(1.0), 0.0}), std::invalid_argument);
  CHECK_THROWS_AS(Wavenumber(-1.0), std::invalid_argument);
}

TEST_CASE("face size is the mean of the neighbouring diameters") {
  const Mesh m = build_unit_disk_mesh(2);
  for (const auto& f : m.interior_faces()) {
    CHECK(face_size(m, f) == doctest::Approx(0.5 * (m.geometry(f.plus_element).diameter +
                                                    m.geometry(f.minus_element).diameter)));
  }
}

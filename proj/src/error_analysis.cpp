#include "etdg/error_analysis.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

#include "etdg/local_trefftz.hpp"

namespace etdg {

namespace {

int error_order(int p, int bump) { return std::min(data_quadrature_order(p) + bump, 30); }

Eigen::VectorXcd block(const BrokenSpace& space, const Eigen::VectorXcd& c, int k) {
  return c.segment(space.dofs().offset(k), space.block_size());
}

// Values and gradients of u_h on element k at x.
void eval_field(const BrokenSpace& space, const Eigen::VectorXcd& ck, int k, const Point& x,
                Complex& value, ComplexGradient& grad) {
  const BasisEval e = space.basis(k).eval(x);
  value = e.values.cast<Complex>().dot(ck);
  grad = e.gradients.transpose().cast<Complex>() * ck;
}

double sum_ordered(const std::vector<double>& parts) {
  double s = 0.0;
  for (double v : parts) s += v;
  return s;
}

void require_dense_size(const Mesh& mesh) {
  if (mesh.num_elements() > 32) {
    throw std::invalid_argument("estimate_norm_equivalence: dense path limited to 32 elements");
  }
}

}  // namespace

double l2_error(const BrokenSpace& space, const Eigen::VectorXcd& coefficients,
                const ManufacturedCase& exact, int quadrature_bump, ExecutionPolicy policy) {
  const Mesh& mesh = space.mesh();
  const int order = error_order(space.degree(), quadrature_bump);
  std::vector<double> parts(mesh.num_elements(), 0.0);
  for_each_index(mesh.num_elements(), policy, [&](int k) {
    const Eigen::VectorXcd ck = block(space, coefficients, k);
    const auto quad = element_quadrature(mesh, k, order);
    double s = 0.0;
    for (std::size_t q = 0; q < quad.points.size(); ++q) {
      const Point& x = quad.points[q];
      Complex e = space.basis(k).values(x).cast<Complex>().dot(ck);
      if (exact.u) e -= exact.u(x);
      s += quad.weights[q] * std::norm(e);
    }
    parts[k] = s;
  });
  return std::sqrt(sum_ordered(parts));
}

double l2_error(const SolutionField& solution, const ManufacturedCase& exact, int quadrature_bump) {
  return l2_error(*solution.space, solution.coefficients, exact, quadrature_bump);
}

double dg_error(const BrokenSpace& space, const Eigen::VectorXcd& coefficients,
                const ManufacturedCase& exact, int quadrature_bump, ExecutionPolicy policy) {
  const Mesh& mesh = space.mesh();
  const int p = space.degree();
  const int order = error_order(p, quadrature_bump);

  std::vector<double> element_parts(mesh.num_elements(), 0.0);
  for_each_index(mesh.num_elements(), policy, [&](int k) {
    const Eigen::VectorXcd ck = block(space, coefficients, k);
    const auto quad = element_quadrature(mesh, k, order);
    double s = 0.0;
    for (std::size_t q = 0; q < quad.points.size(); ++q) {
      const Point& x = quad.points[q];
      Complex e;
      ComplexGradient de;
      eval_field(space, ck, k, x, e, de);
      if (exact.u) {
        e -= exact.u(x);
        de -= exact.grad(x);
      }
      const double om = exact.omega(x);
      s += quad.weights[q] * (de.squaredNorm() + om * om * std::norm(e));
    }
    for (int fi : mesh.element_boundary_faces()[k]) {
      const auto& f = mesh.boundary_faces()[fi];
      const auto fq = map_to_segment(edge_quadrature_rule(order), mesh.vertices()[f.endpoints[0]],
                                     mesh.vertices()[f.endpoints[1]]);
      for (std::size_t q = 0; q < fq.points.size(); ++q) {
        const Point& x = fq.points[q];
        Complex e = space.basis(k).values(x).cast<Complex>().dot(ck);
        if (exact.u) e -= exact.u(x);
        s += fq.weights[q] * exact.omega(x) * std::norm(e);
      }
    }
    element_parts[k] = s;
  });

  // the exact solution is continuous, so jumps of e are jumps of u_h
  const int nf = static_cast<int>(mesh.interior_faces().size());
  std::vector<double> face_parts(nf, 0.0);
  for_each_index(nf, policy, [&](int fi) {
    const auto& f = mesh.interior_faces()[fi];
    const Eigen::VectorXcd cp = block(space, coefficients, f.plus_element);
    const Eigen::VectorXcd cm = block(space, coefficients, f.minus_element);
    const auto fq = map_to_segment(edge_quadrature_rule(order), mesh.vertices()[f.endpoints[0]],
                                   mesh.vertices()[f.endpoints[1]]);
    double s = 0.0;
    for (std::size_t q = 0; q < fq.points.size(); ++q) {
      const Point& x = fq.points[q];
      const Complex up = space.basis(f.plus_element).values(x).cast<Complex>().dot(cp);
      const Complex um = space.basis(f.minus_element).values(x).cast<Complex>().dot(cm);
      s += fq.weights[q] * std::norm(up - um);
    }
    face_parts[fi] = static_cast<double>(p) * p / face_size(mesh, f) * s;
  });
  return std::sqrt(sum_ordered(element_parts) + sum_ordered(face_parts));
}

double dg_error(const SolutionField& solution, const ManufacturedCase& exact, int quadrature_bump) {
  return dg_error(*solution.space, solution.coefficients, exact, quadrature_bump);
}

std::vector<double> eoc(const std::vector<double>& errors, const std::vector<double>& hs) {
  if (errors.size() != hs.size()) throw std::invalid_argument("eoc: size mismatch");
  std::vector<double> rates;
  for (std::size_t i = 0; i < errors.size(); ++i) {
    if (!(errors[i] > 0.0) || !(hs[i] > 0.0)) {
      throw std::invalid_argument("eoc: errors and mesh sizes must be positive");
    }
    if (i == 0) continue;
    if (!(hs[i] < hs[i - 1])) throw std::invalid_argument("eoc: mesh sizes must decrease");
    rates.push_back(std::log(errors[i - 1] / errors[i]) / std::log(hs[i - 1] / hs[i]));
  }
  return rates;
}

double dofs_per_wavelength(double dofs, double omega, double domain_area, int dim) {
  if (!(dofs > 0.0) || !(omega > 0.0) || !(domain_area > 0.0) || dim < 1) {
    throw std::invalid_argument("dofs_per_wavelength: inputs must be positive");
  }
  const double inv = 1.0 / dim;
  return 2.0 * std::numbers::pi * std::pow(dofs, inv) / (omega * std::pow(domain_area, inv));
}

ConstantEstimate estimate_local_coercivity(const Mesh& mesh, int element, int p, double omega) {
  if (p < 2) throw std::invalid_argument("estimate_local_coercivity: degree must be >= 2");
  const auto& g = mesh.geometry(element);
  const double h = g.diameter;
  const ScaledMonomialBasis monomials(g, p);
  const BubbleBasis bubbles = bubble_basis(g, p);
  const ElementBasis test = constraint_test_basis(mesh, element, p, BasisKind::orthonormal);
  const int nb = bubbles.size();
  const int nq = test.size();
  const Eigen::MatrixXd bt = bubbles.coefficients.transpose();

  Eigen::MatrixXd w = Eigen::MatrixXd::Zero(nq, nb);
  Eigen::MatrixXd gram_q = Eigen::MatrixXd::Zero(nq, nq);
  Eigen::MatrixXd gram_u = Eigen::MatrixXd::Zero(nb, nb);
  const auto quad = element_quadrature(mesh, element, form_quadrature_order(p));
  for (std::size_t q = 0; q < quad.points.size(); ++q) {
    const BasisEval m = monomials.eval(quad.points[q]);
    const Eigen::VectorXd bv = bt * m.values;
    const Eigen::MatrixXd bg = bt * m.gradients;
    const Eigen::VectorXd bl = bt * m.laplacians;
    const BasisEval t = test.eval(quad.points[q]);
    const double wq = quad.weights[q];
    w.noalias() += (wq * h) * t.values * (-bl - omega * omega * bv).transpose();
    gram_q.noalias() += (wq * h * h) * t.gradients * t.gradients.transpose();
    gram_u.noalias() += wq * (bg * bg.transpose() + omega * omega * bv * bv.transpose());
  }
  const auto corners = mesh.corners(element);
  for (int e = 0; e < 3; ++e) {
    const auto fq = map_to_segment(edge_quadrature_rule(form_quadrature_order(p)), corners[e],
                                   corners[(e + 1) % 3]);
    for (std::size_t q = 0; q < fq.points.size(); ++q) {
      const Eigen::VectorXd tv = test.values(fq.points[q]);
      const Eigen::VectorXd bv = bt * monomials.values(fq.points[q]);
      gram_q.noalias() += (fq.weights[q] * p * p * h) * tv * tv.transpose();
      gram_u.noalias() += (fq.weights[q] * p * p / h) * bv * bv.transpose();
    }
  }
  // ||A u||^2_{Q'} = (W c)^T G_Q^{-1} (W c)
  const Eigen::LLT<Eigen::MatrixXd> llt_q(gram_q);
  if (llt_q.info() != Eigen::Success) {
    throw std::runtime_error("estimate_local_coercivity: Q_h Gram matrix is not SPD");
  }
  const Eigen::MatrixXd dual = w.transpose() * llt_q.solve(w);
  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> ges(0.5 * (dual + dual.transpose()),
                                                               gram_u);
  if (ges.info() != Eigen::Success) {
    throw std::runtime_error("estimate_local_coercivity: energy Gram matrix is not SPD");
  }
  return {"sigma_min_local", std::sqrt(std::max(ges.eigenvalues().minCoeff(), 0.0)), p, omega, h};
}

ConstantEstimate estimate_norm_equivalence(const Mesh& mesh, int p, double omega) {
  if (p < 1) throw std::invalid_argument("estimate_norm_equivalence: degree must be >= 1");
  require_dense_size(mesh);
  const auto mesh_ptr = std::make_shared<const Mesh>(mesh);
  const BrokenSpace space(mesh_ptr, p, BasisKind::orthonormal);
  const int n = space.block_size();
  const int order = form_quadrature_order(p);
  Eigen::MatrixXd energy = Eigen::MatrixXd::Zero(space.size(), space.size());
  Eigen::MatrixXd normal_traces = Eigen::MatrixXd::Zero(space.size(), space.size());

  for (int k = 0; k < mesh.num_elements(); ++k) {
    const auto& basis = space.basis(k);
    const int off = space.dofs().offset(k);
    const auto quad = element_quadrature(mesh, k, order);
    for (std::size_t q = 0; q < quad.points.size(); ++q) {
      const BasisEval e = basis.eval(quad.points[q]);
      energy.block(off, off, n, n).noalias() +=
          quad.weights[q] * (e.gradients * e.gradients.transpose() +
                             omega * omega * e.values * e.values.transpose());
    }
    // p^{-2} h_K ||grad u . n||^2 over the whole element boundary
    const auto corners = mesh.corners(k);
    const double hk = mesh.geometry(k).diameter;
    for (int s = 0; s < 3; ++s) {
      const Point& a = corners[s];
      const Point& b = corners[(s + 1) % 3];
      const Point t = b - a;
      const Point normal = Point(t.y(), -t.x()).normalized();
      const auto fq = map_to_segment(edge_quadrature_rule(order), a, b);
      for (std::size_t q = 0; q < fq.points.size(); ++q) {
        const Eigen::VectorXd dn = basis.eval(fq.points[q]).gradients * normal;
        normal_traces.block(off, off, n, n).noalias() +=
            (fq.weights[q] * hk / (static_cast<double>(p) * p)) * dn * dn.transpose();
      }
    }
  }
  for (const auto& f : mesh.boundary_faces()) {
    const int off = space.dofs().offset(f.element);
    const auto fq = map_to_segment(edge_quadrature_rule(order), mesh.vertices()[f.endpoints[0]],
                                   mesh.vertices()[f.endpoints[1]]);
    for (std::size_t q = 0; q < fq.points.size(); ++q) {
      const Eigen::VectorXd v = space.basis(f.element).values(fq.points[q]);
      energy.block(off, off, n, n).noalias() += (fq.weights[q] * omega) * v * v.transpose();
    }
  }
  for (const auto& f : mesh.interior_faces()) {
    const int off[2] = {space.dofs().offset(f.plus_element), space.dofs().offset(f.minus_element)};
    const int el[2] = {f.plus_element, f.minus_element};
    const double sign[2] = {1.0, -1.0};
    const double pen = static_cast<double>(p) * p / face_size(mesh, f);
    const auto fq = map_to_segment(edge_quadrature_rule(order), mesh.vertices()[f.endpoints[0]],
                                   mesh.vertices()[f.endpoints[1]]);
    for (std::size_t q = 0; q < fq.points.size(); ++q) {
      Eigen::VectorXd v[2] = {space.basis(el[0]).values(fq.points[q]),
                              space.basis(el[1]).values(fq.points[q])};
      for (int r = 0; r < 2; ++r) {
        for (int c = 0; c < 2; ++c) {
          energy.block(off[r], off[c], n, n).noalias() +=
              (fq.weights[q] * pen * sign[r] * sign[c]) * v[r] * v[c].transpose();
        }
      }
    }
  }
  const Eigen::MatrixXd sharp = energy + normal_traces;
  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> ges(sharp, energy,
                                                               Eigen::EigenvaluesOnly);
  if (ges.info() != Eigen::Success) {
    throw std::runtime_error("estimate_norm_equivalence: energy Gram matrix is not SPD");
  }
  return {"c_star", std::sqrt(ges.eigenvalues().maxCoeff()), p, omega, mesh.max_diameter()};
}

ConstantEstimate estimate_inverse_trace(const Mesh& mesh, int element, int p) {
  if (p < 1) throw std::invalid_argument("estimate_inverse_trace: degree must be >= 1");
  const ElementBasis basis(mesh, element, p, BasisKind::orthonormal);
  const Eigen::MatrixXd mass = mass_matrix(mesh, element, basis);
  const int n = basis.size();
  Eigen::MatrixXd trace = Eigen::MatrixXd::Zero(n, n);
  const auto corners = mesh.corners(element);
  for (int s = 0; s < 3; ++s) {
    const auto fq = map_to_segment(edge_quadrature_rule(2 * p + 2), corners[s], corners[(s + 1) % 3]);
    for (std::size_t q = 0; q < fq.points.size(); ++q) {
      const Eigen::VectorXd v = basis.values(fq.points[q]);
      trace.noalias() += fq.weights[q] * v * v.transpose();
    }
  }
  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> ges(trace, mass, Eigen::EigenvaluesOnly);
  const double h = mesh.geometry(element).diameter;
  const double lmax = ges.eigenvalues().maxCoeff();
  return {"inverse_trace", std::sqrt(lmax * h) / p, p, 0.0, h};
}

}  // namespace etdg

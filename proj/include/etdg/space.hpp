#pragma once

#include <memory>
#include <vector>

#include "etdg/mesh.hpp"
#include "etdg/polyspace.hpp"

namespace etdg {

/// Offsets of the per-element coefficient blocks in a global vector.
class DofMap {
 public:
  DofMap(int num_elements, int block_size);

  [[nodiscard]] int offset(int element) const { return offsets_[element]; }
  [[nodiscard]] int block_size() const { return block_size_; }
  [[nodiscard]] int size() const { return offsets_.back(); }

 private:
  std::vector<int> offsets_;
  int block_size_;
};

/// Broken polynomial space V_h: P^p on every element with a per-element basis.
class BrokenSpace {
 public:
  BrokenSpace(std::shared_ptr<const Mesh> mesh, int degree,
              BasisKind kind = BasisKind::orthonormal);

  [[nodiscard]] const Mesh& mesh() const { return *mesh_; }
  [[nodiscard]] const std::shared_ptr<const Mesh>& mesh_ptr() const { return mesh_; }
  [[nodiscard]] int degree() const { return degree_; }
  [[nodiscard]] BasisKind kind() const { return kind_; }
  [[nodiscard]] const ElementBasis& basis(int element) const { return bases_[element]; }
  [[nodiscard]] const DofMap& dofs() const { return dofs_; }
  [[nodiscard]] int size() const { return dofs_.size(); }
  [[nodiscard]] int block_size() const { return dofs_.block_size(); }

 private:
  std::shared_ptr<const Mesh> mesh_;
  int degree_;
  BasisKind kind_;
  std::vector<ElementBasis> bases_;
  DofMap dofs_;
};

/// Volume quadrature order for bilinear-form integrals (2p+2) and for integrals against
/// non-polynomial data (2p+6), both capped at the largest supported order.
int form_quadrature_order(int p);
int data_quadrature_order(int p);

}  // namespace etdg

#include "etdg/space.hpp"

#include <algorithm>
#include <stdexcept>

namespace etdg {

DofMap::DofMap(int num_elements, int block_size) : block_size_(block_size) {
  if (num_elements < 0 || block_size < 1) throw std::invalid_argument("DofMap: invalid sizes");
  offsets_.resize(static_cast<std::size_t>(num_elements) + 1);
  for (int k = 0; k <= num_elements; ++k) offsets_[k] = k * block_size;
}

BrokenSpace::BrokenSpace(std::shared_ptr<const Mesh> mesh, int degree, BasisKind kind)
    : mesh_(std::move(mesh)),
      degree_(degree),
      kind_(kind),
      dofs_(mesh_ ? mesh_->num_elements() : 0, dim_poly(std::max(degree, 0))) {
  if (!mesh_) throw std::invalid_argument("BrokenSpace: null mesh");
  if (degree < 0) throw std::invalid_argument("BrokenSpace: negative degree");
  bases_.reserve(mesh_->num_elements());
  for (int k = 0; k < mesh_->num_elements(); ++k) bases_.emplace_back(*mesh_, k, degree, kind);
}

int form_quadrature_order(int p) { return std::min(2 * p + 2, 30); }
int data_quadrature_order(int p) { return std::min(2 * p + 6, 30); }

}  // namespace etdg

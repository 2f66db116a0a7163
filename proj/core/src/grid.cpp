#include "gabinv/grid.hpp"

namespace gabinv {

GridShape::GridShape(std::vector<std::int64_t> resolution) : resolution_(std::move(resolution)), size_(1) {
  if (resolution_.empty()) throw Error("grid needs at least one axis");
  for (auto r : resolution_) {
    if (r <= 0) throw Error("grid resolution must be positive");
    size_ *= static_cast<std::size_t>(r);
  }
}

std::size_t GridShape::flat(const Node& node) const {
  if (node.size() != rank()) throw Error("node dimension mismatch");
  std::size_t idx = 0;
  for (std::size_t i = 0; i < rank(); ++i) {
    if (node[i] < 0 || node[i] >= resolution_[i]) throw Error("node outside the grid cell");
    idx = idx * static_cast<std::size_t>(resolution_[i]) + static_cast<std::size_t>(node[i]);
  }
  return idx;
}

Node GridShape::node(std::size_t flat) const {
  Node out(rank());
  for (std::size_t i = rank(); i-- > 0;) {
    const auto r = static_cast<std::size_t>(resolution_[i]);
    out[i] = static_cast<std::int64_t>(flat % r);
    flat /= r;
  }
  return out;
}

Node GridShape::wrap(const Node& node, Node* windings) const {
  if (node.size() != rank()) throw Error("node dimension mismatch");
  Node out(rank());
  if (windings) windings->assign(rank(), 0);
  for (std::size_t i = 0; i < rank(); ++i) {
    const std::int64_t r = resolution_[i];
    std::int64_t q = node[i] / r;
    std::int64_t m = node[i] % r;
    if (m < 0) {
      m += r;
      --q;
    }
    out[i] = m;
    if (windings) (*windings)[i] = q;
  }
  return out;
}

Node GridShape::to_grid(const RationalVector& point) const {
  if (point.size() != rank()) throw Error("point dimension mismatch");
  Node out(rank());
  for (std::size_t i = 0; i < rank(); ++i) {
    const Rational scaled = point[i] * resolution_[i];
    if (!is_integer(scaled)) throw Error("point is not on the grid");
    out[i] = to_int64(scaled);
  }
  return out;
}

RationalVector GridShape::to_point(const Node& node) const {
  RationalVector out(rank());
  for (std::size_t i = 0; i < rank(); ++i) {
    out[i] = Rational(node[i], resolution_[i]);
    out[i].canonicalize();
  }
  return out;
}

bool GridShape::on_grid(const RationalVector& point) const {
  if (point.size() != rank()) return false;
  for (std::size_t i = 0; i < rank(); ++i) {
    if (!is_integer(point[i] * resolution_[i])) return false;
  }
  return true;
}

}  // namespace gabinv

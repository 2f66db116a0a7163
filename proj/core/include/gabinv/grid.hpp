#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "gabinv/rational.hpp"

namespace gabinv {

/// Integer coordinates of a node; axis i is measured in units of 1/resolution[i].
using Node = std::vector<std::int64_t>;

/// Uniform grid on the unit cell [0,1)^n, flattened row-major with axis 0 slowest.
class GridShape {
 public:
  GridShape() = default;
  explicit GridShape(std::vector<std::int64_t> resolution);

  std::size_t rank() const noexcept { return resolution_.size(); }
  const std::vector<std::int64_t>& resolution() const noexcept { return resolution_; }
  std::size_t size() const noexcept { return size_; }

  std::size_t flat(const Node& node) const;
  Node node(std::size_t flat) const;

  /// Reduces an arbitrary node into the cell; `windings` (if given) receives the integer
  /// number of cell periods removed along each axis.
  Node wrap(const Node& node, Node* windings = nullptr) const;
  std::size_t wrapped_flat(const Node& node) const { return flat(wrap(node)); }

  /// Converts a rational point to grid units; throws Error if it is off-grid.
  Node to_grid(const RationalVector& point) const;
  RationalVector to_point(const Node& node) const;
  bool on_grid(const RationalVector& point) const;

  bool operator==(const GridShape& other) const { return resolution_ == other.resolution_; }

 private:
  std::vector<std::int64_t> resolution_;
  std::size_t size_ = 0;
};

}  // namespace gabinv

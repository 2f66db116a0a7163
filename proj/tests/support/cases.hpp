#pragma once

#include <array>
#include <string>
#include <vector>

#include "gabinv/invariance.hpp"
#include "gabinv/lattice.hpp"
#include "gabinv/zak.hpp"

namespace gabinv::fixtures {

struct ExampleCase {
  const char* label;
  const char* tilde;
  std::vector<std::array<int, 2>> highlighted;  // generators marked in the figure
};

// Lattices between 4Z x 2Z and Z^2 with the generators the figure marks.
inline const std::vector<ExampleCase>& example_cases() {
  static const std::vector<ExampleCase> cases{
      {"i", "4,0;0,2", {{0, 0}}},          {"ii", "1,0;0,2", {{1, 0}}},
      {"iii", "2,0;0,2", {{2, 0}}},        {"iv", "4,0;0,1", {{0, 1}}},
      {"v", "2,1;0,1", {{1, 1}}},          {"vi", "4,2;0,1", {{2, 1}}},
      {"vii", "2,0;0,1", {{0, 1}, {2, 0}}}, {"viii", "1,0;0,1", {{0, 1}, {1, 0}}},
  };
  return cases;
}

inline RationalLattice base_lattice() { return RationalLattice::parse("4,0;0,2"); }

// B^(0) cells read off the shaded figure, as [x0,x1) x [w0,w1) rectangles in the unit square.
struct Rect {
  double x0, w0, x1, w1;
};

inline const std::vector<Rect>& shaded_rectangles(const std::string& label) {
  static const std::vector<std::pair<std::string, std::vector<Rect>>> table{
      {"i", {{0, 0, 1, 1}}},
      {"ii", {{0, 0, 1, 0.25}}},
      {"iii", {{0, 0, 1, 0.25}, {0, 0.5, 1, 0.75}}},
      {"iv", {{0, 0, 0.5, 1}}},
      {"v", {{0, 0, 0.5, 0.25}, {0.5, 0.5, 1, 0.75}}},
      {"vi", {{0, 0, 0.5, 0.25}, {0, 0.5, 0.5, 0.75}, {0.5, 0.25, 1, 0.5}, {0.5, 0.75, 1, 1}}},
      {"vii", {{0, 0, 0.5, 0.25}, {0, 0.5, 0.5, 0.75}}},
      {"viii", {{0, 0, 0.5, 0.25}}},
  };
  for (const auto& [k, v] : table)
    if (k == label) return v;
  static const std::vector<Rect> none;
  return none;
}

// Indicator of the shaded rectangles on a (P,Q) grid, independent of the mask builder.
inline std::vector<bool> shaded_mask(const std::string& label, std::int64_t P, std::int64_t Q) {
  std::vector<bool> out(static_cast<std::size_t>(P * Q), false);
  for (std::int64_t x = 0; x < P; ++x)
    for (std::int64_t w = 0; w < Q; ++w) {
      const double xs = static_cast<double>(x) / static_cast<double>(P);
      const double ws = static_cast<double>(w) / static_cast<double>(Q);
      for (const auto& r : shaded_rectangles(label))
        if (xs >= r.x0 && xs < r.x1 && ws >= r.w0 && ws < r.w1) out[static_cast<std::size_t>(x * Q + w)] = true;
    }
  return out;
}

inline ZakGrid indicator_grid(const std::vector<bool>& mask, const GridShape& shape) {
  ComplexVector v(mask.size());
  for (std::size_t i = 0; i < mask.size(); ++i) v[i] = mask[i] ? 1.0 : 0.0;
  return ZakGrid(shape, std::move(v));
}

}  // namespace gabinv::fixtures

#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gabinv/grid.hpp"
#include "gabinv/rational.hpp"

namespace gabinv {

using Complex = std::complex<double>;
using ComplexVector = std::vector<Complex>;

inline constexpr double kDefaultZeroTolerance = 1e-9;

/// L = N * M: time period N samples, frequency period M bins.
struct ZakSplit {
  std::int64_t L = 0;
  std::int64_t N = 0;
  std::int64_t M = 0;

  static ZakSplit make(std::int64_t L, std::int64_t N);
  bool operator==(const ZakSplit&) const = default;
};

/// Samples of a Zak transform on the cell, axes ordered (x_1..x_d, w_1..w_d).
///
/// Finite mode carries the split and has resolution (N, M). Continuous mode has
/// resolution (P.., Q..) on [0,1)^{2d}. In both modes node coordinates are grid
/// units and the quasi-periodic extension reads
///   Z(X + k P, W + l Q) = e^{2 pi i k.W/Q} Z(X, W).
class ZakGrid {
 public:
  ZakGrid() = default;
  ZakGrid(GridShape shape, ComplexVector values, double tau = kDefaultZeroTolerance);
  static ZakGrid finite(const ZakSplit& split, ComplexVector values, double tau = kDefaultZeroTolerance);
  static ZakGrid zeros_like(const ZakGrid& other);

  const GridShape& shape() const noexcept { return shape_; }
  std::size_t dim() const noexcept { return shape_.rank() / 2; }
  std::size_t size() const noexcept { return values_.size(); }
  bool is_finite() const noexcept { return split_.has_value(); }
  const std::optional<ZakSplit>& split() const noexcept { return split_; }
  double tau() const noexcept { return tau_; }
  void set_tau(double tau) { tau_ = tau; }

  const ComplexVector& values() const noexcept { return values_; }
  ComplexVector& values() noexcept { return values_; }
  Complex& operator[](std::size_t flat) { return values_[flat]; }
  const Complex& operator[](std::size_t flat) const { return values_[flat]; }
  const Complex& at(const Node& node) const { return values_[shape_.flat(node)]; }

  /// Value at any node of the extended grid via quasi-periodicity.
  Complex extend(const Node& node) const;
  /// Continuous-unit point; must be congruent to a grid node.
  Complex extend(const RationalVector& point) const;

  double max_abs() const;
  /// |value| > tau * max|value| at every node; all false for the zero grid.
  std::vector<bool> support() const;

 private:
  GridShape shape_;
  ComplexVector values_;
  double tau_ = kDefaultZeroTolerance;
  std::optional<ZakSplit> split_;
};

/// Window description shared by the Zak, windows and CLI layers.
struct WindowSpec {
  enum class Kind { indicator, gaussian, finite_vector, explicit_zak };
  Kind kind = Kind::indicator;
  double sigma = 1.0;       // gaussian
  Rational width = 1;       // indicator of [0, width), amplitude width^{-1/2}
  std::int64_t L = 0;       // finite_vector
  ComplexVector values;     // finite_vector samples
  std::optional<ZakGrid> zak;  // explicit_zak
  std::size_t dim = 1;      // indicator / gaussian are tensor products for dim 2
};

std::string kind_name(WindowSpec::Kind kind);

ZakGrid finite_zak(const ComplexVector& f, const ZakSplit& split, double tau = kDefaultZeroTolerance);
ComplexVector inverse_finite_zak(const ZakGrid& grid);

/// Zak image of pi(u,eta) f; `shift` is (u.., eta..) in grid units.
ZakGrid zak_shift_image(const ZakGrid& grid, const Node& shift);

/// Continuous-mode samples on the (P..,Q..) grid. finite_vector specs need P*Q = L.
ZakGrid analytic_zak(const WindowSpec& spec, std::int64_t P, std::int64_t Q, double tau = kDefaultZeroTolerance);
/// Terms kept on each side of the Gaussian Zak series.
std::int64_t gaussian_truncation(double sigma);
double gaussian_value(double sigma, double t);

/// Window for alpha^{1/2} phi(alpha t).
WindowSpec rescale(const WindowSpec& spec, const Rational& alpha);

/// CSV with header "x,omega,re,im"; d = 1 only.
std::string export_csv(const ZakGrid& grid);

double norm(const ComplexVector& v);
double grid_norm(const ZakGrid& g);

}  // namespace gabinv

#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <optional>
#include <vector>

#include "gabinv/lattice.hpp"
#include "gabinv/zak.hpp"

namespace gabinv {

inline constexpr double kDefaultRankTolerance = 1e-10;

/// Gabor system of a window on C^L over an integer lattice read modulo L.
///
/// Lattice coordinates are (u, eta) in samples and bins. The lattice must lie in
/// N Z x M Z, the finite stand-in for Z^2; it is joined with L Z^2 on construction.
class FiniteGaborModel {
 public:
  FiniteGaborModel(const ZakSplit& split, const RationalLattice& lattice, ComplexVector window,
                   double tau = kDefaultZeroTolerance);

  const ZakSplit& split() const noexcept { return split_; }
  const RationalLattice& lattice() const noexcept { return lattice_; }
  const ComplexVector& window() const noexcept { return window_; }
  double tau() const noexcept { return tau_; }
  const ZakGrid& window_zak() const noexcept { return window_zak_; }

  /// The same lattice in continuous units, diag(1/N, 1/M) times the sample lattice.
  const RationalLattice& continuous_lattice() const noexcept { return continuous_; }
  /// {(x,w) : eta x - u w = 0 mod L for all (u,eta)} in grid units.
  const RationalLattice& adjoint_lattice() const noexcept { return adjoint_grid_; }
  /// Adjoint lattice points inside the Zak cell [0,N) x [0,M), grid units.
  const std::vector<Node>& adjoint_offsets() const noexcept { return adjoint_offsets_; }
  /// Distinct (u, eta) in [0,L)^2, zero first.
  const std::vector<Node>& elements() const noexcept { return elements_; }

 private:
  ZakSplit split_;
  RationalLattice lattice_;
  ComplexVector window_;
  double tau_;
  ZakGrid window_zak_;
  RationalLattice continuous_;
  RationalLattice adjoint_grid_;
  std::vector<Node> adjoint_offsets_;
  std::vector<Node> elements_;
};

struct SubspaceBasis {
  Eigen::MatrixXcd columns;
  std::size_t rank = 0;
  double tolerance = kDefaultRankTolerance;
};

struct MembershipResult {
  bool member = false;
  double residual = 0;
  std::optional<ZakGrid> multiplier;
};

struct FrameBounds {
  double A = 0;
  double B = 0;
  bool is_riesz_basis = false;
};

/// e^{2 pi i eta x / L} f(x - u), indices mod L.
ComplexVector tf_shift(const ComplexVector& f, std::int64_t u, std::int64_t eta);

Eigen::MatrixXcd gabor_matrix(const FiniteGaborModel& model);
SubspaceBasis space_basis(const Eigen::MatrixXcd& matrix, double tol = kDefaultRankTolerance);
/// V V^* f for an orthonormal basis V.
ComplexVector gram_projection(const SubspaceBasis& basis, const ComplexVector& f);

/// sum over offsets p of Z1(y+p) conj(Z2(y+p)), quasi-periodically extended.
ZakGrid bracket(const ZakGrid& zf, const ZakGrid& zg, const std::vector<Node>& offsets);
ZakGrid bracket(const ComplexVector& f, const ComplexVector& g, const FiniteGaborModel& model);

/// Nodes where [phi,phi] exceeds tau^2 times its maximum.
std::vector<bool> bracket_support(const ZakGrid& phi_bracket, double tau);

/// [f,phi]/[phi,phi] on the bracket support, zero elsewhere.
ZakGrid projection_multiplier(const ComplexVector& f, const FiniteGaborModel& model);
ComplexVector project(const ComplexVector& f, const FiniteGaborModel& model);
MembershipResult membership(const ComplexVector& f, const FiniteGaborModel& model, double tol = 1e-9);

/// Bounds normalised by m = |adjoint lattice in the cell|: A = min [phi,phi]/m, B = max [phi,phi]/m.
FrameBounds riesz_frame_bounds(const FiniteGaborModel& model);

ComplexVector to_std(const Eigen::VectorXcd& v);
Eigen::VectorXcd to_eigen(const ComplexVector& v);

}  // namespace gabinv

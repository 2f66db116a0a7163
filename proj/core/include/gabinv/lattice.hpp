#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "gabinv/grid.hpp"
#include "gabinv/rational.hpp"

namespace gabinv {

inline constexpr std::size_t kDefaultIndexGuard = 10'000;

/// Full-rank lattice in Q^n held in canonical column Hermite normal form.
///
/// The stored basis H is upper triangular with positive diagonal and
/// 0 <= H(i,j) < H(i,i) for j > i. Two values compare equal iff they describe
/// the same point set.
class RationalLattice {
 public:
  /// Canonicalises a square nonsingular basis (columns are generators).
  static RationalLattice from_basis(const RationalMatrix& raw);
  /// Canonicalises any full-rank generating set (n x k, k >= n).
  static RationalLattice from_generators(const RationalMatrix& generators);
  static RationalLattice integer(std::size_t dim);
  static RationalLattice diagonal(const RationalVector& entries);
  static RationalLattice parse(std::string_view text) { return from_basis(parse_matrix(text)); }

  std::size_t dim() const noexcept { return basis_.rows(); }
  const RationalMatrix& basis() const noexcept { return basis_; }
  const Rational& covolume() const noexcept { return covolume_; }
  RationalVector column(std::size_t j) const { return basis_.column(j); }
  bool is_diagonal() const;

  bool contains(const RationalVector& v) const;
  /// Canonical representative of v modulo the lattice, inside the box prod [0, H(i,i)).
  RationalVector reduce(const RationalVector& v) const;

  RationalLattice scaled(const RationalVector& axis_factors) const;

  std::string to_string() const { return format_matrix(basis_); }

  bool operator==(const RationalLattice& other) const { return basis_ == other.basis_; }
  /// Total order on canonical bases; used for deterministic sorting only.
  bool operator<(const RationalLattice& other) const;

 private:
  RationalMatrix basis_;
  Rational covolume_;
};

/// Quotient super/sub: N representatives, representative 0 first, the rest lexicographic.
struct CosetPartition {
  RationalLattice superlattice;
  RationalLattice sublattice;
  std::size_t order = 0;
  std::vector<RationalVector> representatives;

  /// Index of the coset containing v (v must lie in the superlattice).
  std::size_t coset_of(const RationalVector& v) const;
};

/// A fundamental domain of a lattice containing Z^n, realised inside [0,1)^n.
struct FundamentalDomain {
  enum class Kind { box, digit_set };

  RationalLattice lattice;
  Kind kind = Kind::box;
  RationalVector box_extent;   // box: [0, extent_i) per axis
  GridShape grid;              // resolution the domain was built on
  std::vector<Node> digits;    // digit_set: one node per lattice orbit

  /// All nodes of `grid` belonging to the domain; `grid` must be the build grid or,
  /// for boxes, any grid on which the box edges fall on nodes.
  std::vector<Node> nodes(const GridShape& on) const;
  bool contains_node(const GridShape& on, const Node& node) const;
};

RationalLattice canonical_basis(const RationalMatrix& raw);
bool member(const RationalLattice& lattice, const RationalVector& v);
bool sublattice_of(const RationalLattice& inner, const RationalLattice& outer);
RationalLattice dual(const RationalLattice& lattice);
RationalLattice adjoint(const RationalLattice& lattice);
/// J (A^{-1})^T for the canonical basis A, each column sign-normalised (first nonzero positive).
RationalMatrix adjoint_generator(const RationalLattice& lattice);
RationalLattice join(const RationalLattice& lattice, std::span<const RationalVector> extra);
std::size_t index(const RationalLattice& sub, const RationalLattice& super);
CosetPartition quotient_cosets(const RationalLattice& super, const RationalLattice& sub,
                               std::size_t guard = kDefaultIndexGuard);

/// b.u - a.eta (mod 1) for the representative (u,eta) of coset `ell` and (a,b) in adjoint(sub).
Rational coset_character_phase(const CosetPartition& partition, std::size_t ell, const RationalVector& ab);
std::complex<double> coset_character(const CosetPartition& partition, std::size_t ell, const RationalVector& ab);
/// Symplectic pairing b.u - a.eta of (u,eta) with (a,b).
Rational symplectic_pairing(const RationalVector& ab, const RationalVector& u_eta);

FundamentalDomain fundamental_domain(const RationalLattice& lattice, const GridShape& grid);
bool grid_refines(const GridShape& grid, const RationalLattice& lattice);

/// All lattices between `lattice` and `ambient`, deduplicated, sorted by decreasing
/// covolume then basis order.
std::vector<RationalLattice> intermediate_lattices(const RationalLattice& lattice, const RationalLattice& ambient,
                                                   std::size_t guard = kDefaultIndexGuard);

/// Lattice points of `lattice` inside [0,1)^n, i.e. lattice / Z^n. Requires Z^n inside the lattice.
std::vector<RationalVector> points_in_unit_cell(const RationalLattice& lattice);

}  // namespace gabinv

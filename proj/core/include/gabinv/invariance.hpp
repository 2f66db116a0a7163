#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "gabinv/finite_gabor.hpp"
#include "gabinv/lattice.hpp"
#include "gabinv/zak.hpp"

namespace gabinv {

/// Lattices below are in continuous units: Z^{2d} is the integer lattice and the
/// Zak cell is [0,1)^{2d}. Grids carry node coordinates in grid units.

/// Masks B^(l) = union over (u,eta) in coset l of (u,eta) + D, restricted to the cell.
struct MaskFamily {
  CosetPartition cosets;
  FundamentalDomain domain;
  GridShape grid;
  std::vector<std::size_t> label;  // coset index of every grid node
  std::vector<Node> offsets;       // adjoint lattice points in the cell, grid units
  std::vector<std::size_t> offset_label;

  std::size_t order() const noexcept { return cosets.order; }
  std::vector<bool> mask(std::size_t ell) const;
};

MaskFamily build_masks(const CosetPartition& cosets, const FundamentalDomain& domain, const GridShape& grid);
/// Masks for the chain lattice <= tilde, i.e. cosets of adjoint(lattice) / adjoint(tilde).
MaskFamily build_masks(const RationalLattice& lattice, const RationalLattice& tilde, const GridShape& grid);

struct Witness {
  Node node;
  Node offset;
  double value_abs = 0;
  double offset_abs = 0;
};

struct ConditionReport {
  bool holds = false;
  bool energy_holds = false;
  bool forms_agree = false;
  std::size_t order = 1;
  std::size_t max_nonzero_cosets = 0;
  std::vector<Witness> witnesses;
  /// Per node, energy of every coset, flattened [node * order + ell].
  std::vector<double> coset_energies;
};

/// Zero-pattern test: wherever |Z phi| > tau max|Z phi|, it vanishes on every
/// translate by an adjoint-lattice vector outside adjoint(tilde).
ConditionReport condition_d(const ZakGrid& zphi, const RationalLattice& lattice, const RationalLattice& tilde,
                            double tau = kDefaultZeroTolerance);

struct Decomposition {
  std::vector<ComplexVector> components;
  std::vector<double> norms;
  double parseval_error = 0;
  double max_cross = 0;
  bool invariant_pattern = false;
  std::vector<bool> members;  // residual within tol * norm(f); filled when the window passes the zero-pattern test
};

/// f^(l) = Z^{-1}(Zf chi_{B^(l)}) for the finite model and a lattice tilde above it.
Decomposition decompose(const ComplexVector& f, const FiniteGaborModel& model, const RationalLattice& tilde,
                        double tol = 1e-9);

/// (1/M~) sum_{p in adjoint cell points} e^{2 pi i [b.(x+p_1) - a.(w+p_2)]} chi_{B^(l)}(y + p),
/// with M~ the number of adjoint(tilde) points in the cell.
ZakGrid multiplier_coset(const MaskFamily& masks, std::size_t ell, const RationalVector& ab);

struct PatternMultiplier {
  ZakGrid h;
  double certificate_residual = 0;
};

/// Adjoint-periodic h with Z[pi(a,b) phi] = h Z phi, built orbit by orbit from the zero pattern.
PatternMultiplier multiplier_from_pattern(const ZakGrid& zphi, const RationalLattice& lattice,
                                          const RationalLattice& tilde, const RationalVector& ab,
                                          double tau = kDefaultZeroTolerance);

struct OracleResult {
  bool invariant = false;
  double max_residual = 0;
  std::size_t rank = 0;
};

/// Definition-level test: every basis vector v of the span satisfies ||(I - P) pi(a,b) v|| <= tol.
/// (a,b) is in samples and bins.
OracleResult brute_force_invariant(const FiniteGaborModel& model, const SubspaceBasis& basis, const Node& ab,
                                   double tol = 1e-9);
OracleResult brute_force_invariant(const FiniteGaborModel& model, const Node& ab, double tol = 1e-9);
/// Invariance under every generator of a continuous-unit lattice, scaled to (N a, M b).
OracleResult brute_force_lattice_invariant(const FiniteGaborModel& model, const SubspaceBasis& basis,
                                           const RationalLattice& tilde, double tol = 1e-9);

struct IntegerInvariance {
  bool invariant = false;
  bool riesz_basis = false;       // every orbit carries a nonzero node
  bool exactly_one = false;       // invariant and riesz_basis
  std::vector<Node> domain;       // the nonzero nodes, one per live orbit
  std::optional<std::pair<Node, Node>> witness;
};

/// Z^{2d}-invariance: at most one nonzero node per orbit of the adjoint lattice.
IntegerInvariance integer_invariance(const ZakGrid& zphi, const RationalLattice& lattice,
                                     double tau = kDefaultZeroTolerance);

enum class ShiftMode { translation, modulation, all };
ShiftMode parse_shift_mode(const std::string& text);

struct FullShiftInvariance {
  bool invariant = false;
  std::vector<std::size_t> rows;     // flat indices (over the frequency or time axes) of nonzero rows
  std::optional<std::size_t> witness;
};

/// Nonzero pattern test for the full translation / modulation / time-frequency groups.
FullShiftInvariance full_shift_invariance(const ZakGrid& zphi, ShiftMode mode, double tau = kDefaultZeroTolerance);

struct InvarianceRow {
  RationalLattice tilde;
  bool condition_d = false;
  std::optional<bool> oracle;
};

struct InvarianceSet {
  std::vector<InvarianceRow> rows;
  RationalLattice maximal;
  bool maximal_verified = false;
};

using OracleFn = std::function<bool(const RationalLattice&)>;

/// Runs the zero-pattern test on every lattice between `lattice` and `ambient`
/// and returns the join of the invariant ones, re-checked rather than assumed.
InvarianceSet invariance_set(const ZakGrid& zphi, const RationalLattice& lattice, const RationalLattice& ambient,
                             double tau = kDefaultZeroTolerance, const OracleFn& oracle = {},
                             std::size_t guard = kDefaultIndexGuard);

}  // namespace gabinv

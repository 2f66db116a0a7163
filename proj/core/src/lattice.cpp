#include "gabinv/lattice.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>

namespace gabinv {

namespace {

using IntColumn = std::vector<Integer>;

Integer lcm_of_denominators(const RationalMatrix& m) {
  Integer l = 1;
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), m(r, c).get_den_mpz_t());
  return l;
}

Integer floor_div(const Integer& a, const Integer& b) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

// Column-operation Hermite normal form of an integer generating set with n rows.
// Returns the n pivot columns; H is upper triangular with positive diagonal and
// off-diagonal entries reduced into [0, pivot).
std::vector<IntColumn> integer_hnf(std::vector<IntColumn> work, std::size_t n) {
  std::vector<IntColumn> pivots(n);
  for (std::size_t r = n; r-- > 0;) {
    for (;;) {
      std::size_t best = work.size();
      std::size_t nonzero = 0;
      for (std::size_t c = 0; c < work.size(); ++c) {
        if (work[c][r] == 0) continue;
        ++nonzero;
        if (best == work.size() || abs(work[c][r]) < abs(work[best][r])) best = c;
      }
      if (nonzero == 0) throw Error("degenerate lattice");
      if (nonzero == 1) {
        if (work[best][r] < 0)
          for (auto& e : work[best]) e = -e;
        pivots[r] = std::move(work[best]);
        work.erase(work.begin() + static_cast<std::ptrdiff_t>(best));
        break;
      }
      for (std::size_t c = 0; c < work.size(); ++c) {
        if (c == best || work[c][r] == 0) continue;
        const Integer q = floor_div(work[c][r], work[best][r]);
        for (std::size_t i = 0; i <= r; ++i) work[c][i] -= q * work[best][i];
      }
    }
  }
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = j; i-- > 0;) {
      const Integer q = floor_div(pivots[j][i], pivots[i][i]);
      if (q == 0) continue;
      for (std::size_t k = 0; k <= i; ++k) pivots[j][k] -= q * pivots[i][k];
    }
  }
  return pivots;
}

RationalVector add(const RationalVector& a, const RationalVector& b) {
  RationalVector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
  return out;
}

bool is_zero(const RationalVector& v) {
  return std::all_of(v.begin(), v.end(), [](const Rational& q) { return q == 0; });
}

}  // namespace

RationalLattice RationalLattice::from_generators(const RationalMatrix& generators) {
  const std::size_t n = generators.rows();
  if (n == 0 || generators.cols() < n) throw Error("degenerate lattice");
  const Integer scale = lcm_of_denominators(generators);
  std::vector<IntColumn> cols(generators.cols(), IntColumn(n));
  for (std::size_t c = 0; c < generators.cols(); ++c)
    for (std::size_t r = 0; r < n; ++r) {
      const Rational scaled = generators(r, c) * scale;
      cols[c][r] = scaled.get_num();
    }
  const auto pivots = integer_hnf(std::move(cols), n);
  RationalLattice out;
  out.basis_ = RationalMatrix(n, n);
  out.covolume_ = 1;
  for (std::size_t c = 0; c < n; ++c)
    for (std::size_t r = 0; r < n; ++r) {
      Rational q(pivots[c][r], scale);
      q.canonicalize();
      out.basis_(r, c) = q;
    }
  for (std::size_t i = 0; i < n; ++i) out.covolume_ *= out.basis_(i, i);
  return out;
}

RationalLattice RationalLattice::from_basis(const RationalMatrix& raw) {
  if (raw.rows() != raw.cols() || raw.rows() == 0) throw Error("lattice basis must be square");
  if (determinant(raw) == 0) throw Error("degenerate lattice");
  return from_generators(raw);
}

RationalLattice RationalLattice::integer(std::size_t dim) { return from_basis(RationalMatrix::identity(dim)); }

RationalLattice RationalLattice::diagonal(const RationalVector& entries) {
  RationalMatrix m(entries.size(), entries.size());
  for (std::size_t i = 0; i < entries.size(); ++i) m(i, i) = entries[i];
  return from_basis(m);
}

bool RationalLattice::is_diagonal() const {
  for (std::size_t r = 0; r < dim(); ++r)
    for (std::size_t c = 0; c < dim(); ++c)
      if (r != c && basis_(r, c) != 0) return false;
  return true;
}

RationalVector RationalLattice::reduce(const RationalVector& v) const {
  if (v.size() != dim()) throw Error("dimension mismatch");
  RationalVector out = v;
  for (std::size_t i = dim(); i-- > 0;) {
    const Rational ratio = out[i] / basis_(i, i);
    const Integer q = floor_of(ratio);
    if (q == 0) continue;
    const Rational qr(q);
    for (std::size_t k = 0; k <= i; ++k) out[k] -= qr * basis_(k, i);
  }
  return out;
}

bool RationalLattice::contains(const RationalVector& v) const { return is_zero(reduce(v)); }

RationalLattice RationalLattice::scaled(const RationalVector& axis_factors) const {
  if (axis_factors.size() != dim()) throw Error("dimension mismatch");
  RationalMatrix m = basis_;
  for (std::size_t r = 0; r < dim(); ++r)
    for (std::size_t c = 0; c < dim(); ++c) m(r, c) *= axis_factors[r];
  return from_basis(m);
}

bool RationalLattice::operator<(const RationalLattice& other) const {
  if (dim() != other.dim()) return dim() < other.dim();
  for (std::size_t r = 0; r < dim(); ++r)
    for (std::size_t c = 0; c < dim(); ++c) {
      if (basis_(r, c) < other.basis_(r, c)) return true;
      if (other.basis_(r, c) < basis_(r, c)) return false;
    }
  return false;
}

std::size_t CosetPartition::coset_of(const RationalVector& v) const {
  const RationalVector r = sublattice.reduce(v);
  if (is_zero(r)) return 0;
  auto it = std::lower_bound(representatives.begin() + 1, representatives.end(), r);
  if (it == representatives.end() || *it != r) throw Error("vector is not in the superlattice");
  return static_cast<std::size_t>(it - representatives.begin());
}

RationalLattice canonical_basis(const RationalMatrix& raw) { return RationalLattice::from_basis(raw); }

bool member(const RationalLattice& lattice, const RationalVector& v) {
  if (v.size() != lattice.dim()) throw Error("dimension mismatch");
  return lattice.contains(v);
}

bool sublattice_of(const RationalLattice& inner, const RationalLattice& outer) {
  if (inner.dim() != outer.dim()) throw Error("dimension mismatch");
  for (std::size_t j = 0; j < inner.dim(); ++j)
    if (!outer.contains(inner.column(j))) return false;
  return true;
}

RationalLattice dual(const RationalLattice& lattice) {
  return RationalLattice::from_basis(inverse(lattice.basis()).transposed());
}

namespace {

RationalMatrix apply_j(const RationalMatrix& m) {
  const std::size_t n = m.rows();
  const std::size_t d = n / 2;
  RationalMatrix out(n, m.cols());
  for (std::size_t c = 0; c < m.cols(); ++c)
    for (std::size_t i = 0; i < d; ++i) {
      out(i, c) = m(i + d, c);
      out(i + d, c) = -m(i, c);
    }
  return out;
}

}  // namespace

RationalLattice adjoint(const RationalLattice& lattice) {
  if (lattice.dim() % 2 != 0) throw Error("adjoint requires an even dimension");
  return RationalLattice::from_basis(apply_j(inverse(lattice.basis()).transposed()));
}

RationalMatrix adjoint_generator(const RationalLattice& lattice) {
  if (lattice.dim() % 2 != 0) throw Error("adjoint requires an even dimension");
  RationalMatrix g = apply_j(inverse(lattice.basis()).transposed());
  for (std::size_t c = 0; c < g.cols(); ++c) {
    std::size_t r = 0;
    while (r < g.rows() && g(r, c) == 0) ++r;
    if (r < g.rows() && g(r, c) < 0)
      for (std::size_t k = 0; k < g.rows(); ++k) g(k, c) = -g(k, c);
  }
  return g;
}

RationalLattice join(const RationalLattice& lattice, std::span<const RationalVector> extra) {
  const std::size_t n = lattice.dim();
  std::vector<RationalVector> cols;
  for (std::size_t j = 0; j < n; ++j) cols.push_back(lattice.column(j));
  for (const auto& v : extra) {
    if (v.size() != n) throw Error("dimension mismatch");
    cols.push_back(v);
  }
  return RationalLattice::from_generators(RationalMatrix::from_columns(cols, n));
}

std::size_t index(const RationalLattice& sub, const RationalLattice& super) {
  if (!sublattice_of(sub, super)) throw Error("not a sublattice");
  const Rational ratio = sub.covolume() / super.covolume();
  if (!is_integer(ratio)) throw Error("non-integral index");
  const Integer n = ratio.get_num();
  if (!n.fits_ulong_p()) throw GuardExceeded("index too large");
  return n.get_ui();
}

CosetPartition quotient_cosets(const RationalLattice& super, const RationalLattice& sub, std::size_t guard) {
  const std::size_t n = index(sub, super);
  if (n > guard) throw GuardExceeded("index " + std::to_string(n) + " exceeds the enumeration guard " + std::to_string(guard));
  const RationalVector zero(super.dim(), Rational(0));
  std::set<RationalVector> seen{zero};
  std::deque<RationalVector> queue{zero};
  while (!queue.empty()) {
    const RationalVector cur = queue.front();
    queue.pop_front();
    for (std::size_t j = 0; j < super.dim(); ++j) {
      RationalVector next = sub.reduce(add(cur, super.column(j)));
      if (seen.insert(next).second) queue.push_back(std::move(next));
    }
  }
  if (seen.size() != n) throw Error("coset enumeration inconsistent with the covolume index");
  CosetPartition out{super, sub, n, {}};
  out.representatives.push_back(zero);
  for (const auto& v : seen)
    if (!is_zero(v)) out.representatives.push_back(v);
  return out;
}

Rational symplectic_pairing(const RationalVector& ab, const RationalVector& u_eta) {
  if (ab.size() != u_eta.size() || ab.size() % 2 != 0) throw Error("dimension mismatch");
  const std::size_t d = ab.size() / 2;
  Rational acc = 0;
  for (std::size_t i = 0; i < d; ++i) acc += ab[d + i] * u_eta[i] - ab[i] * u_eta[d + i];
  return acc;
}

Rational coset_character_phase(const CosetPartition& partition, std::size_t ell, const RationalVector& ab) {
  if (ell >= partition.order) throw Error("coset index out of range");
  if (!adjoint(partition.sublattice).contains(ab)) throw Error("character undefined off the adjoint of the sublattice");
  return frac(symplectic_pairing(ab, partition.representatives[ell]));
}

std::complex<double> coset_character(const CosetPartition& partition, std::size_t ell, const RationalVector& ab) {
  return unit_phase(coset_character_phase(partition, ell, ab));
}

bool grid_refines(const GridShape& grid, const RationalLattice& lattice) {
  if (grid.rank() != lattice.dim()) return false;
  for (std::size_t j = 0; j < lattice.dim(); ++j)
    if (!grid.on_grid(lattice.column(j))) return false;
  return true;
}

std::vector<RationalVector> points_in_unit_cell(const RationalLattice& lattice) {
  const auto z = RationalLattice::integer(lattice.dim());
  if (!sublattice_of(z, lattice)) throw Error("lattice does not contain the integer lattice");
  return quotient_cosets(lattice, z).representatives;
}

FundamentalDomain fundamental_domain(const RationalLattice& lattice, const GridShape& grid) {
  if (!grid_refines(grid, lattice)) throw Error("grid does not refine the lattice");
  const auto points = points_in_unit_cell(lattice);
  FundamentalDomain fd{lattice, FundamentalDomain::Kind::box, {}, grid, {}};
  if (lattice.is_diagonal()) {
    for (std::size_t i = 0; i < lattice.dim(); ++i) fd.box_extent.push_back(lattice.basis()(i, i));
    return fd;
  }
  fd.kind = FundamentalDomain::Kind::digit_set;
  std::vector<Node> offsets;
  for (const auto& p : points) offsets.push_back(grid.to_grid(p));
  std::vector<bool> covered(grid.size(), false);
  for (std::size_t f = 0; f < grid.size(); ++f) {
    if (covered[f]) continue;
    const Node base = grid.node(f);
    fd.digits.push_back(base);
    for (const auto& off : offsets) {
      Node shifted = base;
      for (std::size_t i = 0; i < shifted.size(); ++i) shifted[i] += off[i];
      const std::size_t g = grid.wrapped_flat(shifted);
      if (covered[g]) throw Error("fundamental domain construction found overlapping orbits");
      covered[g] = true;
    }
  }
  return fd;
}

std::vector<Node> FundamentalDomain::nodes(const GridShape& on) const {
  std::vector<Node> out;
  if (kind == Kind::digit_set) {
    if (!(on == grid)) throw Error("digit-set domain requested on a different grid");
    return digits;
  }
  for (std::size_t f = 0; f < on.size(); ++f) {
    Node node = on.node(f);
    if (contains_node(on, node)) out.push_back(std::move(node));
  }
  return out;
}

bool FundamentalDomain::contains_node(const GridShape& on, const Node& node) const {
  if (kind == Kind::digit_set) {
    if (!(on == grid)) throw Error("digit-set domain requested on a different grid");
    return std::find(digits.begin(), digits.end(), node) != digits.end();
  }
  for (std::size_t i = 0; i < node.size(); ++i) {
    if (!is_integer(box_extent[i] * on.resolution()[i])) throw Error("box edge is not on the grid");
    if (Rational(node[i], on.resolution()[i]) >= box_extent[i]) return false;
  }
  return true;
}

std::vector<RationalLattice> intermediate_lattices(const RationalLattice& lattice, const RationalLattice& ambient,
                                                   std::size_t guard) {
  if (!sublattice_of(lattice, ambient)) throw Error("not a sublattice");
  if (index(lattice, ambient) > guard) throw GuardExceeded("index exceeds the enumeration guard");
  const auto elements = quotient_cosets(ambient, lattice, guard).representatives;
  std::set<RationalLattice> seen{lattice};
  std::deque<RationalLattice> queue{lattice};
  while (!queue.empty()) {
    const RationalLattice cur = queue.front();
    queue.pop_front();
    for (const auto& g : elements) {
      if (cur.contains(g)) continue;
      RationalLattice next = join(cur, std::span<const RationalVector>(&g, 1));
      if (seen.insert(next).second) queue.push_back(std::move(next));
    }
  }
  std::vector<RationalLattice> out(seen.begin(), seen.end());
  std::stable_sort(out.begin(), out.end(), [](const RationalLattice& a, const RationalLattice& b) {
    if (a.covolume() != b.covolume()) return a.covolume() > b.covolume();
    return a < b;
  });
  return out;
}

}  // namespace gabinv

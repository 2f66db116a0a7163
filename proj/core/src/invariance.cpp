#include "gabinv/invariance.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace gabinv {

namespace {

constexpr std::size_t kUnset = std::numeric_limits<std::size_t>::max();

Node add(const Node& a, const Node& b) {
  Node out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
  return out;
}

RationalVector add(const RationalVector& a, const RationalVector& b) {
  RationalVector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
  return out;
}

void check_chain(const RationalLattice& lattice, const RationalLattice& tilde) {
  if (lattice.dim() != tilde.dim() || lattice.dim() % 2 != 0) throw Error("lattices must share an even dimension");
  if (!sublattice_of(lattice, tilde)) throw Error("lattice chain violated: lambda is not inside lambda-tilde");
  if (!sublattice_of(tilde, RationalLattice::integer(tilde.dim())))
    throw Error("lattice chain violated: lambda-tilde is not inside the integer lattice");
}

std::vector<Node> grid_offsets(const RationalLattice& adj, const GridShape& grid) {
  if (!grid_refines(grid, adj)) throw Error("grid too coarse for the adjoint lattice");
  std::vector<Node> out;
  for (const auto& p : points_in_unit_cell(adj)) out.push_back(grid.to_grid(p));
  return out;
}

Node grid_shift(const RationalVector& ab, const GridShape& grid) {
  const std::size_t d = grid.rank() / 2;
  Node out(grid.rank());
  for (std::size_t i = 0; i < d; ++i) {
    out[i] = to_int64(ab[i] * grid.resolution()[i]);
    out[d + i] = to_int64(ab[d + i] * grid.resolution()[d + i]);
  }
  return out;
}

}  // namespace

std::vector<bool> MaskFamily::mask(std::size_t ell) const {
  std::vector<bool> out(label.size());
  for (std::size_t i = 0; i < label.size(); ++i) out[i] = label[i] == ell;
  return out;
}

MaskFamily build_masks(const CosetPartition& cosets, const FundamentalDomain& domain, const GridShape& grid) {
  if (!(domain.lattice == cosets.superlattice)) throw Error("fundamental domain belongs to a different lattice");
  MaskFamily fam{cosets, domain, grid, std::vector<std::size_t>(grid.size(), kUnset), {}, {}};
  fam.offsets = grid_offsets(cosets.superlattice, grid);
  for (const auto& p : fam.offsets) fam.offset_label.push_back(cosets.coset_of(grid.to_point(p)));
  for (const auto& dnode : domain.nodes(grid))
    for (std::size_t k = 0; k < fam.offsets.size(); ++k) {
      const std::size_t f = grid.wrapped_flat(add(dnode, fam.offsets[k]));
      if (fam.label[f] != kUnset) throw Error("masks overlap; the domain does not tile");
      fam.label[f] = fam.offset_label[k];
    }
  if (std::find(fam.label.begin(), fam.label.end(), kUnset) != fam.label.end())
    throw Error("masks do not cover the cell; the domain does not tile");
  return fam;
}

MaskFamily build_masks(const RationalLattice& lattice, const RationalLattice& tilde, const GridShape& grid) {
  check_chain(lattice, tilde);
  const auto adj = adjoint(lattice);
  return build_masks(quotient_cosets(adj, adjoint(tilde)), fundamental_domain(adj, grid), grid);
}

ConditionReport condition_d(const ZakGrid& zphi, const RationalLattice& lattice, const RationalLattice& tilde,
                            double tau) {
  check_chain(lattice, tilde);
  if (zphi.shape().rank() != lattice.dim()) throw Error("grid and lattice dimensions differ");
  const auto& grid = zphi.shape();
  const auto adj = adjoint(lattice);
  const auto cosets = quotient_cosets(adj, adjoint(tilde));
  const auto offsets = grid_offsets(adj, grid);
  std::vector<std::size_t> labels;
  for (const auto& p : offsets) labels.push_back(cosets.coset_of(grid.to_point(p)));

  const double mx = zphi.max_abs();
  const double thr = tau * mx;
  const double energy_thr = tau * tau * mx * mx;
  std::vector<bool> nonzero(grid.size());
  for (std::size_t f = 0; f < grid.size(); ++f) nonzero[f] = std::abs(zphi[f]) > thr && zphi[f] != Complex{};

  ConditionReport rep;
  rep.order = cosets.order;
  rep.coset_energies.assign(grid.size() * cosets.order, 0.0);
  bool energy_ok = true;
  for (std::size_t f = 0; f < grid.size(); ++f) {
    const Node y = grid.node(f);
    std::vector<double> energy(cosets.order, 0.0);
    for (std::size_t k = 0; k < offsets.size(); ++k) {
      const std::size_t g = grid.wrapped_flat(add(y, offsets[k]));
      energy[labels[k]] += std::norm(zphi[g]);
      if (nonzero[f] && labels[k] != 0 && nonzero[g])
        rep.witnesses.push_back({y, offsets[k], std::abs(zphi[f]), std::abs(zphi[g])});
    }
    std::size_t live = 0;
    for (std::size_t ell = 0; ell < cosets.order; ++ell) {
      rep.coset_energies[f * cosets.order + ell] = energy[ell];
      if (energy[ell] > energy_thr && energy[ell] > 0) ++live;
    }
    rep.max_nonzero_cosets = std::max(rep.max_nonzero_cosets, live);
    if (live > 1) energy_ok = false;
  }
  rep.holds = rep.witnesses.empty();
  rep.energy_holds = energy_ok;
  rep.forms_agree = rep.holds == rep.energy_holds;
  return rep;
}

Decomposition decompose(const ComplexVector& f, const FiniteGaborModel& model, const RationalLattice& tilde, double tol) {
  const auto& s = model.split();
  const GridShape grid({s.N, s.M});
  const auto fam = build_masks(model.continuous_lattice(), tilde, grid);
  const ZakGrid zf = finite_zak(f, s, model.tau());
  Decomposition out;
  double total = 0;
  for (std::size_t ell = 0; ell < fam.order(); ++ell) {
    ZakGrid part = zf;
    for (std::size_t i = 0; i < part.size(); ++i)
      if (fam.label[i] != ell) part[i] = Complex{};
    out.components.push_back(inverse_finite_zak(part));
    out.norms.push_back(norm(out.components.back()));
    total += out.norms.back() * out.norms.back();
  }
  const double fn = norm(f);
  out.parseval_error = std::abs(total - fn * fn);
  for (std::size_t a = 0; a < out.components.size(); ++a)
    for (std::size_t b = a + 1; b < out.components.size(); ++b) {
      Complex ip{};
      for (std::size_t i = 0; i < f.size(); ++i) ip += out.components[a][i] * std::conj(out.components[b][i]);
      out.max_cross = std::max(out.max_cross, std::abs(ip));
    }
  out.invariant_pattern = condition_d(model.window_zak(), model.continuous_lattice(), tilde, model.tau()).holds;
  if (out.invariant_pattern)
    for (const auto& c : out.components) out.members.push_back(membership(c, model, tol).residual <= tol * fn);
  return out;
}

ZakGrid multiplier_coset(const MaskFamily& masks, std::size_t ell, const RationalVector& ab) {
  if (ell >= masks.order()) throw Error("coset index out of range");
  const auto tilde = adjoint(masks.cosets.sublattice);
  if (!tilde.contains(ab)) throw Error("(a,b) is not in lambda-tilde");
  const auto& grid = masks.grid;
  const auto m_tilde = static_cast<double>(points_in_unit_cell(masks.cosets.sublattice).size());
  std::vector<RationalVector> offset_points;
  for (const auto& p : masks.offsets) offset_points.push_back(grid.to_point(p));
  ComplexVector values(grid.size());
  for (std::size_t f = 0; f < grid.size(); ++f) {
    const Node y = grid.node(f);
    const RationalVector yp = grid.to_point(y);
    Complex acc{};
    for (std::size_t k = 0; k < masks.offsets.size(); ++k) {
      if (masks.label[grid.wrapped_flat(add(y, masks.offsets[k]))] != ell) continue;
      acc += unit_phase(symplectic_pairing(ab, add(yp, offset_points[k])));
    }
    values[f] = acc / m_tilde;
  }
  return ZakGrid(grid, std::move(values));
}

PatternMultiplier multiplier_from_pattern(const ZakGrid& zphi, const RationalLattice& lattice,
                                          const RationalLattice& tilde, const RationalVector& ab, double tau) {
  if (!condition_d(zphi, lattice, tilde, tau).holds) throw Error("not invariant; no multiplier exists");
  if (!tilde.contains(ab)) throw Error("(a,b) is not in lambda-tilde");
  const auto& grid = zphi.shape();
  const auto adj = adjoint(lattice);
  const auto offsets = grid_offsets(adj, grid);
  const auto domain = fundamental_domain(adj, grid);
  const double thr = tau * zphi.max_abs();
  PatternMultiplier out{ZakGrid::zeros_like(zphi), 0.0};
  for (const auto& y0 : domain.nodes(grid)) {
    std::vector<std::size_t> orbit;
    std::optional<std::size_t> live;
    for (std::size_t k = 0; k < offsets.size(); ++k) {
      const std::size_t g = grid.wrapped_flat(add(y0, offsets[k]));
      orbit.push_back(g);
      if (!live && std::abs(zphi[g]) > thr && zphi[g] != Complex{}) live = k;
    }
    if (!live) continue;
    const Complex value = unit_phase(symplectic_pairing(ab, grid.to_point(add(y0, offsets[*live]))));
    for (auto g : orbit) out.h[g] = value;
  }
  const ZakGrid shifted = zak_shift_image(zphi, grid_shift(ab, grid));
  for (std::size_t f = 0; f < grid.size(); ++f)
    out.certificate_residual = std::max(out.certificate_residual, std::abs(shifted[f] - out.h[f] * zphi[f]));
  return out;
}

OracleResult brute_force_invariant(const FiniteGaborModel& model, const SubspaceBasis& basis, const Node& ab, double tol) {
  if (ab.size() != 2) throw Error("finite shifts are pairs (a,b)");
  if (basis.columns.rows() != model.split().L) throw Error("basis length does not match L");
  OracleResult out;
  out.rank = basis.rank;
  for (Eigen::Index c = 0; c < basis.columns.cols(); ++c) {
    const Eigen::VectorXcd w = to_eigen(tf_shift(to_std(basis.columns.col(c)), ab[0], ab[1]));
    const Eigen::VectorXcd r = w - basis.columns * (basis.columns.adjoint() * w);
    out.max_residual = std::max(out.max_residual, r.norm());
  }
  out.invariant = out.max_residual <= tol;
  return out;
}

OracleResult brute_force_invariant(const FiniteGaborModel& model, const Node& ab, double tol) {
  return brute_force_invariant(model, space_basis(gabor_matrix(model)), ab, tol);
}

OracleResult brute_force_lattice_invariant(const FiniteGaborModel& model, const SubspaceBasis& basis,
                                           const RationalLattice& tilde, double tol) {
  if (tilde.dim() != 2) throw Error("finite oracle needs a two-dimensional lattice");
  const auto& s = model.split();
  OracleResult out;
  out.rank = basis.rank;
  out.invariant = true;
  for (std::size_t j = 0; j < 2; ++j) {
    const auto c = tilde.column(j);
    const Node ab{to_int64(c[0] * s.N), to_int64(c[1] * s.M)};
    const auto r = brute_force_invariant(model, basis, ab, tol);
    out.max_residual = std::max(out.max_residual, r.max_residual);
    out.invariant = out.invariant && r.invariant;
  }
  return out;
}

IntegerInvariance integer_invariance(const ZakGrid& zphi, const RationalLattice& lattice, double tau) {
  check_chain(lattice, lattice);
  const auto& grid = zphi.shape();
  const auto adj = adjoint(lattice);
  const auto offsets = grid_offsets(adj, grid);
  const auto domain = fundamental_domain(adj, grid);
  const double thr = tau * zphi.max_abs();
  const auto nonzero = [&](std::size_t g) { return std::abs(zphi[g]) > thr && zphi[g] != Complex{}; };
  IntegerInvariance out;
  out.invariant = true;
  out.riesz_basis = true;
  for (const auto& y0 : domain.nodes(grid)) {
    std::vector<Node> live;
    for (const auto& p : offsets) {
      const Node z = grid.wrap(add(y0, p));
      const std::size_t g = grid.flat(z);
      if (nonzero(g)) live.push_back(z);
    }
    if (live.empty()) out.riesz_basis = false;
    if (live.size() == 1) out.domain.push_back(live.front());
    if (live.size() > 1) {
      out.invariant = false;
      if (!out.witness) out.witness = std::make_pair(live[0], live[1]);
    }
  }
  std::sort(out.domain.begin(), out.domain.end());
  out.exactly_one = out.invariant && out.riesz_basis;
  return out;
}

ShiftMode parse_shift_mode(const std::string& text) {
  if (text == "translation") return ShiftMode::translation;
  if (text == "modulation") return ShiftMode::modulation;
  if (text == "all") return ShiftMode::all;
  throw Error("invalid shift mode '" + text + "'");
}

FullShiftInvariance full_shift_invariance(const ZakGrid& zphi, ShiftMode mode, double tau) {
  const auto& grid = zphi.shape();
  const std::size_t d = zphi.dim();
  std::size_t xs = 1, ws = 1;
  for (std::size_t i = 0; i < d; ++i) {
    xs *= static_cast<std::size_t>(grid.resolution()[i]);
    ws *= static_cast<std::size_t>(grid.resolution()[d + i]);
  }
  const double thr = tau * zphi.max_abs();
  const auto nonzero = [&](std::size_t x, std::size_t w) {
    const Complex v = zphi[x * ws + w];
    return std::abs(v) > thr && v != Complex{};
  };
  FullShiftInvariance out;
  out.invariant = true;
  if (mode == ShiftMode::all) {
    const bool first = nonzero(0, 0);
    for (std::size_t f = 0; f < grid.size(); ++f)
      if (nonzero(f / ws, f % ws) != first) {
        out.invariant = false;
        out.witness = f;
        break;
      }
    if (out.invariant && first)
      for (std::size_t f = 0; f < grid.size(); ++f) out.rows.push_back(f);
    return out;
  }
  const bool by_frequency = mode == ShiftMode::translation;
  const std::size_t rows = by_frequency ? ws : xs;
  const std::size_t cols = by_frequency ? xs : ws;
  for (std::size_t r = 0; r < rows; ++r) {
    const auto at = [&](std::size_t c) { return by_frequency ? nonzero(c, r) : nonzero(r, c); };
    const bool first = at(0);
    bool mixed = false;
    for (std::size_t c = 1; c < cols && !mixed; ++c) mixed = at(c) != first;
    if (mixed) {
      out.invariant = false;
      if (!out.witness) out.witness = r;
    } else if (first) {
      out.rows.push_back(r);
    }
  }
  return out;
}

InvarianceSet invariance_set(const ZakGrid& zphi, const RationalLattice& lattice, const RationalLattice& ambient,
                             double tau, const OracleFn& oracle, std::size_t guard) {
  InvarianceSet out;
  std::vector<RationalVector> generators;
  for (const auto& tilde : intermediate_lattices(lattice, ambient, guard)) {
    InvarianceRow row{tilde, condition_d(zphi, lattice, tilde, tau).holds, std::nullopt};
    if (oracle) row.oracle = oracle(tilde);
    if (row.condition_d)
      for (std::size_t j = 0; j < tilde.dim(); ++j) generators.push_back(tilde.column(j));
    out.rows.push_back(std::move(row));
  }
  out.maximal = join(lattice, generators);
  out.maximal_verified = condition_d(zphi, lattice, out.maximal, tau).holds;
  if (oracle) out.maximal_verified = out.maximal_verified && oracle(out.maximal);
  return out;
}

}  // namespace gabinv

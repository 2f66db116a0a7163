#include "gabinv/finite_gabor.hpp"

#include <algorithm>
#include <cmath>

namespace gabinv {

FiniteGaborModel::FiniteGaborModel(const ZakSplit& split, const RationalLattice& lattice, ComplexVector window, double tau)
    : split_(split), window_(std::move(window)), tau_(tau) {
  if (lattice.dim() != 2) throw Error("finite Gabor model needs a lattice in dimension 2");
  if (static_cast<std::int64_t>(window_.size()) != split.L) throw Error("window length does not match L");
  for (std::size_t j = 0; j < 2; ++j) {
    const auto c = lattice.column(j);
    if (!is_integer(c[0]) || !is_integer(c[1])) throw Error("finite lattice must be integral");
    if (!is_integer(c[0] / split.N) || !is_integer(c[1] / split.M))
      throw Error("finite lattice must lie in N Z x M Z");
  }
  const RationalVector period_u{split.L, 0}, period_eta{0, split.L};
  const std::vector<RationalVector> periods{period_u, period_eta};
  lattice_ = join(lattice, periods);
  continuous_ = lattice_.scaled({Rational(1, split.N), Rational(1, split.M)});
  const auto adj = adjoint(continuous_);
  adjoint_grid_ = adj.scaled({split.N, split.M});
  const GridShape cell({split.N, split.M});
  for (const auto& p : points_in_unit_cell(adj)) adjoint_offsets_.push_back(cell.to_grid(p));
  const auto ambient = RationalLattice::diagonal({split.L, split.L});
  for (const auto& rep : quotient_cosets(lattice_, ambient, static_cast<std::size_t>(split.L * split.L)).representatives)
    elements_.push_back({to_int64(rep[0]), to_int64(rep[1])});
  window_zak_ = finite_zak(window_, split_, tau_);
}

ComplexVector tf_shift(const ComplexVector& f, std::int64_t u, std::int64_t eta) {
  const auto L = static_cast<std::int64_t>(f.size());
  ComplexVector out(f.size());
  for (std::int64_t x = 0; x < L; ++x) {
    const std::int64_t src = ((x - u) % L + L) % L;
    out[static_cast<std::size_t>(x)] = unit_phase(eta * x, L) * f[static_cast<std::size_t>(src)];
  }
  return out;
}

Eigen::MatrixXcd gabor_matrix(const FiniteGaborModel& model) {
  const auto& el = model.elements();
  Eigen::MatrixXcd g(model.split().L, static_cast<Eigen::Index>(el.size()));
  for (std::size_t c = 0; c < el.size(); ++c) g.col(static_cast<Eigen::Index>(c)) = to_eigen(tf_shift(model.window(), el[c][0], el[c][1]));
  return g;
}

SubspaceBasis space_basis(const Eigen::MatrixXcd& matrix, double tol) {
  if (!(tol > 0)) throw Error("rank tolerance must be positive");
  SubspaceBasis out;
  out.tolerance = tol;
  if (matrix.cols() == 0) {
    out.columns = Eigen::MatrixXcd(matrix.rows(), 0);
    return out;
  }
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(matrix, Eigen::ComputeThinU);
  const auto& s = svd.singularValues();
  const double smax = s.size() ? s(0) : 0.0;
  std::size_t rank = 0;
  if (smax > 0)
    for (Eigen::Index i = 0; i < s.size(); ++i)
      if (s(i) > tol * smax) ++rank;
  out.rank = rank;
  out.columns = svd.matrixU().leftCols(static_cast<Eigen::Index>(rank));
  return out;
}

ComplexVector gram_projection(const SubspaceBasis& basis, const ComplexVector& f) {
  const Eigen::VectorXcd v = to_eigen(f);
  return to_std(basis.columns * (basis.columns.adjoint() * v));
}

ZakGrid bracket(const ZakGrid& zf, const ZakGrid& zg, const std::vector<Node>& offsets) {
  if (!(zf.shape() == zg.shape())) throw Error("bracket of grids with different resolutions");
  if (zf.split() != zg.split()) throw Error("bracket of grids with different splits");
  const auto& shape = zf.shape();
  ZakGrid out = ZakGrid::zeros_like(zf);
  Node y(shape.rank());
  for (std::size_t f = 0; f < shape.size(); ++f) {
    const Node base = shape.node(f);
    Complex acc{};
    for (const auto& p : offsets) {
      for (std::size_t i = 0; i < y.size(); ++i) y[i] = base[i] + p[i];
      const std::size_t g = shape.wrapped_flat(y);
      // The quasi-periodic phases of the two factors cancel.
      acc += zf[g] * std::conj(zg[g]);
    }
    out[f] = acc;
  }
  return out;
}

ZakGrid bracket(const ComplexVector& f, const ComplexVector& g, const FiniteGaborModel& model) {
  return bracket(finite_zak(f, model.split(), model.tau()), finite_zak(g, model.split(), model.tau()), model.adjoint_offsets());
}

std::vector<bool> bracket_support(const ZakGrid& phi_bracket, double tau) {
  double mx = 0;
  for (const auto& v : phi_bracket.values()) mx = std::max(mx, v.real());
  std::vector<bool> out(phi_bracket.size(), false);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = phi_bracket[i].real() > tau * tau * mx && phi_bracket[i].real() > 0;
  return out;
}

ZakGrid projection_multiplier(const ComplexVector& f, const FiniteGaborModel& model) {
  const ZakGrid zf = finite_zak(f, model.split(), model.tau());
  const auto& zphi = model.window_zak();
  const ZakGrid pp = bracket(zphi, zphi, model.adjoint_offsets());
  const ZakGrid fp = bracket(zf, zphi, model.adjoint_offsets());
  const auto supp = bracket_support(pp, model.tau());
  ZakGrid h = ZakGrid::zeros_like(zf);
  for (std::size_t i = 0; i < h.size(); ++i)
    if (supp[i]) h[i] = fp[i] / pp[i].real();
  return h;
}

ComplexVector project(const ComplexVector& f, const FiniteGaborModel& model) {
  const ZakGrid h = projection_multiplier(f, model);
  ZakGrid z = model.window_zak();
  for (std::size_t i = 0; i < z.size(); ++i) z[i] *= h[i];
  return inverse_finite_zak(z);
}

MembershipResult membership(const ComplexVector& f, const FiniteGaborModel& model, double tol) {
  MembershipResult out;
  const ZakGrid h = projection_multiplier(f, model);
  ZakGrid z = model.window_zak();
  for (std::size_t i = 0; i < z.size(); ++i) z[i] *= h[i];
  const ComplexVector pf = inverse_finite_zak(z);
  ComplexVector diff(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) diff[i] = f[i] - pf[i];
  out.residual = norm(diff);
  out.member = out.residual <= tol * norm(f);
  if (out.member) out.multiplier = h;
  return out;
}

FrameBounds riesz_frame_bounds(const FiniteGaborModel& model) {
  const auto& zphi = model.window_zak();
  const ZakGrid pp = bracket(zphi, zphi, model.adjoint_offsets());
  const double m = static_cast<double>(model.adjoint_offsets().size());
  FrameBounds b;
  b.A = pp[0].real();
  b.B = pp[0].real();
  for (const auto& v : pp.values()) {
    b.A = std::min(b.A, v.real());
    b.B = std::max(b.B, v.real());
  }
  b.A /= m;
  b.B /= m;
  b.is_riesz_basis = b.A > model.tau() * model.tau();
  return b;
}

ComplexVector to_std(const Eigen::VectorXcd& v) { return ComplexVector(v.data(), v.data() + v.size()); }

Eigen::VectorXcd to_eigen(const ComplexVector& v) {
  Eigen::VectorXcd out(static_cast<Eigen::Index>(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i) out(static_cast<Eigen::Index>(i)) = v[i];
  return out;
}

}  // namespace gabinv

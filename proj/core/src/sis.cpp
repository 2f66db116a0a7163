#include "gabinv/sis.hpp"

#include <cmath>

namespace gabinv {

FiniteSISModel::FiniteSISModel(std::int64_t L_, std::int64_t p_, ComplexVector g) : L(L_), p(p_), generator(std::move(g)) {
  if (L <= 0 || p <= 0 || L % p != 0) throw Error("shift step must divide L");
  if (static_cast<std::int64_t>(generator.size()) != L) throw Error("generator length does not match L");
}

namespace {

ComplexVector dft_sign(const ComplexVector& f, int sign) {
  const auto L = static_cast<std::int64_t>(f.size());
  const double scale = 1.0 / std::sqrt(static_cast<double>(L));
  ComplexVector out(f.size());
  for (std::int64_t k = 0; k < L; ++k) {
    Complex acc{};
    for (std::int64_t x = 0; x < L; ++x) acc += f[static_cast<std::size_t>(x)] * unit_phase(sign * ((x * k) % L), L);
    out[static_cast<std::size_t>(k)] = acc * scale;
  }
  return out;
}

std::vector<bool> nonzero_pattern(const ComplexVector& v, double tau) {
  double mx = 0;
  for (const auto& z : v) mx = std::max(mx, std::abs(z));
  std::vector<bool> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = std::abs(v[i]) > tau * mx && v[i] != Complex{};
  return out;
}

}  // namespace

ComplexVector dft(const ComplexVector& f) { return dft_sign(f, -1); }
ComplexVector inverse_dft(const ComplexVector& fhat) { return dft_sign(fhat, 1); }

SISMembership sis_membership(const ComplexVector& f, const FiniteSISModel& model, double tol) {
  if (static_cast<std::int64_t>(f.size()) != model.L) throw Error("vector length does not match L");
  const ComplexVector fh = dft(f), ph = dft(model.generator);
  const std::int64_t q = model.annihilator_step();
  SISMembership out;
  out.symbol.assign(f.size(), Complex{});
  double pp_max = 0;
  std::vector<double> pp(static_cast<std::size_t>(q), 0.0);
  std::vector<Complex> fp(static_cast<std::size_t>(q));
  for (std::int64_t xi = 0; xi < model.L; ++xi) {
    const auto o = static_cast<std::size_t>(xi % q);
    pp[o] += std::norm(ph[static_cast<std::size_t>(xi)]);
    fp[o] += fh[static_cast<std::size_t>(xi)] * std::conj(ph[static_cast<std::size_t>(xi)]);
  }
  for (double v : pp) pp_max = std::max(pp_max, v);
  ComplexVector proj(f.size());
  for (std::int64_t xi = 0; xi < model.L; ++xi) {
    const auto o = static_cast<std::size_t>(xi % q);
    if (pp[o] > 0 && pp[o] > kDefaultZeroTolerance * kDefaultZeroTolerance * pp_max) {
      out.symbol[static_cast<std::size_t>(xi)] = fp[o] / pp[o];
      proj[static_cast<std::size_t>(xi)] = out.symbol[static_cast<std::size_t>(xi)] * ph[static_cast<std::size_t>(xi)];
    }
  }
  ComplexVector diff(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) diff[i] = fh[i] - proj[i];
  out.residual = norm(diff);
  out.member = out.residual <= tol * norm(f);
  return out;
}

SISCondition sis_condition_d(const ComplexVector& phi_hat, std::int64_t p, std::int64_t p_tilde, double tau) {
  const auto L = static_cast<std::int64_t>(phi_hat.size());
  if (p <= 0 || L % p != 0) throw Error("shift step must divide L");
  if (p_tilde <= 0 || p % p_tilde != 0) throw Error("finer shift step must divide the shift step");
  const std::int64_t q = L / p;
  const std::int64_t classes = p / p_tilde;
  const auto nz = nonzero_pattern(phi_hat, tau);
  double mx = 0;
  for (const auto& z : phi_hat) mx = std::max(mx, std::abs(z));
  SISCondition out;
  bool energy_ok = true;
  for (std::int64_t xi = 0; xi < L; ++xi) {
    std::vector<double> energy(static_cast<std::size_t>(classes), 0.0);
    for (std::int64_t j = 0; j < p; ++j) {
      const auto other = static_cast<std::size_t>((xi + j * q) % L);
      energy[static_cast<std::size_t>(j % classes)] += std::norm(phi_hat[other]);
      if (nz[static_cast<std::size_t>(xi)] && j % classes != 0 && nz[other]) out.witnesses.push_back({xi, j * q});
    }
    int live = 0;
    for (double e : energy) live += (e > tau * tau * mx * mx && e > 0) ? 1 : 0;
    if (live > 1) energy_ok = false;
  }
  out.holds = out.witnesses.empty();
  out.energy_holds = energy_ok;
  out.forms_agree = out.holds == out.energy_holds;
  return out;
}

bool sis_full_translation(const ComplexVector& phi_hat, std::int64_t p, double tau) {
  return sis_condition_d(phi_hat, p, 1, tau).holds;
}

OracleResult sis_brute_force_invariant(const FiniteSISModel& model, std::int64_t p_tilde, double tol) {
  const std::int64_t count = model.L / model.p;
  Eigen::MatrixXcd span(model.L, count);
  for (std::int64_t k = 0; k < count; ++k) span.col(k) = to_eigen(tf_shift(model.generator, k * model.p, 0));
  const SubspaceBasis basis = space_basis(span);
  OracleResult out;
  out.rank = basis.rank;
  for (Eigen::Index c = 0; c < basis.columns.cols(); ++c) {
    const Eigen::VectorXcd w = to_eigen(tf_shift(to_std(basis.columns.col(c)), p_tilde, 0));
    const Eigen::VectorXcd r = w - basis.columns * (basis.columns.adjoint() * w);
    out.max_residual = std::max(out.max_residual, r.norm());
  }
  out.invariant = out.max_residual <= tol;
  return out;
}

}  // namespace gabinv

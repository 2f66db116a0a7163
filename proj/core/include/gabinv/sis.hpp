#pragma once

#include <cstdint>
#include <vector>

#include "gabinv/finite_gabor.hpp"
#include "gabinv/invariance.hpp"
#include "gabinv/zak.hpp"

namespace gabinv {

/// Shift-invariant space on C^L spanned by the translates T_{kp} phi, p | L.
/// Frequencies use the unitary DFT; the annihilator of p Z_L is (L/p) Z_L.
struct FiniteSISModel {
  std::int64_t L = 0;
  std::int64_t p = 1;
  ComplexVector generator;

  FiniteSISModel(std::int64_t L, std::int64_t p, ComplexVector generator);
  std::int64_t annihilator_step() const noexcept { return L / p; }
};

ComplexVector dft(const ComplexVector& f);
ComplexVector inverse_dft(const ComplexVector& fhat);

struct SISMembership {
  bool member = false;
  double residual = 0;
  ComplexVector symbol;  // per frequency, periodic over the annihilator; zero on dead orbits
};

SISMembership sis_membership(const ComplexVector& f, const FiniteSISModel& model, double tol = 1e-9);

struct SISWitness {
  std::int64_t frequency = 0;
  std::int64_t offset = 0;
};

struct SISCondition {
  bool holds = false;
  bool energy_holds = false;
  bool forms_agree = false;
  std::vector<SISWitness> witnesses;
};

/// Invariance of S(phi, pZ_L) under the finer shifts p_tilde Z_L (p_tilde | p):
/// phi_hat(xi) != 0 forces phi_hat(xi + r) = 0 for r in (L/p)Z_L outside (L/p_tilde)Z_L.
SISCondition sis_condition_d(const ComplexVector& phi_hat, std::int64_t p, std::int64_t p_tilde,
                             double tau = kDefaultZeroTolerance);

/// Invariance under every translation: at most one nonzero per annihilator orbit.
bool sis_full_translation(const ComplexVector& phi_hat, std::int64_t p, double tau = kDefaultZeroTolerance);

/// Span test: every basis vector of S(phi, pZ_L) stays in the span after T_{p_tilde}.
OracleResult sis_brute_force_invariant(const FiniteSISModel& model, std::int64_t p_tilde, double tol = 1e-9);

}  // namespace gabinv

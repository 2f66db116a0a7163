#include "gabinv/sis.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

using namespace gabinv;

namespace {

ComplexVector random_vector(std::mt19937_64& rng, std::size_t n) {
  std::normal_distribution<double> g;
  ComplexVector v(n);
  for (auto& z : v) z = {g(rng), g(rng)};
  return v;
}

// Dense oracle: residual of f against the span of the p-translates of phi.
double span_residual(const ComplexVector& f, const ComplexVector& phi, std::int64_t p) {
  const auto L = static_cast<std::int64_t>(phi.size());
  Eigen::MatrixXcd a(L, L / p);
  for (std::int64_t k = 0; k < L / p; ++k) a.col(k) = to_eigen(tf_shift(phi, k * p, 0));
  const auto b = space_basis(a);
  const Eigen::VectorXcd v = to_eigen(f);
  return (v - b.columns * (b.columns.adjoint() * v)).norm();
}

std::vector<std::int64_t> divisors(std::int64_t n) {
  std::vector<std::int64_t> out;
  for (std::int64_t d = 1; d <= n; ++d)
    if (n % d == 0) out.push_back(d);
  return out;
}

}  // namespace

TEST(Dft, UnitaryAndInverse) {
  std::mt19937_64 rng(1);
  const auto f = random_vector(rng, 24);
  const auto fh = dft(f);
  EXPECT_NEAR(norm(fh), norm(f), 1e-12);
  const auto back = inverse_dft(fh);
  for (std::size_t i = 0; i < f.size(); ++i) EXPECT_LT(std::abs(back[i] - f[i]), 1e-12);
  ComplexVector delta(8);
  delta[0] = 1;
  for (const auto& v : dft(delta)) EXPECT_LT(std::abs(v - Complex(1 / std::sqrt(8.0))), 1e-15);
}

TEST(SisModel, Validation) {
  EXPECT_THROW(FiniteSISModel(12, 5, ComplexVector(12)), Error);
  EXPECT_THROW(FiniteSISModel(12, 4, ComplexVector(8)), Error);
  EXPECT_EQ(FiniteSISModel(12, 4, ComplexVector(12)).annihilator_step(), 3);
}

TEST(SisMembership, TranslateHasShiftSymbol) {
  std::mt19937_64 rng(2);
  const std::int64_t L = 24, p = 4;
  const FiniteSISModel m(L, p, random_vector(rng, L));
  const auto r = sis_membership(tf_shift(m.generator, p, 0), m);
  EXPECT_TRUE(r.member);
  for (std::int64_t xi = 0; xi < L; ++xi)
    EXPECT_LT(std::abs(r.symbol[static_cast<std::size_t>(xi)] -
                       std::polar(1.0, -2 * std::numbers::pi * static_cast<double>(p * xi) / L)),
              1e-10);
}

TEST(SisMembership, ComplementAndFlatGenerator) {
  std::mt19937_64 rng(3);
  const std::int64_t L = 16, p = 4;
  const FiniteSISModel m(L, p, random_vector(rng, L));
  // Build a vector orthogonal to the span with the dense oracle.
  Eigen::MatrixXcd a(L, L / p);
  for (std::int64_t k = 0; k < L / p; ++k) a.col(k) = to_eigen(tf_shift(m.generator, k * p, 0));
  const auto b = space_basis(a);
  const Eigen::VectorXcd v = to_eigen(random_vector(rng, L));
  const ComplexVector perp = to_std(v - b.columns * (b.columns.adjoint() * v));
  EXPECT_FALSE(sis_membership(perp, m).member);

  // Flat spectrum: members are exactly the vectors whose spectrum is constant on orbits.
  const FiniteSISModel flat(L, p, inverse_dft(ComplexVector(L, 1)));
  const std::int64_t q = L / p;
  ComplexVector spec(L);
  for (std::int64_t xi = 0; xi < L; ++xi) spec[static_cast<std::size_t>(xi)] = Complex(static_cast<double>(xi % q), 1);
  EXPECT_TRUE(sis_membership(inverse_dft(spec), flat).member);
  spec[5] += 1;
  EXPECT_FALSE(sis_membership(inverse_dft(spec), flat).member);
}

TEST(SisMembership, AgreesWithDenseSpanOracle) {
  std::mt19937_64 rng(4);
  std::bernoulli_distribution coin(0.5);
  for (std::int64_t L : {8, 16, 24, 32, 64}) {
    for (std::int64_t p : divisors(L)) {
      if (p == L) continue;
      ComplexVector phi = random_vector(rng, static_cast<std::size_t>(L));
      if (coin(rng)) {
        auto ph = dft(phi);
        for (auto& z : ph)
          if (coin(rng)) z = 0;
        phi = inverse_dft(ph);
      }
      const FiniteSISModel m(L, p, phi);
      for (int t = 0; t < 3; ++t) {
        const auto f = random_vector(rng, static_cast<std::size_t>(L));
        EXPECT_NEAR(sis_membership(f, m).residual, span_residual(f, phi, p), 1e-10) << "L=" << L << " p=" << p;
      }
    }
  }
}

TEST(SisCondition, Examples) {
  const std::int64_t L = 24, p = 6, pt = 2;
  // Band on the class j = 0 of every orbit: bins xi + j q with j = 0 mod 3.
  const std::int64_t q = L / p;
  ComplexVector band(L);
  for (std::int64_t j = 0; j < p; j += p / pt)
    for (std::int64_t r = 0; r < q; ++r) band[static_cast<std::size_t>(r + j * q)] = 1;
  EXPECT_TRUE(sis_condition_d(band, p, pt).holds);
  EXPECT_FALSE(sis_condition_d(ComplexVector(L, 1), p, pt).holds);
  EXPECT_FALSE(sis_condition_d(ComplexVector(L, 1), p, pt).witnesses.empty());
  EXPECT_TRUE(sis_condition_d(ComplexVector(L), p, pt).holds);
  EXPECT_THROW(sis_condition_d(band, 5, 1), Error);
  EXPECT_THROW(sis_condition_d(band, 6, 4), Error);
}

TEST(SisCondition, PaleyWienerBandIsFullyTranslationInvariant) {
  for (std::int64_t L : {16, 24, 32}) {
    for (std::int64_t p : divisors(L)) {
      const std::int64_t q = L / p;
      ComplexVector band(static_cast<std::size_t>(L));
      for (std::int64_t s = 0; s < q; ++s) band[static_cast<std::size_t>((s + 3) % L)] = 1;
      EXPECT_TRUE(sis_full_translation(band, p));
      const FiniteSISModel m(L, p, inverse_dft(band));
      EXPECT_TRUE(sis_brute_force_invariant(m, 1).invariant);
    }
  }
  ComplexVector two(16);
  two[1] = 1;
  two[1 + 4] = 1;
  EXPECT_FALSE(sis_full_translation(two, 4));
  EXPECT_TRUE(sis_full_translation(ComplexVector(16), 4));
}

TEST(SisCondition, MatchesBruteForceForAllSmallInstances) {
  std::mt19937_64 rng(5);
  std::bernoulli_distribution coin(0.3);
  std::size_t checked = 0;
  for (std::int64_t L = 2; L <= 32; ++L) {
    for (std::int64_t p : divisors(L)) {
      for (std::int64_t pt : divisors(p)) {
        for (int t = 0; t < 3; ++t) {
          ComplexVector ph(static_cast<std::size_t>(L));
          for (auto& z : ph)
            if (coin(rng)) z = std::polar(1.0, static_cast<double>(rng() % 628) / 100.0);
          const FiniteSISModel m(L, p, inverse_dft(ph));
          const auto c = sis_condition_d(dft(m.generator), p, pt);
          EXPECT_TRUE(c.forms_agree);
          ASSERT_EQ(c.holds, sis_brute_force_invariant(m, pt).invariant) << "L=" << L << " p=" << p << " pt=" << pt;
          ++checked;
        }
      }
    }
  }
  EXPECT_EQ(checked, 897u);
}

#include "gabinv/finite_gabor.hpp"
#include "gabinv/zak.hpp"

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

// Direct evaluation of the finite Zak sum with std::polar phases.
Complex direct_zak(const ComplexVector& f, std::int64_t N, std::int64_t M, std::int64_t x, std::int64_t w) {
  const auto L = static_cast<std::int64_t>(f.size());
  Complex acc{};
  for (std::int64_t k = 0; k < M; ++k)
    acc += f[static_cast<std::size_t>((x + k * N) % L)] *
           std::polar(1.0, -2 * std::numbers::pi * static_cast<double>(k * w) / static_cast<double>(M));
  return acc / std::sqrt(static_cast<double>(M));
}

double max_diff(const ComplexVector& a, const ComplexVector& b) {
  double m = 0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace

TEST(ZakSplit, RejectsNonDivisor) {
  EXPECT_THROW(ZakSplit::make(10, 3), Error);
  const auto s = ZakSplit::make(32, 4);
  EXPECT_EQ(s.M, 8);
}

TEST(FiniteZak, DeltaExample) {
  ComplexVector f{1, 0, 0, 0};
  const auto z = finite_zak(f, ZakSplit::make(4, 2));
  const double r = 1 / std::sqrt(2.0);
  EXPECT_NEAR(std::abs(z.at({0, 0}) - r), 0, 1e-15);
  EXPECT_NEAR(std::abs(z.at({0, 1}) - r), 0, 1e-15);
  EXPECT_EQ(z.at({1, 0}), Complex(0));
  EXPECT_EQ(z.at({1, 1}), Complex(0));
}

TEST(FiniteZak, MatchesDirectSum) {
  std::mt19937_64 rng(11);
  for (std::int64_t L : {8, 12, 16, 32}) {
    for (std::int64_t N = 1; N <= L; ++N) {
      if (L % N) continue;
      const auto f = random_vector(rng, static_cast<std::size_t>(L));
      const auto z = finite_zak(f, ZakSplit::make(L, N));
      for (std::int64_t x = 0; x < N; ++x)
        for (std::int64_t w = 0; w < L / N; ++w) EXPECT_LT(std::abs(z.at({x, w}) - direct_zak(f, N, L / N, x, w)), 1e-12);
    }
  }
}

TEST(FiniteZak, CombAndSingleSample) {
  const std::int64_t L = 24, N = 4;
  ComplexVector comb(L);
  for (std::int64_t k = 0; k < L / N; ++k) comb[static_cast<std::size_t>(k * N)] = 1;
  const auto zc = finite_zak(comb, ZakSplit::make(L, N));
  EXPECT_NEAR(std::abs(zc.at({0, 0})), std::sqrt(6.0), 1e-12);
  for (std::int64_t w = 1; w < L / N; ++w) EXPECT_NEAR(std::abs(zc.at({0, w})), 0, 1e-12);
  ComplexVector one(L);
  one[8] = std::polar(1.0, 1.1);
  const auto zo = finite_zak(one, ZakSplit::make(L, N));
  for (std::int64_t w = 0; w < L / N; ++w) EXPECT_NEAR(std::abs(zo.at({0, w})), 1 / std::sqrt(6.0), 1e-12);
}

TEST(FiniteZak, UnitaryAndRoundTrip) {
  std::mt19937_64 rng(3);
  for (std::int64_t L : {8, 16, 32, 64}) {
    for (int trial = 0; trial < 50; ++trial) {
      const std::int64_t N = (trial % 3 == 0) ? 1 : (trial % 3 == 1 ? 4 : L / 2);
      const auto f = random_vector(rng, static_cast<std::size_t>(L));
      const auto z = finite_zak(f, ZakSplit::make(L, N));
      EXPECT_NEAR(grid_norm(z), norm(f), 1e-12 * norm(f));
      EXPECT_LT(max_diff(inverse_finite_zak(z), f), 1e-12);
    }
  }
}

TEST(FiniteZak, InverseOfFiniteGridIsRightInverse) {
  std::mt19937_64 rng(5);
  const auto split = ZakSplit::make(16, 4);
  auto vals = random_vector(rng, 16);
  const auto g = ZakGrid::finite(split, vals);
  EXPECT_LT(max_diff(finite_zak(inverse_finite_zak(g), split).values(), vals), 1e-12);
}

TEST(FiniteZak, AllOnesInverse) {
  const auto split = ZakSplit::make(4, 2);
  const auto f = inverse_finite_zak(ZakGrid::finite(split, ComplexVector(4, 1)));
  const double r = std::sqrt(2.0);
  const ComplexVector expected{r, r, 0, 0};
  EXPECT_LT(max_diff(f, expected), 1e-15);
  EXPECT_LT(max_diff(finite_zak(f, split).values(), ComplexVector(4, 1)), 1e-15);
}

TEST(FiniteZak, LengthMismatchAndContinuousInverseRejected) {
  EXPECT_THROW(finite_zak(ComplexVector(5), ZakSplit::make(4, 2)), Error);
  const ZakGrid cont(GridShape({2, 2}), ComplexVector(4, 1));
  EXPECT_THROW(inverse_finite_zak(cont), Error);
}

TEST(Extend, ContinuousRules) {
  std::mt19937_64 rng(7);
  const std::int64_t P = 4, Q = 8;
  const ZakGrid g(GridShape({P, Q}), random_vector(rng, P * Q));
  for (std::int64_t x = 0; x < P; ++x)
    for (std::int64_t w = 0; w < Q; ++w) {
      const auto base = g.at({x, w});
      const double om = static_cast<double>(w) / static_cast<double>(Q);
      EXPECT_LT(std::abs(g.extend(Node{x + P, w}) - std::polar(1.0, 2 * std::numbers::pi * om) * base), 1e-14);
      EXPECT_EQ(g.extend(Node{x, w + Q}), base);
      EXPECT_LT(std::abs(g.extend(Node{x + 2 * P, w}) - std::polar(1.0, 4 * std::numbers::pi * om) * base), 1e-14);
      EXPECT_EQ(g.extend(Node{x, w}), base);
      const RationalVector pt{Rational(x, P) + 1, Rational(w, Q)};
      EXPECT_EQ(g.extend(pt), g.extend(Node{x + P, w}));
    }
  EXPECT_THROW(g.extend(RationalVector{Rational(1, 3), 0}), Error);
}

TEST(Extend, FiniteRule) {
  std::mt19937_64 rng(8);
  const auto split = ZakSplit::make(24, 4);
  const auto g = finite_zak(random_vector(rng, 24), split);
  for (std::int64_t x = 0; x < 4; ++x)
    for (std::int64_t w = 0; w < 6; ++w) {
      const double om = static_cast<double>(w) / 6.0;
      EXPECT_LT(std::abs(g.extend(Node{x + 4, w}) - std::polar(1.0, 2 * std::numbers::pi * om) * g.at({x, w})), 1e-14);
      EXPECT_EQ(g.extend(Node{x, w - 6}), g.at({x, w}));
    }
}

TEST(Extend, CocycleProperty) {
  std::mt19937_64 rng(9);
  const std::int64_t P = 3, Q = 5;
  const ZakGrid g(GridShape({P, Q}), random_vector(rng, P * Q));
  std::uniform_int_distribution<int> step(-3, 3);
  for (int t = 0; t < 200; ++t) {
    const std::int64_t x = t % P, w = (t / P) % Q;
    const std::int64_t k1 = step(rng), l1 = step(rng), k2 = step(rng), l2 = step(rng);
    // Extending by (k1,l1) from a base value, then by (k2,l2), versus the composed shift.
    const Complex direct = g.extend(Node{x + (k1 + k2) * P, w + (l1 + l2) * Q});
    const double om = static_cast<double>(w) / static_cast<double>(Q);
    const Complex first = std::polar(1.0, 2 * std::numbers::pi * static_cast<double>(k1) * om) * g.at({x, w});
    const Complex composed = std::polar(1.0, 2 * std::numbers::pi * static_cast<double>(k2) * om) * first;
    EXPECT_LT(std::abs(direct - composed), 1e-13);
  }
}

TEST(ZakShiftImage, ExhaustiveCovarianceSmallL) {
  std::mt19937_64 rng(13);
  for (std::int64_t L : {4, 6, 8, 12, 16}) {
    for (std::int64_t N : {std::int64_t{1}, std::int64_t{2}, L / 2, L}) {
      if (L % N) continue;
      const auto split = ZakSplit::make(L, N);
      const auto f = random_vector(rng, static_cast<std::size_t>(L));
      const auto zf = finite_zak(f, split);
      for (std::int64_t u = 0; u < L; ++u)
        for (std::int64_t e = 0; e < L; ++e) {
          const auto a = zak_shift_image(zf, {u, e});
          const auto b = finite_zak(tf_shift(f, u, e), split);
          ASSERT_LT(max_diff(a.values(), b.values()), 1e-12) << "L=" << L << " N=" << N << " u=" << u << " eta=" << e;
        }
    }
  }
}

TEST(ZakShiftImage, IntegerShiftsArePhases) {
  std::mt19937_64 rng(14);
  const auto split = ZakSplit::make(32, 4);
  const auto zf = finite_zak(random_vector(rng, 32), split);
  EXPECT_EQ(zak_shift_image(zf, {0, 0}).values(), zf.values());
  const auto tu = zak_shift_image(zf, {4, 0});
  const auto me = zak_shift_image(zf, {0, 8});
  for (std::int64_t x = 0; x < 4; ++x)
    for (std::int64_t w = 0; w < 8; ++w) {
      EXPECT_LT(std::abs(tu.at({x, w}) - std::polar(1.0, -2 * std::numbers::pi * w / 8.0) * zf.at({x, w})), 1e-13);
      EXPECT_LT(std::abs(me.at({x, w}) - std::polar(1.0, 2 * std::numbers::pi * x / 4.0) * zf.at({x, w})), 1e-13);
    }
}

TEST(AnalyticZak, IndicatorIsExactlyOne) {
  WindowSpec s;
  for (auto [P, Q] : {std::pair{1, 1}, {4, 8}, {7, 3}, {16, 16}}) {
    const auto g = analytic_zak(s, P, Q);
    for (const auto& v : g.values()) {
      EXPECT_EQ(v.real(), 1.0);
      EXPECT_EQ(v.imag(), 0.0);
    }
  }
  s.dim = 2;
  const auto g2 = analytic_zak(s, 2, 4);
  EXPECT_EQ(g2.size(), 2u * 2 * 4 * 4);
  for (const auto& v : g2.values()) EXPECT_EQ(v, Complex(1, 0));
}

TEST(AnalyticZak, GaussianTruncationStable) {
  WindowSpec s;
  s.kind = WindowSpec::Kind::gaussian;
  for (double sigma : {0.5, 1.0, 2.0}) {
    s.sigma = sigma;
    const std::int64_t K = gaussian_truncation(sigma);
    const auto g = analytic_zak(s, 8, 8);
    // Oracle: direct series with twice as many terms.
    for (std::int64_t x = 0; x < 8; ++x)
      for (std::int64_t w = 0; w < 8; ++w) {
        Complex acc{};
        for (std::int64_t k = -2 * K; k <= 2 * K; ++k)
          acc += gaussian_value(sigma, x / 8.0 + static_cast<double>(k)) * std::polar(1.0, -2 * std::numbers::pi * k * (w / 8.0));
        EXPECT_LT(std::abs(acc - g.at({x, w})), 1e-14);
      }
  }
  s.sigma = 1;
  const auto g = analytic_zak(s, 2, 2);
  EXPECT_LT(std::abs(g.at({1, 1})), std::abs(g.at({0, 0})));
}

TEST(AnalyticZak, GaussianZakIsUnitary) {
  WindowSpec s;
  s.kind = WindowSpec::Kind::gaussian;
  s.sigma = 1;
  const auto g = analytic_zak(s, 64, 64);
  // Riemann sum of |Z phi|^2 on the cell approximates ||phi||^2 = 1.
  double acc = 0;
  for (const auto& v : g.values()) acc += std::norm(v);
  EXPECT_NEAR(acc / (64.0 * 64.0), 1.0, 1e-9);
}

TEST(AnalyticZak, ExplicitPassesThrough) {
  std::mt19937_64 rng(15);
  WindowSpec s;
  s.kind = WindowSpec::Kind::explicit_zak;
  s.zak = ZakGrid(GridShape({4, 4}), random_vector(rng, 16));
  EXPECT_EQ(analytic_zak(s, 4, 4).values(), s.zak->values());
  EXPECT_THROW(analytic_zak(s, 8, 4), Error);
}

TEST(AnalyticZak, InvalidResolutionRejected) {
  WindowSpec s;
  EXPECT_THROW(analytic_zak(s, 0, 4), Error);
}

TEST(Rescale, IdentityAndGaussian) {
  WindowSpec g;
  g.kind = WindowSpec::Kind::gaussian;
  g.sigma = 2;
  const auto same = rescale(g, 1);
  EXPECT_EQ(same.sigma, 2);
  const auto r = rescale(g, 2);
  EXPECT_EQ(r.kind, WindowSpec::Kind::gaussian);
  EXPECT_DOUBLE_EQ(r.sigma, 1);
  // sqrt(alpha) phi(alpha t) equals the sigma/alpha gaussian pointwise.
  for (double t : {-1.3, 0.0, 0.4, 2.2})
    EXPECT_NEAR(std::sqrt(2.0) * gaussian_value(2, 2 * t), gaussian_value(r.sigma, t), 1e-15);
  // Norm via quadrature.
  double acc = 0;
  const double h = 1e-3;
  for (double t = -10; t < 10; t += h) acc += gaussian_value(r.sigma, t) * gaussian_value(r.sigma, t) * h;
  EXPECT_NEAR(acc, 1.0, 1e-12);
}

TEST(Rescale, IndicatorWidth) {
  WindowSpec s;
  const auto r = rescale(s, Rational(2));
  EXPECT_EQ(r.kind, WindowSpec::Kind::indicator);
  EXPECT_EQ(r.width, Rational(1, 2));
}

TEST(Rescale, FiniteDecimationPreservesNorm) {
  std::mt19937_64 rng(16);
  WindowSpec s;
  s.kind = WindowSpec::Kind::finite_vector;
  s.L = 32;
  s.values = random_vector(rng, 32);
  const double n0 = norm(s.values);
  const auto d = rescale(s, 2);
  EXPECT_EQ(d.L, 16);
  EXPECT_NEAR(norm(d.values), n0, 1e-12 * n0);
  const auto u = rescale(s, Rational(1, 2));
  EXPECT_EQ(u.L, 64);
  EXPECT_NEAR(norm(u.values), n0, 1e-12 * n0);
  EXPECT_THROW(rescale(s, 3), Error);
  EXPECT_THROW(rescale(s, Rational(2, 3)), Error);
  EXPECT_THROW(rescale(s, 0), Error);
}

TEST(ExportCsv, HeaderAndRows) {
  const ZakGrid g(GridShape({1, 2}), ComplexVector{{1, 0}, {0.5, -0.25}});
  const std::string csv = export_csv(g);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "x,omega,re,im");
  EXPECT_NE(csv.find("0,0.5,0.5,-0.25"), std::string::npos);
}

#include "gabinv/invariance.hpp"
#include "gabinv/windows.hpp"
#include "support/cases.hpp"

#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

using namespace gabinv;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string error_of(const std::string& text) {
  try {
    parse_window(text);
  } catch (const Error& e) {
    return e.what();
  }
  return "";
}

const ZakSplit kSplit = ZakSplit::make(32, 4);

}  // namespace

TEST(ParseWindow, Kinds) {
  EXPECT_EQ(parse_window(R"({"kind":"indicator"})").kind, WindowSpec::Kind::indicator);
  const auto g = parse_window(R"({"kind":"gaussian","sigma":1.5})");
  EXPECT_EQ(g.kind, WindowSpec::Kind::gaussian);
  EXPECT_EQ(g.sigma, 1.5);
  const auto d = parse_window(R"({"kind":"finite_vector","L":4,"values":[[1,0],[0,0],[0,0],[0,0]]})");
  EXPECT_EQ(d.kind, WindowSpec::Kind::finite_vector);
  EXPECT_EQ(d.L, 4);
  EXPECT_EQ(d.values, (ComplexVector{1, 0, 0, 0}));
  const auto w = parse_window(R"({"kind":"indicator","width":"1/2"})");
  EXPECT_EQ(w.width, Rational(1, 2));
  const auto e = parse_window(R"({"kind":"explicit_zak","P":1,"Q":2,"values":[[1,0],[0,1]]})");
  ASSERT_TRUE(e.zak.has_value());
  EXPECT_EQ(e.zak->values(), (ComplexVector{{1, 0}, {0, 1}}));
}

TEST(ParseWindow, NormalizeFlag) {
  const auto n = parse_window(R"({"kind":"finite_vector","L":2,"values":[[3,0],[0,4]],"normalize":true})");
  EXPECT_NEAR(norm(n.values), 1, 1e-15);
}

TEST(ParseWindow, ErrorsNameTheField) {
  EXPECT_EQ(error_of(R"({"kind":"gaussian","sigma":-1})"), "/sigma: sigma must be positive");
  EXPECT_EQ(error_of(R"({"kind":"gaussian"})"), "/sigma: missing field");
  EXPECT_EQ(error_of(R"({"kind":"spline"})"), "/kind: unknown window kind 'spline'");
  EXPECT_EQ(error_of(R"({"kind":"finite_vector","L":3,"values":[[1,0]]})"), "/values: expected 3 entries, got 1");
  EXPECT_NE(error_of(R"({"kind":"finite_vector","L":1,"values":[[1e999,0]]})").find("malformed window JSON"), std::string::npos);
  EXPECT_NE(error_of(R"({"kind":"finite_vector","L":1,"values":[[1]]})").find("/values/0"), std::string::npos);
  EXPECT_NE(error_of("{kind"), "");
  EXPECT_NE(error_of("[1,2]"), "");
}

TEST(ParseWindow, JsonRoundTrip) {
  for (const char* text : {R"({"kind":"indicator"})", R"({"kind":"gaussian","sigma":0.75})",
                           R"({"kind":"finite_vector","L":3,"values":[[1,0.5],[0,0],[-2,1e-3]]})"}) {
    const auto a = parse_window(text);
    const auto b = parse_window(window_to_json(a));
    EXPECT_EQ(a.kind, b.kind);
    EXPECT_EQ(a.sigma, b.sigma);
    EXPECT_EQ(a.values, b.values);
  }
}

TEST(Catalog, BundledFileParses) {
  const auto cat = parse_catalog(read_file(std::string(GABINV_DATA_DIR) + "/windows.json"));
  ASSERT_GE(cat.size(), 4u);
  EXPECT_EQ(find_window(cat, "indicator").spec.kind, WindowSpec::Kind::indicator);
  EXPECT_EQ(find_window(cat, "gaussian").spec.sigma, 1.0);
  EXPECT_THROW(find_window(cat, "missing"), Error);
  // The stored mask window reproduces its construction.
  const auto& viii = find_window(cat, "mask_case_viii").spec;
  const auto mask = fixtures::shaded_mask("viii", 4, 8);
  const auto built = window_from_mask(mask, kSplit);
  ASSERT_EQ(viii.values.size(), built.values.size());
  for (std::size_t i = 0; i < built.values.size(); ++i) EXPECT_LT(std::abs(viii.values[i] - built.values[i]), 1e-15);
  EXPECT_THROW(parse_catalog(R"({"windows":[{"spec":{"kind":"indicator"}}]})"), Error);
}

TEST(WindowFromMask, RoundTripsSupport) {
  const auto full = window_from_mask(std::vector<bool>(32, true), kSplit);
  const auto zfull = finite_zak(full.values, kSplit);
  for (const auto& v : zfull.values()) EXPECT_NEAR(std::abs(v), 1, 1e-12);
  const auto empty = window_from_mask(std::vector<bool>(32, false), kSplit);
  EXPECT_EQ(norm(empty.values), 0);
  for (const auto& c : fixtures::example_cases()) {
    const auto mask = fixtures::shaded_mask(c.label, 4, 8);
    for (auto rule : {PhaseRule::constant, PhaseRule::random}) {
      const auto w = window_from_mask(mask, kSplit, rule, 42);
      const auto z = finite_zak(w.values, kSplit);
      EXPECT_EQ(z.support(), mask) << c.label;
      for (std::size_t i = 0; i < mask.size(); ++i)
        if (mask[i]) EXPECT_NEAR(std::abs(z[i]), 1, 1e-12);
      EXPECT_TRUE(condition_d(z, fixtures::base_lattice(), RationalLattice::parse(c.tilde)).holds);
    }
  }
  EXPECT_THROW(window_from_mask(std::vector<bool>(8, true), kSplit), Error);
}

TEST(WindowFromMask, RandomPhasesAreSeeded) {
  const auto mask = fixtures::shaded_mask("v", 4, 8);
  const auto a = window_from_mask(mask, kSplit, PhaseRule::random, 7);
  const auto b = window_from_mask(mask, kSplit, PhaseRule::random, 7);
  const auto c = window_from_mask(mask, kSplit, PhaseRule::random, 8);
  EXPECT_EQ(a.values, b.values);
  EXPECT_NE(a.values, c.values);
}

TEST(FiniteSamples, AnalyticAndFinite) {
  WindowSpec ind;
  const auto s = finite_samples(ind, kSplit);
  ASSERT_EQ(s.size(), 32u);
  const auto zs = finite_zak(s, kSplit);
  for (const auto& v : zs.values()) EXPECT_NEAR(std::abs(v - Complex(1)), 0, 1e-12);
  WindowSpec fv;
  fv.kind = WindowSpec::Kind::finite_vector;
  fv.L = 16;
  fv.values = ComplexVector(16, 1);
  EXPECT_THROW(finite_samples(fv, kSplit), Error);
}

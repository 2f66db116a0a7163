#include "gabinv/windows.hpp"

#include <nlohmann/json.hpp>

#include <cmath>
#include <numbers>
#include <random>

namespace gabinv {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& msg) { throw Error(path + ": " + msg); }

double finite_number(const json& j, const std::string& path) {
  if (!j.is_number()) fail(path, "expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) fail(path, "must be finite");
  return v;
}

std::int64_t positive_integer(const json& obj, const std::string& key) {
  const std::string path = "/" + key;
  if (!obj.contains(key)) fail(path, "missing field");
  const json& j = obj.at(key);
  if (!j.is_number_integer() || j.get<std::int64_t>() <= 0) fail(path, "must be a positive integer");
  return j.get<std::int64_t>();
}

ComplexVector complex_array(const json& obj, const std::string& key, std::size_t expected) {
  const std::string path = "/" + key;
  if (!obj.contains(key) || !obj.at(key).is_array()) fail(path, "expected an array of [re, im] pairs");
  const json& arr = obj.at(key);
  if (arr.size() != expected) fail(path, "expected " + std::to_string(expected) + " entries, got " + std::to_string(arr.size()));
  ComplexVector out;
  out.reserve(expected);
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const std::string ip = path + "/" + std::to_string(i);
    const json& e = arr[i];
    if (e.is_number()) {
      out.emplace_back(finite_number(e, ip), 0.0);
      continue;
    }
    if (!e.is_array() || e.size() != 2) fail(ip, "expected [re, im]");
    out.emplace_back(finite_number(e[0], ip + "/0"), finite_number(e[1], ip + "/1"));
  }
  return out;
}

WindowSpec spec_from_json(const json& j) {
  if (!j.is_object()) fail("", "window must be a JSON object");
  if (!j.contains("kind") || !j.at("kind").is_string()) fail("/kind", "missing window kind");
  const std::string kind = j.at("kind").get<std::string>();
  WindowSpec spec;
  if (j.contains("dim")) {
    spec.dim = static_cast<std::size_t>(positive_integer(j, "dim"));
    if (spec.dim > 2) fail("/dim", "only d = 1 and d = 2 are supported");
  }
  if (kind == "indicator") {
    spec.kind = WindowSpec::Kind::indicator;
    if (j.contains("width")) {
      const json& w = j.at("width");
      try {
        spec.width = w.is_string() ? parse_rational(w.get<std::string>()) : Rational(finite_number(w, "/width"));
      } catch (const Error& e) {
        fail("/width", e.what());
      }
      if (spec.width <= 0) fail("/width", "width must be positive");
    }
  } else if (kind == "gaussian") {
    spec.kind = WindowSpec::Kind::gaussian;
    if (!j.contains("sigma")) fail("/sigma", "missing field");
    spec.sigma = finite_number(j.at("sigma"), "/sigma");
    if (!(spec.sigma > 0)) fail("/sigma", "sigma must be positive");
  } else if (kind == "finite_vector") {
    spec.kind = WindowSpec::Kind::finite_vector;
    spec.L = positive_integer(j, "L");
    spec.values = complex_array(j, "values", static_cast<std::size_t>(spec.L));
    if (j.value("normalize", false)) {
      const double n = norm(spec.values);
      if (n > 0)
        for (auto& v : spec.values) v /= n;
    }
  } else if (kind == "explicit_zak") {
    spec.kind = WindowSpec::Kind::explicit_zak;
    const auto P = positive_integer(j, "P"), Q = positive_integer(j, "Q");
    std::vector<std::int64_t> res;
    for (std::size_t i = 0; i < spec.dim; ++i) res.push_back(P);
    for (std::size_t i = 0; i < spec.dim; ++i) res.push_back(Q);
    GridShape shape(res);
    spec.zak = ZakGrid(shape, complex_array(j, "values", shape.size()));
  } else {
    fail("/kind", "unknown window kind '" + kind + "'");
  }
  return spec;
}

json spec_to_json(const WindowSpec& spec) {
  json j;
  j["kind"] = kind_name(spec.kind);
  const auto pairs = [](const ComplexVector& v) {
    json arr = json::array();
    for (const auto& z : v) arr.push_back({z.real(), z.imag()});
    return arr;
  };
  switch (spec.kind) {
    case WindowSpec::Kind::indicator:
      if (spec.width != 1) j["width"] = format_rational(spec.width);
      break;
    case WindowSpec::Kind::gaussian: j["sigma"] = spec.sigma; break;
    case WindowSpec::Kind::finite_vector:
      j["L"] = spec.L;
      j["values"] = pairs(spec.values);
      break;
    case WindowSpec::Kind::explicit_zak: {
      const auto& r = spec.zak->shape().resolution();
      j["P"] = r.front();
      j["Q"] = r.back();
      j["values"] = pairs(spec.zak->values());
      break;
    }
  }
  if (spec.dim != 1) j["dim"] = spec.dim;
  return j;
}

}  // namespace

WindowSpec parse_window(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    throw Error(std::string("malformed window JSON: ") + e.what());
  }
  return spec_from_json(j);
}

std::string window_to_json(const WindowSpec& spec) { return spec_to_json(spec).dump(); }

std::vector<WindowCatalogEntry> parse_catalog(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    throw Error(std::string("malformed catalog JSON: ") + e.what());
  }
  if (!j.contains("windows") || !j.at("windows").is_array()) fail("/windows", "catalog needs a windows array");
  std::vector<WindowCatalogEntry> out;
  for (std::size_t i = 0; i < j.at("windows").size(); ++i) {
    const json& e = j.at("windows")[i];
    const std::string path = "/windows/" + std::to_string(i);
    if (!e.contains("name") || !e.at("name").is_string()) fail(path + "/name", "missing name");
    if (!e.contains("spec")) fail(path + "/spec", "missing spec");
    try {
      out.push_back({e.at("name").get<std::string>(), spec_from_json(e.at("spec")), e.value("provenance", std::string())});
    } catch (const Error& err) {
      throw Error(path + "/spec" + err.what());
    }
  }
  return out;
}

const WindowCatalogEntry& find_window(const std::vector<WindowCatalogEntry>& catalog, const std::string& name) {
  for (const auto& e : catalog)
    if (e.name == name) return e;
  throw Error("no window named '" + name + "' in the catalog");
}

WindowSpec window_from_mask(const std::vector<bool>& mask, const ZakSplit& split, PhaseRule rule, std::uint64_t seed) {
  if (static_cast<std::int64_t>(mask.size()) != split.L) throw Error("mask size does not match the Zak cell");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> angle(0.0, 1.0);
  ComplexVector z(mask.size());
  for (std::size_t i = 0; i < mask.size(); ++i) {
    const double t = rule == PhaseRule::random ? angle(rng) : 0.0;
    if (mask[i]) z[i] = rule == PhaseRule::random ? std::polar(1.0, 2.0 * std::numbers::pi * t) : Complex{1.0, 0.0};
  }
  WindowSpec spec;
  spec.kind = WindowSpec::Kind::finite_vector;
  spec.L = split.L;
  spec.values = inverse_finite_zak(ZakGrid::finite(split, std::move(z)));
  return spec;
}

ComplexVector finite_samples(const WindowSpec& spec, const ZakSplit& split) {
  if (spec.kind == WindowSpec::Kind::finite_vector) {
    if (spec.L != split.L) throw Error("window length " + std::to_string(spec.L) + " does not match L = " + std::to_string(split.L));
    return spec.values;
  }
  if (spec.dim != 1) throw Error("finite model supports d = 1 windows only");
  const ZakGrid g = analytic_zak(spec, split.N, split.M);
  return inverse_finite_zak(ZakGrid::finite(split, g.values()));
}

}  // namespace gabinv

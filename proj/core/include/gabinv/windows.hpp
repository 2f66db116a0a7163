#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gabinv/zak.hpp"

namespace gabinv {

struct WindowCatalogEntry {
  std::string name;
  WindowSpec spec;
  std::string provenance;
};

/// Parses a WindowSpec JSON object. Errors name the offending field as a JSON pointer.
WindowSpec parse_window(const std::string& json_text);
std::string window_to_json(const WindowSpec& spec);

std::vector<WindowCatalogEntry> parse_catalog(const std::string& json_text);
const WindowCatalogEntry& find_window(const std::vector<WindowCatalogEntry>& catalog, const std::string& name);

enum class PhaseRule { constant, random };

/// Finite window whose Zak transform is the mask times unit phases.
WindowSpec window_from_mask(const std::vector<bool>& mask, const ZakSplit& split, PhaseRule rule = PhaseRule::constant,
                            std::uint64_t seed = 0);

/// Samples of a window on C^L in the split (N, M): finite windows pass through,
/// analytic ones go through their Zak samples on the (N, M) grid.
ComplexVector finite_samples(const WindowSpec& spec, const ZakSplit& split);

}  // namespace gabinv

#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "sheafcore/scalar.hpp"
#include "sheafcore/sheaf.hpp"

namespace sheafcore {

inline constexpr std::string_view kVersion = "0.1.0";

struct SheafBlock {
  std::map<std::string, std::size_t> stalks;
  /// "lower->upper" → row-major matrix of canonical scalar strings.
  std::map<std::string, std::vector<std::vector<std::string>>> maps;
  friend bool operator==(const SheafBlock&, const SheafBlock&) = default;
};

/// On-disk sheaved space. An absent sheaf block means the constant rank-1
/// sheaf.
struct SpaceDocument {
  Coefficients field;
  std::vector<std::string> elements;
  std::vector<std::pair<std::string, std::string>> covers;
  std::optional<SheafBlock> sheaf;
  friend bool operator==(const SpaceDocument&, const SpaceDocument&) = default;
};

/// Parses JSON text. Scalars are canonicalised; a "generator" header is
/// ignored. Throws ParseError on malformed input (including bad names and
/// map shapes that disagree with the stalks).
SpaceDocument parse_document(std::string_view text);
SpaceDocument read_document(const std::string& path);

/// Canonical JSON with sorted keys; `generator` is emitted when given.
std::string serialize_document(const SpaceDocument& doc,
                               const std::optional<std::string>& strategy = {});

/// Builds and validates the poset and sheaf (structure errors propagate).
/// Z documents yield the same sheaf over Q: integral work only ever uses
/// the poset, and constancy is checked on the Q copy.
SheavedSpace to_space(const SpaceDocument& doc);

/// Document for `sp`; the sheaf block is omitted when `with_sheaf` is false.
SpaceDocument from_space(const SheavedSpace& sp, Coefficients field, bool with_sheaf);

std::string map_key(const std::string& lower, const std::string& upper);

}  // namespace sheafcore

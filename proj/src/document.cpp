#include "sheafcore/document.hpp"

#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "sheafcore/error.hpp"

namespace sheafcore {

using nlohmann::json;

namespace {

void check_name(const std::string& name) {
  if (name.empty()) throw ParseError("element names must be nonempty");
  if (name.find("->") != std::string::npos)
    throw ParseError("element name '" + name + "' contains '->'");
  for (unsigned char ch : name)
    if (std::isspace(ch)) throw ParseError("element name '" + name + "' contains whitespace");
}

const json& member(const json& obj, const char* key) {
  auto it = obj.find(key);
  if (it == obj.end()) throw ParseError(std::string("missing \"") + key + "\"");
  return *it;
}

std::string as_string(const json& v, const char* what) {
  if (!v.is_string()) throw ParseError(std::string(what) + " must be a string");
  return v.get<std::string>();
}

SheafBlock parse_sheaf(const json& j, const SpaceDocument& doc) {
  if (!j.is_object()) throw ParseError("\"sheaf\" must be an object");
  SheafBlock block;
  const json& stalks = member(j, "stalks");
  if (!stalks.is_object()) throw ParseError("\"stalks\" must be an object");
  const std::set<std::string> names(doc.elements.begin(), doc.elements.end());
  for (const auto& [name, dim] : stalks.items()) {
    if (!names.count(name)) throw ParseError("stalk given for unknown element " + name);
    if (!dim.is_number_unsigned()) throw ParseError("stalk of " + name + " must be a count");
    block.stalks[name] = dim.get<std::size_t>();
  }
  for (const auto& name : doc.elements)
    if (!block.stalks.count(name)) throw ParseError("missing stalk for " + name);

  const json& maps = member(j, "maps");
  if (!maps.is_object()) throw ParseError("\"maps\" must be an object");
  std::set<std::string> expected;
  for (const auto& [lo, hi] : doc.covers) expected.insert(map_key(lo, hi));
  for (const auto& [key, rows] : maps.items()) {
    if (!expected.count(key)) throw ParseError("map " + key + " does not belong to a cover");
    const auto arrow = key.find("->");
    const std::size_t want_rows = block.stalks.at(key.substr(arrow + 2));
    const std::size_t want_cols = block.stalks.at(key.substr(0, arrow));
    if (!rows.is_array() || rows.size() != want_rows)
      throw ParseError("map " + key + " must have " + std::to_string(want_rows) + " rows");
    auto& out = block.maps[key];
    for (const auto& row : rows) {
      if (!row.is_array() || row.size() != want_cols)
        throw ParseError("map " + key + " rows must have " + std::to_string(want_cols) +
                         " entries");
      auto& out_row = out.emplace_back();
      for (const auto& v : row)
        out_row.push_back(Scalar::parse(doc.field, as_string(v, "matrix entry")).str());
    }
  }
  for (const auto& key : expected)
    if (!block.maps.count(key)) throw ParseError("missing map for cover " + key);
  return block;
}

}  // namespace

std::string map_key(const std::string& lower, const std::string& upper) {
  return lower + "->" + upper;
}

SpaceDocument parse_document(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ParseError("document must be a JSON object");

  SpaceDocument doc;
  doc.field = Coefficients::parse(as_string(member(j, "field"), "\"field\""));

  const json& elements = member(j, "elements");
  if (!elements.is_array()) throw ParseError("\"elements\" must be an array");
  for (const auto& e : elements) {
    doc.elements.push_back(as_string(e, "element name"));
    check_name(doc.elements.back());
  }

  const json& covers = member(j, "covers");
  if (!covers.is_array()) throw ParseError("\"covers\" must be an array");
  for (const auto& c : covers) {
    if (!c.is_array() || c.size() != 2) throw ParseError("each cover must be a [lower, upper] pair");
    doc.covers.emplace_back(as_string(c[0], "cover endpoint"), as_string(c[1], "cover endpoint"));
  }

  for (const auto& [key, _] : j.items())
    if (key != "field" && key != "elements" && key != "covers" && key != "sheaf" &&
        key != "generator")
      throw ParseError("unexpected key \"" + key + "\"");

  if (auto it = j.find("sheaf"); it != j.end()) {
    // Unknown cover endpoints would make map keys meaningless; surface them
    // as structure errors first.
    const std::set<std::string> names(doc.elements.begin(), doc.elements.end());
    for (const auto& [lo, hi] : doc.covers)
      for (const auto* n : {&lo, &hi})
        if (!names.count(*n)) throw UnknownElement(*n);
    doc.sheaf = parse_sheaf(*it, doc);
  }
  return doc;
}

SpaceDocument read_document(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot read " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_document(buf.str());
}

std::string serialize_document(const SpaceDocument& doc, const std::optional<std::string>& strategy) {
  json j;
  j["field"] = doc.field.tag();
  j["elements"] = doc.elements;
  json covers = json::array();
  for (const auto& [lo, hi] : doc.covers) covers.push_back({lo, hi});
  j["covers"] = std::move(covers);
  if (doc.sheaf) {
    json maps = json::object();
    for (const auto& [key, rows] : doc.sheaf->maps) maps[key] = rows;
    j["sheaf"] = {{"stalks", doc.sheaf->stalks}, {"maps", std::move(maps)}};
  }
  if (strategy) {
    j["generator"] = {{"tool", "sheafcore"}, {"version", std::string(kVersion)}};
    if (!strategy->empty()) j["generator"]["strategy"] = *strategy;
  }
  return j.dump(2) + "\n";
}

SheavedSpace to_space(const SpaceDocument& doc) {
  Poset p = Poset::build(doc.elements, doc.covers);
  const Coefficients coeffs = doc.field.is_field() ? doc.field : Coefficients::rationals();
  if (!doc.sheaf) return SheavedSpace(constant_sheaf(p, coeffs, 1));

  std::vector<std::size_t> dims(p.size());
  for (Poset::Index i = 0; i < p.size(); ++i) dims[i] = doc.sheaf->stalks.at(p.name(i));
  std::vector<Matrix> maps;
  for (const auto& [lo, hi] : p.covers()) {
    const auto& rows = doc.sheaf->maps.at(map_key(p.name(lo), p.name(hi)));
    Matrix m(doc.field, dims[hi], dims[lo]);
    for (std::size_t r = 0; r < rows.size(); ++r)
      for (std::size_t c = 0; c < rows[r].size(); ++c)
        m.set(r, c, Scalar::parse(doc.field, rows[r][c]));
    maps.push_back(doc.field.is_field() ? std::move(m) : m.converted(coeffs));
  }
  return SheavedSpace(Sheaf(std::move(p), coeffs, std::move(dims), std::move(maps)));
}

SpaceDocument from_space(const SheavedSpace& sp, Coefficients field, bool with_sheaf) {
  const Poset& p = sp.poset();
  SpaceDocument doc;
  doc.field = field;
  doc.elements = p.names();
  for (const auto& [lo, hi] : p.covers()) doc.covers.emplace_back(p.name(lo), p.name(hi));
  if (!with_sheaf) return doc;

  SheafBlock block;
  for (Poset::Index i = 0; i < p.size(); ++i) block.stalks[p.name(i)] = sp.sheaf().stalk_dim(i);
  for (std::size_t k = 0; k < p.covers().size(); ++k) {
    const auto [lo, hi] = p.covers()[k];
    const Matrix& m = sp.sheaf().cover_maps()[k];
    auto& rows = block.maps[map_key(p.name(lo), p.name(hi))];
    for (std::size_t r = 0; r < m.rows(); ++r) {
      auto& row = rows.emplace_back();
      for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(m.at(r, c).str());
    }
  }
  doc.sheaf = std::move(block);
  return doc;
}

}  // namespace sheafcore

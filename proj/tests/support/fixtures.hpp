#pragma once

#include <string>

#include "sheafcore/poset.hpp"

namespace fixtures {

inline sheafcore::Poset chain(std::size_t n) {
  std::vector<std::string> names;
  std::vector<std::pair<std::string, std::string>> covers;
  for (std::size_t i = 0; i < n; ++i) {
    names.push_back(std::string(1, static_cast<char>('a' + i)));
    if (i) covers.emplace_back(names[i - 1], names[i]);
  }
  return sheafcore::build_poset(names, covers);
}

inline sheafcore::Poset antichain(std::size_t n) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < n; ++i) names.push_back("q" + std::to_string(i));
  return sheafcore::build_poset(names, {});
}

// a, b minimal; x, y maximal; every minimal below every maximal.
inline sheafcore::Poset circle() {
  return sheafcore::build_poset({"a", "b", "x", "y"},
                                {{"a", "x"}, {"a", "y"}, {"b", "x"}, {"b", "y"}});
}

inline sheafcore::Poset circle_apex() {
  return sheafcore::build_poset(
      {"a", "b", "x", "y", "s"},
      {{"a", "x"}, {"a", "y"}, {"b", "x"}, {"b", "y"}, {"x", "s"}, {"y", "s"}});
}

// Face poset of a path with two edges.
inline sheafcore::Poset p5() {
  return sheafcore::build_poset({"a", "b", "c", "ab", "bc"},
                                {{"a", "ab"}, {"b", "ab"}, {"b", "bc"}, {"c", "bc"}});
}

inline sheafcore::Poset p5_apex() {
  return sheafcore::build_poset(
      {"a", "b", "c", "ab", "bc", "s"},
      {{"a", "ab"}, {"b", "ab"}, {"b", "bc"}, {"c", "bc"}, {"ab", "s"}, {"bc", "s"}});
}

inline sheafcore::Poset diamond() {
  return sheafcore::build_poset({"a", "x", "y", "t"},
                                {{"a", "x"}, {"a", "y"}, {"x", "t"}, {"y", "t"}});
}

inline std::string path(const std::string& name) {
  return std::string(SHEAFCORE_FIXTURE_DIR) + "/" + name;
}

}  // namespace fixtures

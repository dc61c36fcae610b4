#pragma once

#include <map>
#include <string>

#include "bridgeforge/bands.hpp"
#include "bridgeforge/presentation.hpp"
#include "bridgeforge/strings.hpp"

namespace testsupport {

inline bridgeforge::Presentation fixture(const std::string& name) {
  return bridgeforge::load_presentation(std::string(FIXTURE_DIR) + "/" + name + ".alg");
}

inline const bridgeforge::Algebra& algebra(const std::string& name) {
  static std::map<std::string, bridgeforge::Algebra> cache;
  auto it = cache.find(name);
  if (it == cache.end()) it = cache.emplace(name, bridgeforge::Algebra(fixture(name))).first;
  return it->second;
}

inline std::string show(const bridgeforge::Presentation& p, const bridgeforge::Str& y) {
  return bridgeforge::render(p, y);
}

}  // namespace testsupport

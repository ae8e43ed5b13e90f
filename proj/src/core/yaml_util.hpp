#pragma once

// Strict YAML helpers shared by the scene and config loaders. Every error is a
// ParseError carrying the 1-based line of the offending node.

#include <array>
#include <cmath>
#include <initializer_list>
#include <limits>
#include <string>
#include <string_view>

#include <yaml-cpp/yaml.h>

#include "plenoptic/core/error.hpp"

namespace plenoptic::yaml {

inline int line_of(const YAML::Node& node) { return node.Mark().line + 1; }

inline YAML::Node load_file(const std::string& path) {
  try {
    return YAML::LoadFile(path);
  } catch (const YAML::BadFile&) {
    throw IoError("cannot read " + path);
  } catch (const YAML::ParserException& e) {
    throw ParseError(path + ": " + e.msg, e.mark.line + 1);
  }
}

// Rejects any key of `map` not listed in `allowed`.
inline void require_keys(const YAML::Node& map, std::initializer_list<std::string_view> allowed,
                         std::string_view context) {
  if (!map.IsMap()) throw ParseError(std::string(context) + " must be a mapping", line_of(map));
  for (const auto& kv : map) {
    const auto key = kv.first.as<std::string>();
    bool known = false;
    for (auto a : allowed) known = known || a == key;
    if (!known) {
      throw ParseError("unknown key '" + key + "' in " + std::string(context),
                       line_of(kv.first));
    }
  }
}

template <typename T>
T as(const YAML::Node& node, std::string_view what) {
  try {
    return node.as<T>();
  } catch (const YAML::Exception&) {
    throw ParseError("invalid value for " + std::string(what), line_of(node));
  }
}

// Accepts numbers plus "inf"/"infinity".
inline double as_double(const YAML::Node& node, std::string_view what) {
  if (node.IsScalar()) {
    const auto s = node.Scalar();
    if (s == "inf" || s == "infinity" || s == "+inf" || s == ".inf") {
      return std::numeric_limits<double>::infinity();
    }
  }
  return as<double>(node, what);
}

template <std::size_t N>
std::array<double, N> as_array(const YAML::Node& node, std::string_view what) {
  if (!node.IsSequence() || node.size() != N) {
    throw ParseError(std::string(what) + " must be a list of " + std::to_string(N) + " numbers",
                     line_of(node));
  }
  std::array<double, N> out{};
  for (std::size_t i = 0; i < N; ++i) out[i] = as_double(node[i], what);
  return out;
}

}  // namespace plenoptic::yaml

#pragma once

#include <string_view>

namespace deltalab {

inline bool is_bit_string(std::string_view s) {
  for (char c : s) {
    if (c != '0' && c != '1') return false;
  }
  return true;
}

// True when p is an initial segment of s (possibly p == s).
inline bool is_prefix_of(std::string_view p, std::string_view s) {
  return p.size() <= s.size() && s.substr(0, p.size()) == p;
}

inline bool is_proper_prefix_of(std::string_view p, std::string_view s) {
  return p.size() < s.size() && s.substr(0, p.size()) == p;
}

}  // namespace deltalab

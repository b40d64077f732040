#pragma once

#include <array>
#include <string>

#include "skewrate/germ.hpp"

namespace fixtures {

struct Named {
  const char* name;
  const char* p;
  const char* q;
};

inline constexpr std::array<Named, 6> kAll{{
    {"g1", "z^2", "z*w"},
    {"g2", "z^2", "z^3*w + z*w^2"},
    {"g3", "z^3", "w^2 + z*w"},
    {"g4", "z^2", "w^3 + z*w + z^3"},
    {"g5", "z^2", "-2*w^2 + z*w + z^2"},
    {"g6", "z^4", "w^5 + z^4*w + z^6"},
}};

inline skewrate::SkewGerm germ(const char* p, const char* q) {
  return skewrate::SkewGerm(skewrate::parse_poly(p, {true, false}), skewrate::parse_poly(q));
}

inline skewrate::SkewGerm germ(const Named& g) { return germ(g.p, g.q); }

inline skewrate::SkewGerm get(std::size_t one_based) { return germ(kAll.at(one_based - 1)); }

inline std::string path(const std::string& file) { return std::string(SKEWRATE_TEST_DATA) + "/" + file; }

}  // namespace fixtures

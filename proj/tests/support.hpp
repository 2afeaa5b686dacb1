#pragma once

#include <initializer_list>
#include <string>
#include <vector>

#include "credal/credal.hpp"

namespace credal::test {

inline Rational q(const char* s) { return Rational::from_string(s); }

inline Point pt(std::initializer_list<const char*> values) {
  Point p;
  for (const char* v : values) p.push_back(q(v));
  return p;
}

inline Space space(std::initializer_list<Variable> vars) { return Space(std::vector<Variable>(vars)); }

inline std::vector<Rational> vec(std::initializer_list<const char*> values) { return pt(values); }

}  // namespace credal::test

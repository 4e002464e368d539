#pragma once

#include <random>
#include <string>
#include <vector>

#include "toricgcp/geometry.hpp"
#include "toricgcp/poly.hpp"

namespace testing_util {

using namespace toricgcp;

inline Support S(std::vector<Point> pts) {
  const std::size_t n = pts.front().size();
  return Support(n, std::move(pts));
}

inline Support box(std::int64_t a, std::int64_t b) { return S({{0, 0}, {a, 0}, {0, b}, {a, b}}); }

inline Support cube3() {
  std::vector<Point> pts;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int c = 0; c < 2; ++c) pts.push_back({a, b, c});
  return S(pts);
}

inline MultiPoly P(Field f, const VarList& v, const std::string& text) { return parse_polynomial(f, v, text); }

// The degenerate 2x2 system with isolated roots (1,1), (1/7,7/4) and the
// line x = -1.
inline std::vector<MultiPoly> degenerate_pair(Field f, const VarList& v) {
  return {P(f, v, "1+2*x-2*x^2*y-5*x*y+x^2+3*x^3*y"), P(f, v, "2+6*x-6*x^2*y-11*x*y+4*x^2+5*x^3*y")};
}

inline SupportTuple degenerate_pair_fill() { return {S({{0, 0}, {3, 1}}), S({{1, 1}, {2, 0}})}; }

// Random subset of the box [0,w]^n with at least `min` points.
inline Support random_support(std::mt19937_64& rng, std::size_t n, int w, std::size_t count) {
  std::uniform_int_distribution<int> d(0, w);
  std::vector<Point> pts;
  while (pts.size() < count) {
    Point p(n);
    for (auto& c : p) c = d(rng);
    pts.push_back(p);
  }
  return Support(n, pts);
}

}  // namespace testing_util

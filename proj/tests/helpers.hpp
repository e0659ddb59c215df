#pragma once

#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <utility>

#include "qdha/qdha.hpp"

namespace qt {

// run f, expect a qdha::error, hand back its code
template <class F>
qdha::errc thrown_code(F&& f) {
  try {
    std::forward<F>(f)();
  } catch (const qdha::error& e) {
    return e.code();
  }
  FAIL("expected a qdha::error");
  return qdha::errc::validation;
}

inline std::mt19937& rng() {
  static std::mt19937 gen(20260819u);
  return gen;
}

inline double uniform(double lo, double hi) {
  std::uniform_real_distribution<double> d(lo, hi);
  return d(rng());
}

inline double rel_err(double a, double b) {
  return std::abs(a - b) / std::max(1.0, std::abs(b));
}

inline double rel_err(std::complex<double> a, std::complex<double> b) {
  return std::abs(a - b) / std::max(1.0, std::abs(b));
}

}  // namespace qt

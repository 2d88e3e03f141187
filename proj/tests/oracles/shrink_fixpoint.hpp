#pragma once

// Iterates the single-generator shrinking step to a fixpoint: while some
// coefficient exceeds H, move the excess of the first such generator into the
// center.

#include <cstdint>
#include <utility>
#include <vector>

#include "masurelab/rational.hpp"

namespace oracle {

struct BallSplit {
  masurelab::IntVec center_coefficients;
  masurelab::IntVec shape_coefficients;
};

inline BallSplit shrink_to_fixpoint(const masurelab::IntVec& coefficients, std::int64_t h) {
  BallSplit s{masurelab::IntVec(coefficients.size(), 0), coefficients};
  for (;;) {
    std::size_t e = 0;
    while (e < s.shape_coefficients.size() && s.shape_coefficients[e] <= h) ++e;
    if (e == s.shape_coefficients.size()) return s;
    std::int64_t excess = s.shape_coefficients[e] - h;
    s.center_coefficients[e] += excess;
    s.shape_coefficients[e] -= excess;
  }
}

inline masurelab::IntVec combine(const std::vector<masurelab::IntVec>& gens, const masurelab::IntVec& coeffs,
                                 std::size_t n) {
  masurelab::IntVec out(n, 0);
  for (std::size_t e = 0; e < gens.size(); ++e)
    for (std::size_t c = 0; c < n; ++c) out[c] += coeffs[e] * gens[e][c];
  return out;
}

}  // namespace oracle

#pragma once

#include <cstddef>
#include <span>

namespace opdyn {

/// Pairwise (cascade) summation in fixed index order. The result depends only
/// on the values and their order, never on how they were produced.
inline double pairwise_sum(std::span<const double> v) {
  constexpr std::size_t kBlock = 16;
  if (v.size() <= kBlock) {
    double acc = 0.0;
    for (double x : v) acc += x;
    return acc;
  }
  const std::size_t half = v.size() / 2;
  return pairwise_sum(v.first(half)) + pairwise_sum(v.subspan(half));
}

}  // namespace opdyn

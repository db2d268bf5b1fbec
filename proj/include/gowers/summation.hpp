#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace gowers {

// Below this length a plain left-to-right loop is used.
inline constexpr std::size_t kPairwiseBase = 32;

/// Pairwise (tree) summation. Rounding error grows as O(log n) eps rather
/// than O(n) eps. The tree shape depends only on the length, so results are
/// bit-stable for a given input regardless of who calls it.
template <typename T>
T pairwise_sum(std::span<const T> values) {
    if (values.size() <= kPairwiseBase) {
        T acc{};
        for (const T& v : values) acc += v;
        return acc;
    }
    const std::size_t half = values.size() / 2;
    return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

template <typename T>
T pairwise_sum(const std::vector<T>& values) {
    return pairwise_sum(std::span<const T>(values));
}

}  // namespace gowers

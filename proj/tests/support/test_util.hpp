#pragma once

#include <cstdint>
#include <random>

#include "mpgemm/matrix.hpp"

namespace testutil {

inline mpgemm::MatrixF32 random_matrix(int rows, int cols, std::uint32_t seed,
                                       float lo = -1.0f, float hi = 1.0f) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<float> dist(lo, hi);
    mpgemm::MatrixF32 m(rows, cols);
    for (int r = 0; r < rows; ++r) {
        for (int c = 0; c < cols; ++c) {
            m.at(r, c) = dist(rng);
        }
    }
    return m;
}

/// Uniformly random finite half pattern (both normals and subnormals).
inline std::uint16_t random_finite_half_bits(std::mt19937& rng) {
    for (;;) {
        const auto bits = static_cast<std::uint16_t>(rng() & 0xffff);
        if ((bits & 0x7c00) != 0x7c00) {
            return bits;
        }
    }
}

inline mpgemm::MatrixF16 random_half_matrix(int rows, int cols, std::uint32_t seed) {
    std::mt19937 rng(seed);
    mpgemm::MatrixF16 m(rows, cols);
    for (int r = 0; r < rows; ++r) {
        for (int c = 0; c < cols; ++c) {
            m.at(r, c) = mpgemm::Half::from_bits(random_finite_half_bits(rng));
        }
    }
    return m;
}

} // namespace testutil

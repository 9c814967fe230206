#include "mpgemm/half.hpp"

#include <bit>

namespace mpgemm {

namespace {

// Right shift that ORs every shifted-out bit into the result's low bit,
// so the sticky information survives for the rounding decision.
inline std::uint32_t shift_right_jam(std::uint32_t v, int dist) {
    if (dist >= 31) {
        return v != 0 ? 1u : 0u;
    }
    const std::uint32_t lost = v & ((1u << dist) - 1u);
    return (v >> dist) | (lost != 0 ? 1u : 0u);
}

} // namespace

Half round_to_half(float x) noexcept {
    const std::uint32_t u = std::bit_cast<std::uint32_t>(x);
    const std::uint16_t sign = static_cast<std::uint16_t>((u >> 16) & 0x8000u);
    const std::uint32_t mag = u & 0x7fffffffu;

    if (mag >= 0x7f800000u) { // inf or NaN
        if (mag > 0x7f800000u) {
            return Half::from_bits(kHalfQuietNanBits);
        }
        return Half::from_bits(sign | kHalfPositiveInfinityBits);
    }

    const int fexp = static_cast<int>(mag >> 23); // biased float exponent
    if (fexp == 0) {
        // Single-precision zero or subnormal: |x| < 2^-126, far below half
        // of binary16's smallest subnormal, so the nearest half is zero.
        return Half::from_bits(sign);
    }

    int e = fexp - 127; // unbiased
    if (e > 15) {
        return Half::from_bits(sign | kHalfPositiveInfinityBits);
    }

    const std::uint32_t sig = (mag & 0x007fffffu) | 0x00800000u; // 24 bits

    // Align so that after dropping 3 guard/round/sticky bits the kept part
    // is the half significand (implicit bit included for normals). Targets
    // below 2^-14 take extra shift and land in the subnormal encoding.
    const int shift = e >= -14 ? 13 : 13 + (-14 - e);
    const std::uint32_t q = shift_right_jam(sig, shift - 3);
    const std::uint32_t extra = q & 0x7u;
    std::uint32_t kept = q >> 3;
    if (extra > 0x4u || (extra == 0x4u && (kept & 1u) != 0)) {
        kept += 1;
    }

    if (e < -14) {
        // kept in [0, 1024]; 1024 overflows into the smallest normal, whose
        // bit pattern is exactly sign | 0x0400.
        return Half::from_bits(static_cast<std::uint16_t>(sign | kept));
    }
    if (kept == 0x800u) { // significand carry: 2.0 * 2^e
        kept = 0x400u;
        ++e;
        if (e > 15) {
            return Half::from_bits(sign | kHalfPositiveInfinityBits);
        }
    }
    const std::uint32_t bits =
        sign | (static_cast<std::uint32_t>(e + 15) << 10) | (kept & 0x3ffu);
    return Half::from_bits(static_cast<std::uint16_t>(bits));
}

float widen(Half h) noexcept {
    const std::uint16_t b = h.bits();
    const std::uint32_t sign = static_cast<std::uint32_t>(b & 0x8000u) << 16;
    const std::uint32_t exp = (b >> 10) & 0x1fu;
    const std::uint32_t frac = b & 0x3ffu;

    if (exp == 0x1f) { // inf / NaN; keeping frac<<13 preserves the quiet bit
        return std::bit_cast<float>(sign | 0x7f800000u | (frac << 13));
    }
    if (exp == 0) {
        if (frac == 0) {
            return std::bit_cast<float>(sign); // signed zero
        }
        // Subnormal: frac * 2^-24 with frac in [1, 1023]. Renormalize into a
        // single-precision normal; the top set bit of frac becomes the
        // implicit bit.
        const int top = 31 - std::countl_zero(frac); // in [0, 9]
        const std::uint32_t nexp = static_cast<std::uint32_t>(top - 24 + 127);
        const std::uint32_t nfrac = (frac ^ (1u << top)) << (23 - top);
        return std::bit_cast<float>(sign | (nexp << 23) | nfrac);
    }
    return std::bit_cast<float>(sign | ((exp - 15 + 127) << 23) | (frac << 13));
}

} // namespace mpgemm

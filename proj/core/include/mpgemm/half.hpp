#pragma once

#include <cstdint>

namespace mpgemm {

/// IEEE-754 binary16 scalar, stored as its 16-bit pattern
/// (1 sign bit, 5 exponent bits, 10 significand bits).
///
/// Half is a pure storage format here: no binary16 arithmetic is provided.
/// All computation happens after widening to single precision, mirroring
/// the tensor-unit data flow (FP16 operands, FP32 accumulation).
class Half {
public:
    constexpr Half() = default;

    static constexpr Half from_bits(std::uint16_t bits) {
        Half h;
        h.bits_ = bits;
        return h;
    }

    constexpr std::uint16_t bits() const { return bits_; }

    /// Bit-pattern equality. Note that +0 != -0 and NaN == NaN under this
    /// comparison; value comparisons should go through widen().
    constexpr bool operator==(const Half&) const = default;

private:
    std::uint16_t bits_ = 0;
};

inline constexpr std::uint16_t kHalfPositiveInfinityBits = 0x7c00;
inline constexpr std::uint16_t kHalfQuietNanBits = 0x7e00;
inline constexpr std::uint16_t kHalfMaxFiniteBits = 0x7bff; // 65504

/// Rounds a single-precision value to the nearest binary16 under
/// round-to-nearest, ties-to-even. Finite inputs with |x| >= 65520 map to
/// +/-infinity, subnormal halves are produced (no flush to zero), and any
/// NaN maps to the canonical quiet NaN pattern 0x7e00. Total function.
Half round_to_half(float x) noexcept;

/// The exact single-precision value encoded by h. Widening is lossless:
/// round_to_half(widen(h)) == h for every non-NaN pattern.
float widen(Half h) noexcept;

/// Machine epsilon of binary16: 2^-10.
constexpr float half_epsilon() noexcept { return 0x1p-10f; }

// Classification, by bit pattern.
constexpr bool is_nan(Half h) noexcept {
    return (h.bits() & 0x7fff) > 0x7c00;
}
constexpr bool is_inf(Half h) noexcept {
    return (h.bits() & 0x7fff) == 0x7c00;
}
constexpr bool is_finite(Half h) noexcept {
    return (h.bits() & 0x7c00) != 0x7c00;
}
constexpr bool is_subnormal(Half h) noexcept {
    return (h.bits() & 0x7c00) == 0 && (h.bits() & 0x03ff) != 0;
}
constexpr bool is_zero(Half h) noexcept {
    return (h.bits() & 0x7fff) == 0;
}
constexpr bool sign_bit(Half h) noexcept {
    return (h.bits() & 0x8000) != 0;
}

} // namespace mpgemm

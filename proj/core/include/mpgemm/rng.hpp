#pragma once

#include <cstdint>

namespace mpgemm {

/// Counter-based pseudorandom stream built on the SplitMix64 finalizer
/// (Steele, Lea & Flood, "Fast splittable pseudorandom number generators").
/// Output i of stream s under seed q is
///
///   mix64(key + (i + 1) * 0x9e3779b97f4a7c15)   with
///   key = mix64(q) ^ mix64(s ^ 0x6a09e667f3bcc909)
///
/// where mix64 is the SplitMix64 finalizer. Every draw is a pure function of
/// (seed, stream, counter): platform independent, trivially parallel, and
/// any element can be generated without stepping through its predecessors.
class CounterRng {
public:
    CounterRng(std::uint64_t seed, std::uint64_t stream);

    /// The i-th 64-bit draw of this stream.
    std::uint64_t at(std::uint64_t counter) const;

    /// The i-th draw mapped to [0, 1) with 24-bit granularity.
    double unit_at(std::uint64_t counter) const;

    /// The i-th draw mapped to [lo, hi). The affine map is evaluated in
    /// double precision and rounded once to single, so results are identical
    /// on every IEEE platform.
    float uniform_at(std::uint64_t counter, float lo, float hi) const;

private:
    std::uint64_t key_;
};

} // namespace mpgemm

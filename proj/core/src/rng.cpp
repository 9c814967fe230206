#include "mpgemm/rng.hpp"

namespace mpgemm {

namespace {

constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;
constexpr std::uint64_t kStreamSalt = 0x6a09e667f3bcc909ULL;

constexpr std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

} // namespace

CounterRng::CounterRng(std::uint64_t seed, std::uint64_t stream)
    : key_(mix64(seed) ^ mix64(stream ^ kStreamSalt)) {}

std::uint64_t CounterRng::at(std::uint64_t counter) const {
    return mix64(key_ + (counter + 1) * kGolden);
}

double CounterRng::unit_at(std::uint64_t counter) const {
    // Top 24 bits -> [0, 1); the scale is exact in double precision.
    return static_cast<double>(at(counter) >> 40) * 0x1p-24;
}

float CounterRng::uniform_at(std::uint64_t counter, float lo, float hi) const {
    const double u = unit_at(counter);
    const double v = static_cast<double>(lo) +
                     u * (static_cast<double>(hi) - static_cast<double>(lo));
    return static_cast<float>(v);
}

} // namespace mpgemm

#include <doctest.h>

#include <cmath>
#include <random>

#include "mpgemm/fragment.hpp"
#include "support/oracles.hpp"
#include "support/test_util.hpp"

using namespace mpgemm;

namespace {

// Scalar 16x16x16 fold, written against the contract rather than the engine.
MatrixF32 scalar_mma(const MatrixF16& a, const MatrixF16& b, const MatrixF32& c) {
    MatrixF32 d(16, 16);
    for (int i = 0; i < 16; ++i) {
        for (int j = 0; j < 16; ++j) {
            float acc = c.at(i, j);
            for (int k = 0; k < 16; ++k) {
                const float aw = static_cast<float>(oracles::half_value(a.at(i, k).bits()));
                const float bw = static_cast<float>(oracles::half_value(b.at(k, j).bits()));
                acc = acc + aw * bw;
            }
            d.at(i, j) = acc;
        }
    }
    return d;
}

} // namespace

TEST_SUITE_BEGIN("wmma");

TEST_CASE("fill_fragment") {
    const Fragment acc = fill_fragment(FragmentRole::Accumulator, 0.0f);
    for (int i = 0; i < 16; ++i) {
        for (int j = 0; j < 16; ++j) {
            CHECK(acc.f32_at(i, j) == 0.0f);
        }
    }
    const Fragment ones = fill_fragment(FragmentRole::MatrixA, 1.0f);
    CHECK(ones.half_at(3, 7).bits() == 0x3c00);
    // Operand fill rounds: 2049 is a tie that resolves to 2048.
    const Fragment t = fill_fragment(FragmentRole::MatrixA, 2049.0f);
    CHECK(t.half_at(0, 0).bits() == oracles::round_half_bits(2049.0f));
    CHECK(widen(t.half_at(15, 15)) == 2048.0f);
}

TEST_CASE("load: size checks") {
    const MatrixF32 small(15, 16);
    CHECK_THROWS_AS(load_fragment(small, FragmentRole::MatrixA, Layout::RowMajor),
                    DimensionMismatch);
    const MatrixF32 big(17, 20);
    CHECK_NOTHROW(load_fragment(big, FragmentRole::MatrixA, Layout::RowMajor, 1, 4));
    CHECK_THROWS_AS(load_fragment(big, FragmentRole::MatrixA, Layout::RowMajor, 2, 0),
                    DimensionMismatch);
}

TEST_CASE("load/store layout round-trips") {
    const MatrixF32 x = testutil::random_matrix(16, 16, 11);

    // Accumulator load/store reproduces the source bit-for-bit.
    const Fragment acc = load_fragment(x, FragmentRole::Accumulator, Layout::RowMajor);
    const MatrixF32 back = store_fragment(acc, Layout::RowMajor);
    for (int i = 0; i < 16; ++i) {
        for (int j = 0; j < 16; ++j) {
            CHECK(back.at(i, j) == x.at(i, j));
        }
    }

    // ColMajor load then RowMajor store transposes, per the index oracle.
    const Fragment cm = load_fragment(x, FragmentRole::Accumulator, Layout::ColMajor);
    const MatrixF32 tr = store_fragment(cm, Layout::RowMajor);
    for (int i = 0; i < 16; ++i) {
        for (int j = 0; j < 16; ++j) {
            CHECK(tr.at(i, j) == x.at(j, i));
        }
    }

    // Same layout on both sides reproduces the source.
    const MatrixF32 same = store_fragment(cm, Layout::ColMajor);
    for (int i = 0; i < 16; ++i) {
        for (int j = 0; j < 16; ++j) {
            CHECK(same.at(i, j) == x.at(i, j));
        }
    }

    // All-zero accumulator stores as a zero matrix.
    const MatrixF32 z = store_fragment(fill_fragment(FragmentRole::Accumulator, 0.0f),
                                       Layout::ColMajor);
    for (int i = 0; i < 16; ++i) {
        for (int j = 0; j < 16; ++j) {
            CHECK(z.at(i, j) == 0.0f);
        }
    }
}

TEST_CASE("operand load rounds single-precision sources") {
    MatrixF32 x(16, 16);
    x.at(0, 0) = 2049.0f;
    x.at(5, 5) = 1.0f + 0x1p-11f;
    const Fragment f = load_fragment(x, FragmentRole::MatrixA, Layout::RowMajor);
    CHECK(widen(f.half_at(0, 0)) == 2048.0f);
    CHECK(widen(f.half_at(5, 5)) == 1.0f);
}

TEST_CASE("mma_sync: identity and all-ones") {
    MatrixF16 eye(16, 16);
    for (int i = 0; i < 16; ++i) {
        eye.at(i, i) = round_to_half(1.0f);
    }
    const MatrixF16 b = testutil::random_half_matrix(16, 16, 123);

    const Fragment af = load_fragment(eye, FragmentRole::MatrixA, Layout::RowMajor);
    const Fragment bf = load_fragment(b, FragmentRole::MatrixB, Layout::RowMajor);
    const Fragment cf = fill_fragment(FragmentRole::Accumulator, 0.0f);
    const MatrixF32 d = store_fragment(mma_sync(af, bf, cf), Layout::RowMajor);
    for (int i = 0; i < 16; ++i) {
        for (int j = 0; j < 16; ++j) {
            CHECK(d.at(i, j) == widen(b.at(i, j)));
        }
    }

    const Fragment ones_a = fill_fragment(FragmentRole::MatrixA, 1.0f);
    const Fragment ones_b = fill_fragment(FragmentRole::MatrixB, 1.0f);
    const MatrixF32 s = store_fragment(mma_sync(ones_a, ones_b, cf), Layout::RowMajor);
    for (int i = 0; i < 16; ++i) {
        for (int j = 0; j < 16; ++j) {
            CHECK(s.at(i, j) == 16.0f);
        }
    }
}

TEST_CASE("mma_sync matches the scalar fold oracle bit-for-bit") {
    for (std::uint32_t seed = 0; seed < 20; ++seed) {
        const MatrixF16 a = testutil::random_half_matrix(16, 16, 1000 + seed);
        const MatrixF16 b = testutil::random_half_matrix(16, 16, 2000 + seed);
        const MatrixF32 c = testutil::random_matrix(16, 16, 3000 + seed, -8.0f, 8.0f);

        const Fragment af = load_fragment(a, FragmentRole::MatrixA, Layout::RowMajor);
        const Fragment bf = load_fragment(b, FragmentRole::MatrixB, Layout::RowMajor);
        const Fragment cf = load_fragment(c, FragmentRole::Accumulator, Layout::RowMajor);
        const MatrixF32 d = store_fragment(mma_sync(af, bf, cf), Layout::RowMajor);
        const MatrixF32 ref = scalar_mma(a, b, c);
        for (int i = 0; i < 16; ++i) {
            for (int j = 0; j < 16; ++j) {
                CHECK(std::bit_cast<std::uint32_t>(d.at(i, j)) ==
                      std::bit_cast<std::uint32_t>(ref.at(i, j)));
            }
        }
    }
}

TEST_CASE("mma_sync: Fp16 accumulator precision rounds the outputs") {
    const MatrixF16 a = testutil::random_half_matrix(16, 16, 77);
    const MatrixF16 b = testutil::random_half_matrix(16, 16, 78);
    const Fragment af = load_fragment(a, FragmentRole::MatrixA, Layout::RowMajor);
    const Fragment bf = load_fragment(b, FragmentRole::MatrixB, Layout::RowMajor);
    const Fragment cf = fill_fragment(FragmentRole::Accumulator, 0.0f);
    const MatrixF32 full = store_fragment(mma_sync(af, bf, cf, MmaMode::Fp32),
                                          Layout::RowMajor);
    const MatrixF32 hred = store_fragment(mma_sync(af, bf, cf, MmaMode::Fp16),
                                          Layout::RowMajor);
    for (int i = 0; i < 16; ++i) {
        for (int j = 0; j < 16; ++j) {
            CHECK(hred.at(i, j) == widen(round_to_half(full.at(i, j))));
        }
    }
}

TEST_CASE("exact-product property") {
    std::mt19937 rng(99);
    for (int i = 0; i < 100000; ++i) {
        const float a = widen(Half::from_bits(testutil::random_finite_half_bits(rng)));
        const float b = widen(Half::from_bits(testutil::random_finite_half_bits(rng)));
        const float p = a * b;
        CHECK(static_cast<double>(p) ==
              static_cast<double>(a) * static_cast<double>(b));
    }
}

TEST_CASE("role mismatch") {
    const Fragment a = fill_fragment(FragmentRole::MatrixA, 1.0f);
    const Fragment b = fill_fragment(FragmentRole::MatrixB, 1.0f);
    const Fragment c = fill_fragment(FragmentRole::Accumulator, 0.0f);
    CHECK_THROWS_AS(mma_sync(b, a, c), RoleMismatch);
    CHECK_THROWS_AS(mma_sync(a, c, b), RoleMismatch);
    CHECK_THROWS_AS(store_fragment(a, Layout::RowMajor), RoleMismatch);
}

TEST_CASE("linearity in C for the zero case, and determinism") {
    const MatrixF16 a = testutil::random_half_matrix(16, 16, 5);
    const MatrixF16 b = testutil::random_half_matrix(16, 16, 6);
    const MatrixF32 c1 = testutil::random_matrix(16, 16, 7, -4.0f, 4.0f);

    const Fragment af = load_fragment(a, FragmentRole::MatrixA, Layout::RowMajor);
    const Fragment bf = load_fragment(b, FragmentRole::MatrixB, Layout::RowMajor);
    const Fragment c1f = load_fragment(c1, FragmentRole::Accumulator, Layout::RowMajor);

    const MatrixF32 d1 = store_fragment(mma_sync(af, bf, c1f), Layout::RowMajor);
    const MatrixF32 d2 = store_fragment(mma_sync(af, bf, c1f), Layout::RowMajor);
    for (int i = 0; i < 16; ++i) {
        for (int j = 0; j < 16; ++j) {
            CHECK(std::bit_cast<std::uint32_t>(d1.at(i, j)) ==
                  std::bit_cast<std::uint32_t>(d2.at(i, j)));
        }
    }
}

TEST_SUITE_END();

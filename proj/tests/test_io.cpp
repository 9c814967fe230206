#include <doctest.h>

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "mpgemm/matrix_io.hpp"
#include "support/test_util.hpp"

using namespace mpgemm;

namespace {

std::filesystem::path temp_file(const char* name) {
    return std::filesystem::temp_directory_path() / name;
}

std::string encode_to_string(const AnyMatrix& m) {
    std::ostringstream os(std::ios::binary);
    write_matrix_stream(m, os);
    return os.str();
}

AnyMatrix decode_from_string(std::string bytes) {
    std::istringstream is(std::move(bytes), std::ios::binary);
    return read_matrix_stream(is);
}

} // namespace

TEST_SUITE_BEGIN("io");

TEST_CASE("round-trip is bit-exact across shapes and dtypes") {
    std::mt19937 rng(2024);
    std::uniform_int_distribution<int> dim(1, 40);
    for (int t = 0; t < 50; ++t) {
        const int r = dim(rng);
        const int c = dim(rng);
        if (t % 2 == 0) {
            const MatrixF16 m = testutil::random_half_matrix(r, c, 100 + t);
            const AnyMatrix back = decode_from_string(encode_to_string(m));
            const auto& g = std::get<MatrixF16>(back);
            REQUIRE(g.rows() == r);
            REQUIRE(g.cols() == c);
            for (int i = 0; i < r; ++i) {
                for (int j = 0; j < c; ++j) {
                    CHECK(g.at(i, j).bits() == m.at(i, j).bits());
                }
            }
        } else {
            const MatrixF32 m = testutil::random_matrix(r, c, 200 + t, -1e6f, 1e6f);
            const AnyMatrix back = decode_from_string(encode_to_string(m));
            const auto& g = std::get<MatrixF32>(back);
            REQUIRE(g.rows() == r);
            REQUIRE(g.cols() == c);
            for (int i = 0; i < r; ++i) {
                for (int j = 0; j < c; ++j) {
                    CHECK(std::bit_cast<std::uint32_t>(g.at(i, j)) ==
                          std::bit_cast<std::uint32_t>(m.at(i, j)));
                }
            }
        }
    }
    // 1x1 half edge case through an actual file.
    MatrixF16 tiny(1, 1);
    tiny.at(0, 0) = Half::from_bits(0x7bff);
    const auto path = temp_file("mpgemm_tiny.mpgm");
    write_matrix(tiny, path);
    const auto read = read_matrix(path);
    CHECK(std::get<MatrixF16>(read).at(0, 0).bits() == 0x7bff);
    std::filesystem::remove(path);
}

TEST_CASE("special values survive the file format") {
    MatrixF16 m(2, 2);
    m.at(0, 0) = Half::from_bits(0x7c00); // +inf
    m.at(0, 1) = Half::from_bits(0xfc00); // -inf
    m.at(1, 0) = Half::from_bits(0x7e00); // quiet NaN
    m.at(1, 1) = Half::from_bits(0x8000); // -0
    const auto back = std::get<MatrixF16>(decode_from_string(encode_to_string(m)));
    CHECK(back.at(0, 0).bits() == 0x7c00);
    CHECK(back.at(0, 1).bits() == 0xfc00);
    CHECK(back.at(1, 0).bits() == 0x7e00);
    CHECK(back.at(1, 1).bits() == 0x8000);
}

TEST_CASE("format errors") {
    const MatrixF16 m = testutil::random_half_matrix(3, 4, 7);
    const std::string good = encode_to_string(m);

    SUBCASE("corrupt magic") {
        std::string bad = good;
        bad[0] = 'X';
        CHECK_THROWS_AS(decode_from_string(bad), FormatError);
    }
    SUBCASE("bad version") {
        std::string bad = good;
        bad[4] = 9;
        CHECK_THROWS_AS(decode_from_string(bad), FormatError);
    }
    SUBCASE("bad dtype") {
        std::string bad = good;
        bad[5] = 7;
        CHECK_THROWS_AS(decode_from_string(bad), FormatError);
    }
    SUBCASE("truncated payload") {
        CHECK_THROWS_AS(decode_from_string(good.substr(0, good.size() - 3)),
                        TruncatedFile);
    }
    SUBCASE("truncated header") {
        CHECK_THROWS_AS(decode_from_string(good.substr(0, 9)), TruncatedFile);
    }
    SUBCASE("trailing bytes") {
        CHECK_THROWS_AS(decode_from_string(good + "zz"), FormatError);
    }
    SUBCASE("zero dimension") {
        std::string bad = good;
        bad[6] = bad[7] = bad[8] = bad[9] = 0; // rows = 0
        CHECK_THROWS_AS(decode_from_string(bad), FormatError);
    }
}

TEST_CASE("io errors surface as IoError") {
    CHECK_THROWS_AS(read_matrix("/nonexistent/dir/matrix.mpgm"), IoError);
    const MatrixF16 m(2, 2);
    CHECK_THROWS_AS(write_matrix(m, "/nonexistent/dir/matrix.mpgm"), IoError);
}

TEST_SUITE_END();

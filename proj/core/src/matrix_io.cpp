#include "mpgemm/matrix_io.hpp"

#include <bit>
#include <cstdint>
#include <fstream>
#include <limits>
#include <sstream>
#include <vector>

namespace mpgemm {

namespace {

constexpr char kMagic[4] = {'M', 'P', 'G', 'M'};
constexpr std::uint8_t kVersion = 1;

void put_u32le(std::string& out, std::uint32_t v) {
    out.push_back(static_cast<char>(v & 0xff));
    out.push_back(static_cast<char>((v >> 8) & 0xff));
    out.push_back(static_cast<char>((v >> 16) & 0xff));
    out.push_back(static_cast<char>((v >> 24) & 0xff));
}

void put_u16le(std::string& out, std::uint16_t v) {
    out.push_back(static_cast<char>(v & 0xff));
    out.push_back(static_cast<char>((v >> 8) & 0xff));
}

std::uint32_t get_u32le(const unsigned char* p) {
    return static_cast<std::uint32_t>(p[0]) | (static_cast<std::uint32_t>(p[1]) << 8) |
           (static_cast<std::uint32_t>(p[2]) << 16) |
           (static_cast<std::uint32_t>(p[3]) << 24);
}

std::uint16_t get_u16le(const unsigned char* p) {
    return static_cast<std::uint16_t>(static_cast<std::uint16_t>(p[0]) |
                                      (static_cast<std::uint16_t>(p[1]) << 8));
}

std::string encode(const AnyMatrix& m) {
    std::string out;
    out.append(kMagic, 4);
    out.push_back(static_cast<char>(kVersion));
    if (const auto* f32 = std::get_if<MatrixF32>(&m)) {
        out.push_back(static_cast<char>(MatrixDType::F32));
        put_u32le(out, static_cast<std::uint32_t>(f32->rows()));
        put_u32le(out, static_cast<std::uint32_t>(f32->cols()));
        for (std::size_t i = 0; i < f32->size(); ++i) {
            put_u32le(out, std::bit_cast<std::uint32_t>(f32->data()[i]));
        }
    } else {
        const auto& f16 = std::get<MatrixF16>(m);
        out.push_back(static_cast<char>(MatrixDType::F16));
        put_u32le(out, static_cast<std::uint32_t>(f16.rows()));
        put_u32le(out, static_cast<std::uint32_t>(f16.cols()));
        for (std::size_t i = 0; i < f16.size(); ++i) {
            put_u16le(out, f16.data()[i].bits());
        }
    }
    return out;
}

} // namespace

void write_matrix_stream(const AnyMatrix& m, std::ostream& os) {
    const std::string bytes = encode(m);
    os.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!os) {
        throw IoError("failed to write matrix stream");
    }
}

AnyMatrix read_matrix_stream(std::istream& is) {
    std::string raw((std::istreambuf_iterator<char>(is)),
                    std::istreambuf_iterator<char>());
    const auto* p = reinterpret_cast<const unsigned char*>(raw.data());

    if (raw.size() < 14) {
        throw TruncatedFile("matrix file shorter than its header");
    }
    if (raw.compare(0, 4, kMagic, 4) != 0) {
        throw FormatError("bad magic: not a matrix file");
    }
    if (p[4] != kVersion) {
        throw FormatError("unsupported matrix file version " + std::to_string(p[4]));
    }
    if (p[5] > 1) {
        throw FormatError("unknown dtype code " + std::to_string(p[5]));
    }
    const auto dtype = static_cast<MatrixDType>(p[5]);
    const std::uint32_t rows = get_u32le(p + 6);
    const std::uint32_t cols = get_u32le(p + 10);
    if (rows == 0 || cols == 0 ||
        rows > static_cast<std::uint32_t>(std::numeric_limits<int>::max()) ||
        cols > static_cast<std::uint32_t>(std::numeric_limits<int>::max())) {
        throw FormatError("invalid matrix shape " + std::to_string(rows) + "x" +
                          std::to_string(cols));
    }
    const std::uint64_t count = static_cast<std::uint64_t>(rows) * cols;
    const std::uint64_t entry = dtype == MatrixDType::F32 ? 4 : 2;
    const std::uint64_t expect = 14 + count * entry;
    if (raw.size() < expect) {
        throw TruncatedFile("matrix file payload is truncated");
    }
    if (raw.size() > expect) {
        throw FormatError("matrix file has trailing bytes");
    }

    if (dtype == MatrixDType::F32) {
        std::vector<float> data(count);
        for (std::uint64_t i = 0; i < count; ++i) {
            data[i] = std::bit_cast<float>(get_u32le(p + 14 + i * 4));
        }
        MatrixF32 m(static_cast<int>(rows), static_cast<int>(cols));
        std::copy(data.begin(), data.end(), m.data());
        return m;
    }
    std::vector<Half> data(count);
    for (std::uint64_t i = 0; i < count; ++i) {
        data[i] = Half::from_bits(get_u16le(p + 14 + i * 2));
    }
    return MatrixF16(static_cast<int>(rows), static_cast<int>(cols), std::move(data));
}

void write_matrix(const AnyMatrix& m, const std::filesystem::path& path) {
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os) {
        throw IoError("cannot open '" + path.string() + "' for writing");
    }
    write_matrix_stream(m, os);
}

void write_matrix(const MatrixF32& m, const std::filesystem::path& path) {
    write_matrix(AnyMatrix(m), path);
}

void write_matrix(const MatrixF16& m, const std::filesystem::path& path) {
    write_matrix(AnyMatrix(m), path);
}

AnyMatrix read_matrix(const std::filesystem::path& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) {
        throw IoError("cannot open '" + path.string() + "' for reading");
    }
    return read_matrix_stream(is);
}

} // namespace mpgemm

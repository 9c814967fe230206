#pragma once

#include <filesystem>
#include <iosfwd>
#include <variant>

#include "mpgemm/matrix.hpp"

namespace mpgemm {

/// Binary matrix file format:
///
///   offset  size  field
///   0       4     magic "MPGM"
///   4       1     version (1)
///   5       1     dtype: 0 = single precision, 1 = half
///   6       4     rows, unsigned little-endian
///   10      4     cols, unsigned little-endian
///   14      -     payload, row-major little-endian entries
///                 (4 bytes each for single, 2 for half)
///
/// Round-trips are bit-exact for every dtype and shape.

enum class MatrixDType : std::uint8_t { F32 = 0, F16 = 1 };

using AnyMatrix = std::variant<MatrixF32, MatrixF16>;

void write_matrix(const MatrixF32& m, const std::filesystem::path& path);
void write_matrix(const MatrixF16& m, const std::filesystem::path& path);
void write_matrix(const AnyMatrix& m, const std::filesystem::path& path);

/// Reads either dtype. Throws IoError on filesystem failures, FormatError on
/// bad magic/version/dtype/shape or trailing bytes, TruncatedFile when the
/// file ends before the declared payload.
AnyMatrix read_matrix(const std::filesystem::path& path);

// Stream-level variants (used by the file functions and by tests).
void write_matrix_stream(const AnyMatrix& m, std::ostream& os);
AnyMatrix read_matrix_stream(std::istream& is);

} // namespace mpgemm

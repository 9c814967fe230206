#pragma once

#include <array>
#include <variant>

#include "mpgemm/half.hpp"
#include "mpgemm/matrix.hpp"

namespace mpgemm {

enum class FragmentRole { MatrixA, MatrixB, Accumulator };
enum class Layout { RowMajor, ColMajor };

/// Output precision of one matrix-multiply-and-accumulate: the accumulated
/// tile is produced either in full single precision or rounded to half.
enum class MmaMode { Fp32, Fp16 };

/// A 16x16 operand or accumulator tile. Operand fragments (MatrixA /
/// MatrixB) hold binary16 entries; accumulator fragments hold
/// single-precision entries. Fragments are immutable values once built.
class Fragment {
public:
    static constexpr int kDim = 16;

    FragmentRole role() const { return role_; }
    Layout layout() const { return layout_; }

    bool is_operand() const { return role_ != FragmentRole::Accumulator; }

    /// Operand entry at logical position (r, c). Requires an operand role.
    Half half_at(int r, int c) const {
        return std::get<OperandData>(data_)[idx(r, c)];
    }

    /// Accumulator entry at logical position (r, c). Requires the
    /// accumulator role.
    float f32_at(int r, int c) const {
        return std::get<AccumData>(data_)[idx(r, c)];
    }

private:
    using OperandData = std::array<Half, kDim * kDim>;
    using AccumData = std::array<float, kDim * kDim>;

    static int idx(int r, int c) { return r * kDim + c; }

    FragmentRole role_ = FragmentRole::Accumulator;
    Layout layout_ = Layout::RowMajor;
    std::variant<OperandData, AccumData> data_{AccumData{}};

    friend Fragment fill_fragment(FragmentRole role, float value);
    friend Fragment load_fragment(const MatrixF32& src, FragmentRole role,
                                  Layout layout, int row0, int col0);
    friend Fragment load_fragment(const MatrixF16& src, FragmentRole role,
                                  Layout layout, int row0, int col0);
    friend Fragment mma_sync(const Fragment& a, const Fragment& b,
                             const Fragment& c, MmaMode mode);
};

/// All 256 entries set to value; operand roles round it to half first.
Fragment fill_fragment(FragmentRole role, float value);

/// Loads the 16x16 region of src anchored at (row0, col0). Single-precision
/// sources are rounded entry-wise to half for operand roles. With ColMajor
/// the region is read with transposed indexing: fragment(i, j) = region(j, i).
/// Throws DimensionMismatch if the region does not lie within src.
Fragment load_fragment(const MatrixF32& src, FragmentRole role, Layout layout,
                       int row0 = 0, int col0 = 0);
Fragment load_fragment(const MatrixF16& src, FragmentRole role, Layout layout,
                       int row0 = 0, int col0 = 0);

/// One 16x16x16 matrix-multiply-and-accumulate:
///   D[i][j] = fold over k ascending of acc <- fl32(acc + widen(a[i][k]) * widen(b[k][j]))
/// seeded with acc = c[i][j]. Operand products are exact in single precision
/// (11-bit significands), so every step performs exactly one rounding, as a
/// fused multiply-add would. With MmaMode::Fp16 each final entry is passed
/// through round_to_half and widened. Throws RoleMismatch unless a, b, c are
/// MatrixA, MatrixB and Accumulator fragments respectively.
Fragment mma_sync(const Fragment& a, const Fragment& b, const Fragment& c,
                  MmaMode mode = MmaMode::Fp32);

/// Copies an accumulator fragment out as a 16x16 matrix, bit-exactly. With
/// ColMajor the result is the transpose of the fragment's logical layout.
MatrixF32 store_fragment(const Fragment& d, Layout layout);

} // namespace mpgemm

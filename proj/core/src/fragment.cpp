#include "mpgemm/fragment.hpp"

#include <string>

namespace mpgemm {

namespace {

constexpr int kDim = Fragment::kDim;

void check_region(int rows, int cols, int row0, int col0) {
    if (row0 < 0 || col0 < 0 || row0 + kDim > rows || col0 + kDim > cols) {
        throw DimensionMismatch("fragment source region must be exactly 16x16; "
                                "matrix is " + std::to_string(rows) + "x" +
                                std::to_string(cols) + " with origin (" +
                                std::to_string(row0) + "," + std::to_string(col0) + ")");
    }
}

} // namespace

Fragment fill_fragment(FragmentRole role, float value) {
    Fragment f;
    f.role_ = role;
    f.layout_ = Layout::RowMajor;
    if (role == FragmentRole::Accumulator) {
        Fragment::AccumData d;
        d.fill(value);
        f.data_ = d;
    } else {
        Fragment::OperandData d;
        d.fill(round_to_half(value));
        f.data_ = d;
    }
    return f;
}

Fragment load_fragment(const MatrixF32& src, FragmentRole role, Layout layout,
                       int row0, int col0) {
    check_region(src.rows(), src.cols(), row0, col0);
    Fragment f;
    f.role_ = role;
    f.layout_ = layout;
    if (role == FragmentRole::Accumulator) {
        Fragment::AccumData d;
        for (int i = 0; i < kDim; ++i) {
            for (int j = 0; j < kDim; ++j) {
                const float v = layout == Layout::RowMajor
                                    ? src.at(row0 + i, col0 + j)
                                    : src.at(row0 + j, col0 + i);
                d[i * kDim + j] = v;
            }
        }
        f.data_ = d;
    } else {
        Fragment::OperandData d;
        for (int i = 0; i < kDim; ++i) {
            for (int j = 0; j < kDim; ++j) {
                const float v = layout == Layout::RowMajor
                                    ? src.at(row0 + i, col0 + j)
                                    : src.at(row0 + j, col0 + i);
                d[i * kDim + j] = round_to_half(v);
            }
        }
        f.data_ = d;
    }
    return f;
}

Fragment load_fragment(const MatrixF16& src, FragmentRole role, Layout layout,
                       int row0, int col0) {
    check_region(src.rows(), src.cols(), row0, col0);
    Fragment f;
    f.role_ = role;
    f.layout_ = layout;
    if (role == FragmentRole::Accumulator) {
        Fragment::AccumData d;
        for (int i = 0; i < kDim; ++i) {
            for (int j = 0; j < kDim; ++j) {
                const Half v = layout == Layout::RowMajor
                                   ? src.at(row0 + i, col0 + j)
                                   : src.at(row0 + j, col0 + i);
                d[i * kDim + j] = widen(v);
            }
        }
        f.data_ = d;
    } else {
        Fragment::OperandData d;
        for (int i = 0; i < kDim; ++i) {
            for (int j = 0; j < kDim; ++j) {
                d[i * kDim + j] = layout == Layout::RowMajor
                                      ? src.at(row0 + i, col0 + j)
                                      : src.at(row0 + j, col0 + i);
            }
        }
        f.data_ = d;
    }
    return f;
}

Fragment mma_sync(const Fragment& a, const Fragment& b, const Fragment& c,
                  MmaMode mode) {
    if (a.role() != FragmentRole::MatrixA || b.role() != FragmentRole::MatrixB ||
        c.role() != FragmentRole::Accumulator) {
        throw RoleMismatch("mma_sync requires (MatrixA, MatrixB, Accumulator) fragments");
    }

    // Widen operands once; all arithmetic below is single precision.
    std::array<float, kDim * kDim> aw;
    std::array<float, kDim * kDim> bw;
    for (int i = 0; i < kDim * kDim; ++i) {
        aw[i] = widen(std::get<Fragment::OperandData>(a.data_)[i]);
        bw[i] = widen(std::get<Fragment::OperandData>(b.data_)[i]);
    }

    Fragment::AccumData d = std::get<Fragment::AccumData>(c.data_);
    for (int i = 0; i < kDim; ++i) {
        float* drow = d.data() + i * kDim;
        const float* arow = aw.data() + i * kDim;
        for (int k = 0; k < kDim; ++k) {
            const float av = arow[k];
            const float* brow = bw.data() + k * kDim;
            for (int j = 0; j < kDim; ++j) {
                // Exact product, then one rounding in the add: the FMA contract.
                drow[j] += av * brow[j];
            }
        }
    }
    if (mode == MmaMode::Fp16) {
        for (float& v : d) {
            v = widen(round_to_half(v));
        }
    }

    Fragment out;
    out.role_ = FragmentRole::Accumulator;
    out.layout_ = Layout::RowMajor;
    out.data_ = d;
    return out;
}

MatrixF32 store_fragment(const Fragment& d, Layout layout) {
    if (d.role() != FragmentRole::Accumulator) {
        throw RoleMismatch("store_fragment requires an accumulator fragment");
    }
    MatrixF32 out(kDim, kDim);
    for (int i = 0; i < kDim; ++i) {
        for (int j = 0; j < kDim; ++j) {
            if (layout == Layout::RowMajor) {
                out.at(i, j) = d.f32_at(i, j);
            } else {
                out.at(i, j) = d.f32_at(j, i);
            }
        }
    }
    return out;
}

} // namespace mpgemm

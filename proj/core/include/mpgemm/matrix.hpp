#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "mpgemm/errors.hpp"
#include "mpgemm/half.hpp"

namespace mpgemm {

/// Dense row-major single-precision matrix.
class MatrixF32 {
public:
    /// Zero-filled rows x cols matrix. Throws DimensionMismatch unless both
    /// counts are positive.
    MatrixF32(int rows, int cols);

    /// Adopts row-major data. Throws DimensionMismatch on a length mismatch
    /// and RangeOverflow if any entry is non-finite (construction requires
    /// finite entries; computed results may later store inf through at()).
    MatrixF32(int rows, int cols, std::vector<float> data);

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    float& at(int r, int c) { return data_[index(r, c)]; }
    float at(int r, int c) const { return data_[index(r, c)]; }

    float* data() { return data_.data(); }
    const float* data() const { return data_.data(); }
    std::size_t size() const { return data_.size(); }

    float* row(int r) { return data_.data() + static_cast<std::size_t>(r) * cols_; }
    const float* row(int r) const {
        return data_.data() + static_cast<std::size_t>(r) * cols_;
    }

    bool same_shape(const MatrixF32& other) const {
        return rows_ == other.rows_ && cols_ == other.cols_;
    }

private:
    std::size_t index(int r, int c) const {
        return static_cast<std::size_t>(r) * cols_ + c;
    }

    int rows_ = 0;
    int cols_ = 0;
    std::vector<float> data_;
};

/// Dense row-major matrix of emulated binary16 entries.
class MatrixF16 {
public:
    MatrixF16(int rows, int cols);
    MatrixF16(int rows, int cols, std::vector<Half> data);

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    Half& at(int r, int c) { return data_[index(r, c)]; }
    Half at(int r, int c) const { return data_[index(r, c)]; }

    Half* data() { return data_.data(); }
    const Half* data() const { return data_.data(); }
    std::size_t size() const { return data_.size(); }

    bool same_shape(const MatrixF16& other) const {
        return rows_ == other.rows_ && cols_ == other.cols_;
    }

private:
    std::size_t index(int r, int c) const {
        return static_cast<std::size_t>(r) * cols_ + c;
    }

    int rows_ = 0;
    int cols_ = 0;
    std::vector<Half> data_;
};

/// Entry-wise round_to_half.
MatrixF16 round_matrix(const MatrixF32& a);

/// Entry-wise exact widening back to single precision.
MatrixF32 widen_matrix(const MatrixF16& a);

} // namespace mpgemm

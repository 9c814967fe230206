#include "mpgemm/matrix.hpp"

#include <cmath>
#include <string>

namespace mpgemm {

namespace {

void check_dims(int rows, int cols) {
    if (rows <= 0 || cols <= 0) {
        throw DimensionMismatch("matrix dimensions must be positive, got " +
                                std::to_string(rows) + "x" + std::to_string(cols));
    }
}

} // namespace

MatrixF32::MatrixF32(int rows, int cols) : rows_(rows), cols_(cols) {
    check_dims(rows, cols);
    data_.assign(static_cast<std::size_t>(rows) * cols, 0.0f);
}

MatrixF32::MatrixF32(int rows, int cols, std::vector<float> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
    check_dims(rows, cols);
    if (data_.size() != static_cast<std::size_t>(rows) * cols) {
        throw DimensionMismatch("matrix data length " + std::to_string(data_.size()) +
                                " does not match " + std::to_string(rows) + "x" +
                                std::to_string(cols));
    }
    for (float v : data_) {
        if (!std::isfinite(v)) {
            throw RangeOverflow("matrix entries must be finite on construction");
        }
    }
}

MatrixF16::MatrixF16(int rows, int cols) : rows_(rows), cols_(cols) {
    check_dims(rows, cols);
    data_.assign(static_cast<std::size_t>(rows) * cols, Half{});
}

MatrixF16::MatrixF16(int rows, int cols, std::vector<Half> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
    check_dims(rows, cols);
    if (data_.size() != static_cast<std::size_t>(rows) * cols) {
        throw DimensionMismatch("matrix data length " + std::to_string(data_.size()) +
                                " does not match " + std::to_string(rows) + "x" +
                                std::to_string(cols));
    }
}

MatrixF16 round_matrix(const MatrixF32& a) {
    MatrixF16 out(a.rows(), a.cols());
    const float* src = a.data();
    Half* dst = out.data();
    for (std::size_t i = 0; i < a.size(); ++i) {
        dst[i] = round_to_half(src[i]);
    }
    return out;
}

MatrixF32 widen_matrix(const MatrixF16& a) {
    MatrixF32 out(a.rows(), a.cols());
    const Half* src = a.data();
    float* dst = out.data();
    for (std::size_t i = 0; i < a.size(); ++i) {
        dst[i] = widen(src[i]);
    }
    return out;
}

} // namespace mpgemm

#pragma once

#include <cstdint>
#include <vector>

#include "mpgemm/fragment.hpp"
#include "mpgemm/matrix.hpp"

namespace mpgemm {

/// Arithmetic mode of a GEMM, C = alpha*A*B + beta*C.
enum class AccumMode {
    Fp32Oracle,  ///< single-precision inputs, fused single-precision fold
    MixedTensor, ///< half inputs, exact products, single-precision fold
    Fp16Accum,   ///< as MixedTensor but rounded to half between 16-wide k-tiles
    Fp32Kahan,   ///< half inputs, compensated single-precision accumulation
};

struct GemmConfig {
    float alpha = 1.0f;
    float beta = 1.0f;
    AccumMode accum_mode = AccumMode::MixedTensor;
    int tile = 16; ///< tile edge; fixed at 16 for the tensor modes
};

/// Every mode folds each output entry over k in ascending order with one
/// single-precision rounding per step, seeded with fl(beta * C[i][j]):
///
///   acc <- fl32(acc + a_ik * b_kj)
///
/// so the modes differ only in operand precision and accumulation scheme,
/// never in operation order. alpha is applied to A entries before the fold
/// (rounded back to half first in the half-input modes). Dimensions that are
/// not multiples of 16 are zero-padded to the 16x16x16 tile grid and the
/// result is cropped.

/// Reference single-precision GEMM (naive schoolbook order, fused steps).
MatrixF32 gemm_oracle(const MatrixF32& a, const MatrixF32& b, const MatrixF32& c,
                      const GemmConfig& cfg = {});

/// Mixed-precision tiled GEMM: half operands, exact products, fp32 fold.
/// Each 16x16x16 tile product carries the mma_sync contract; k-tiles are
/// visited in ascending order with the running tile fragment as accumulator.
MatrixF32 gemm_mixed(const MatrixF16& a, const MatrixF16& b, const MatrixF32& c,
                     const GemmConfig& cfg = {});

/// Half-accumulate GEMM: as gemm_mixed, but every tile output is rounded to
/// half between k-tiles (MmaMode::Fp16).
MatrixF16 gemm_half_accum(const MatrixF16& a, const MatrixF16& b, const MatrixF16& c,
                          const GemmConfig& cfg = {});

/// Same exact products as gemm_mixed, with per-entry compensated (Kahan)
/// summation in single precision; the compensation term is discarded at the
/// end. Accumulates over the true k extent (no tile structure).
MatrixF32 gemm_kahan(const MatrixF16& a, const MatrixF16& b, const MatrixF32& c,
                     const GemmConfig& cfg = {});

/// Independent 16x16 mixed-precision products: element i of the result is
/// bit-identical to gemm_mixed(a[i], b[i], c[i]) regardless of batch size or
/// worker count. Throws LengthMismatch on unequal list lengths and
/// DimensionMismatch if any matrix is not 16x16.
std::vector<MatrixF32> gemm_batched(const std::vector<MatrixF16>& a_batch,
                                    const std::vector<MatrixF16>& b_batch,
                                    const std::vector<MatrixF32>& c_batch,
                                    const GemmConfig& cfg = {});

} // namespace mpgemm

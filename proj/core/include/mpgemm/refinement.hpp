#pragma once

#include "mpgemm/gemm.hpp"
#include "mpgemm/matrix.hpp"

namespace mpgemm {

enum class RefinementMode { None, OneSided, TwoSided };

/// Decomposition of a single-precision matrix into its half rounding and the
/// rounding residual: widen(half_part) + residual_f32 == original, exactly.
struct ResidualPair {
    MatrixF16 half_part;    ///< entry-wise round_to_half of the original
    MatrixF16 residual;     ///< residual rounded to half for the tensor path
    MatrixF32 residual_f32; ///< exact residual, kept for diagnostics
};

/// Splits a into rounding + residual. The subtraction a - widen(half_part)
/// is exact for every entry (Sterbenz: the rounding is within a factor of
/// two of the value, and values that round to zero subtract zero). Throws
/// RangeOverflow if any entry rounds to infinity.
ResidualPair split(const MatrixF32& a);

/// One-sided refined product, evaluated left to right as the two-stage
/// pipeline
///
///   stage 1:  T = R_A * B_half            (zero accumulator)
///   stage 2:  D = A_half * B_half + (T + beta*C)
///
/// where each stage is one gemm_mixed call whose accumulator is seeded by
/// the previous stage's output; beta*C is injected in the final stage only.
/// Costs two GEMM stages. When the residual is zero the result is
/// bit-identical to the unrefined gemm_mixed.
MatrixF32 refined_gemm_one_sided(const MatrixF32& a, const MatrixF16& b_half,
                                 const MatrixF32& c, const GemmConfig& cfg = {});

/// Two-sided refined product: the four-stage pipeline, in the term order
///
///   R_A*R_B  ->  A_half*R_B  ->  R_A*B_half  ->  A_half*B_half (+ beta*C)
///
/// each stage seeding the next stage's accumulator. Costs four GEMM stages.
MatrixF32 refined_gemm_two_sided(const MatrixF32& a, const MatrixF32& b,
                                 const MatrixF32& c, const GemmConfig& cfg = {});

/// Pipeline bodies on pre-split operands. Experiment timing uses these so
/// that rounding/splitting cost stays outside the measured region.
MatrixF32 one_sided_from_split(const ResidualPair& a, const MatrixF16& b_half,
                               const MatrixF32& c, const GemmConfig& cfg = {});
MatrixF32 two_sided_from_split(const ResidualPair& a, const ResidualPair& b,
                               const MatrixF32& c, const GemmConfig& cfg = {});

} // namespace mpgemm

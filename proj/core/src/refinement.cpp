#include "mpgemm/refinement.hpp"

namespace mpgemm {

namespace {

GemmConfig stage_cfg(const GemmConfig& cfg, float beta) {
    GemmConfig s = cfg;
    s.beta = beta;
    s.accum_mode = AccumMode::MixedTensor;
    return s;
}

// Final-stage accumulator: previous stage output plus the caller's beta*C.
MatrixF32 inject_beta_c(const MatrixF32& prev, const MatrixF32& c, float beta) {
    if (beta == 0.0f) {
        return prev;
    }
    MatrixF32 out(prev.rows(), prev.cols());
    for (int r = 0; r < prev.rows(); ++r) {
        for (int j = 0; j < prev.cols(); ++j) {
            out.at(r, j) = prev.at(r, j) + beta * c.at(r, j);
        }
    }
    return out;
}

void check_refined_dims(int am, int ak, int bk, int bn, int cm, int cn) {
    if (ak != bk || am != cm || bn != cn) {
        throw DimensionMismatch("refined gemm dimensions do not agree");
    }
}

} // namespace

ResidualPair split(const MatrixF32& a) {
    MatrixF16 half_part = round_matrix(a);
    MatrixF32 residual_f32(a.rows(), a.cols());
    for (int r = 0; r < a.rows(); ++r) {
        for (int c = 0; c < a.cols(); ++c) {
            const Half h = half_part.at(r, c);
            if (is_inf(h)) {
                throw RangeOverflow("split: entry rounds to infinity, residual undefined");
            }
            residual_f32.at(r, c) = a.at(r, c) - widen(h);
        }
    }
    MatrixF16 residual = round_matrix(residual_f32);
    return ResidualPair{std::move(half_part), std::move(residual),
                        std::move(residual_f32)};
}

MatrixF32 one_sided_from_split(const ResidualPair& a, const MatrixF16& b_half,
                               const MatrixF32& c, const GemmConfig& cfg) {
    check_refined_dims(a.half_part.rows(), a.half_part.cols(), b_half.rows(),
                       b_half.cols(), c.rows(), c.cols());
    const MatrixF32 zero(c.rows(), c.cols());
    MatrixF32 t = gemm_mixed(a.residual, b_half, zero, stage_cfg(cfg, 0.0f));
    return gemm_mixed(a.half_part, b_half, inject_beta_c(t, c, cfg.beta),
                      stage_cfg(cfg, 1.0f));
}

MatrixF32 two_sided_from_split(const ResidualPair& a, const ResidualPair& b,
                               const MatrixF32& c, const GemmConfig& cfg) {
    check_refined_dims(a.half_part.rows(), a.half_part.cols(), b.half_part.rows(),
                       b.half_part.cols(), c.rows(), c.cols());
    const MatrixF32 zero(c.rows(), c.cols());
    MatrixF32 t = gemm_mixed(a.residual, b.residual, zero, stage_cfg(cfg, 0.0f));
    t = gemm_mixed(a.half_part, b.residual, t, stage_cfg(cfg, 1.0f));
    t = gemm_mixed(a.residual, b.half_part, t, stage_cfg(cfg, 1.0f));
    return gemm_mixed(a.half_part, b.half_part, inject_beta_c(t, c, cfg.beta),
                      stage_cfg(cfg, 1.0f));
}

MatrixF32 refined_gemm_one_sided(const MatrixF32& a, const MatrixF16& b_half,
                                 const MatrixF32& c, const GemmConfig& cfg) {
    return one_sided_from_split(split(a), b_half, c, cfg);
}

MatrixF32 refined_gemm_two_sided(const MatrixF32& a, const MatrixF32& b,
                                 const MatrixF32& c, const GemmConfig& cfg) {
    return two_sided_from_split(split(a), split(b), c, cfg);
}

} // namespace mpgemm

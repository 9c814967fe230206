#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "mpgemm/gemm.hpp"
#include "mpgemm/matrix.hpp"
#include "mpgemm/refinement.hpp"

namespace mpgemm {

/// An arithmetic mode as selected in experiments: base accumulation scheme
/// plus residual refinement. Refinement applies to the MixedTensor path only.
struct ModeSpec {
    AccumMode accum = AccumMode::MixedTensor;
    RefinementMode refine = RefinementMode::None;

    bool operator==(const ModeSpec&) const = default;
};

/// Canonical mode token, e.g. "mixed", "mixed-refine-ab", "kahan".
std::string to_string(const ModeSpec& mode);

/// Parses a mode token; throws ConfigError on unknown tokens.
ModeSpec parse_mode(const std::string& token);

/// Per-trial record of one measured GEMM configuration.
struct ErrorReport {
    int n = 0; ///< square matrix edge; for batched runs, the batch size
    ModeSpec mode;
    bool batched = false;
    int trial = 0;
    float max_norm_error = 0.0f;
    std::uint64_t flops = 0;
    double wall_time_s = 0.0;
    double ref_wall_time_s = 0.0; ///< reference GEMM cost; not serialized
    std::uint64_t seed = 0;

    /// Mode column value: the mode token, or "batched" for batched runs.
    std::string mode_label() const;
};

/// Entry-wise difference test - ref in single precision.
MatrixF32 error_matrix(const MatrixF32& c_test, const MatrixF32& c_ref);

/// Maximum absolute entry.
float max_norm(const MatrixF32& e);

/// Diagnostic double-precision max |test - ref| against an externally
/// computed reference; used by oracle tests, never as the headline error.
double max_abs_diff(const MatrixF32& test, std::span<const double> ref);

/// Naive-algorithm flop count: stages * 2*m*n*k, plus 2*m*n when beta != 0.
std::uint64_t flops_gemm(int m, int n, int k, int stages, bool beta_nonzero);

struct TrialSample {
    double time_s = 0.0;
    std::uint64_t flops = 0;
};

struct SummaryStats {
    double harmonic_mean_flops_per_s = 0.0;
    double arithmetic_mean_time_s = 0.0;
    double min_time_s = 0.0;
    double max_time_s = 0.0;
    double min_flops_per_s = 0.0;
    double max_flops_per_s = 0.0;
};

/// Harmonic mean of per-trial flops/s, arithmetic mean of times, min/max
/// over trials. Throws EmptyInput on an empty list.
SummaryStats summarize(std::span<const TrialSample> trials);

} // namespace mpgemm

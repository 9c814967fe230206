#include "mpgemm/metrics.hpp"

#include <algorithm>
#include <cmath>

namespace mpgemm {

std::string to_string(const ModeSpec& mode) {
    switch (mode.accum) {
    case AccumMode::Fp32Oracle:
        return "fp32";
    case AccumMode::Fp16Accum:
        return "fp16-accum";
    case AccumMode::Fp32Kahan:
        return "kahan";
    case AccumMode::MixedTensor:
        break;
    }
    switch (mode.refine) {
    case RefinementMode::OneSided:
        return "mixed-refine-a";
    case RefinementMode::TwoSided:
        return "mixed-refine-ab";
    case RefinementMode::None:
        break;
    }
    return "mixed";
}

ModeSpec parse_mode(const std::string& token) {
    if (token == "fp32") {
        return {AccumMode::Fp32Oracle, RefinementMode::None};
    }
    if (token == "mixed") {
        return {AccumMode::MixedTensor, RefinementMode::None};
    }
    if (token == "mixed-refine-a") {
        return {AccumMode::MixedTensor, RefinementMode::OneSided};
    }
    if (token == "mixed-refine-ab") {
        return {AccumMode::MixedTensor, RefinementMode::TwoSided};
    }
    if (token == "fp16-accum") {
        return {AccumMode::Fp16Accum, RefinementMode::None};
    }
    if (token == "kahan") {
        return {AccumMode::Fp32Kahan, RefinementMode::None};
    }
    throw ConfigError("unknown mode '" + token +
                      "' (expected fp32, mixed, mixed-refine-a, mixed-refine-ab, "
                      "fp16-accum or kahan)");
}

std::string ErrorReport::mode_label() const {
    return batched ? "batched" : to_string(mode);
}

MatrixF32 error_matrix(const MatrixF32& c_test, const MatrixF32& c_ref) {
    if (!c_test.same_shape(c_ref)) {
        throw DimensionMismatch("error_matrix requires matching shapes");
    }
    MatrixF32 e(c_test.rows(), c_test.cols());
    const float* t = c_test.data();
    const float* r = c_ref.data();
    float* out = e.data();
    for (std::size_t i = 0; i < e.size(); ++i) {
        out[i] = t[i] - r[i];
    }
    return e;
}

float max_norm(const MatrixF32& e) {
    float m = 0.0f;
    const float* p = e.data();
    for (std::size_t i = 0; i < e.size(); ++i) {
        m = std::max(m, std::fabs(p[i]));
    }
    return m;
}

double max_abs_diff(const MatrixF32& test, std::span<const double> ref) {
    if (ref.size() != test.size()) {
        throw DimensionMismatch("max_abs_diff requires matching sizes");
    }
    double m = 0.0;
    const float* t = test.data();
    for (std::size_t i = 0; i < ref.size(); ++i) {
        m = std::max(m, std::fabs(static_cast<double>(t[i]) - ref[i]));
    }
    return m;
}

std::uint64_t flops_gemm(int m, int n, int k, int stages, bool beta_nonzero) {
    const std::uint64_t mn = static_cast<std::uint64_t>(m) * static_cast<std::uint64_t>(n);
    const std::uint64_t per_stage = 2 * mn * static_cast<std::uint64_t>(k);
    return static_cast<std::uint64_t>(stages) * per_stage + (beta_nonzero ? 2 * mn : 0);
}

SummaryStats summarize(std::span<const TrialSample> trials) {
    if (trials.empty()) {
        throw EmptyInput("summarize requires at least one trial");
    }
    SummaryStats s;
    double inv_rate_sum = 0.0;
    double time_sum = 0.0;
    for (std::size_t i = 0; i < trials.size(); ++i) {
        const double rate = static_cast<double>(trials[i].flops) / trials[i].time_s;
        inv_rate_sum += 1.0 / rate;
        time_sum += trials[i].time_s;
        if (i == 0) {
            s.min_time_s = s.max_time_s = trials[i].time_s;
            s.min_flops_per_s = s.max_flops_per_s = rate;
        } else {
            s.min_time_s = std::min(s.min_time_s, trials[i].time_s);
            s.max_time_s = std::max(s.max_time_s, trials[i].time_s);
            s.min_flops_per_s = std::min(s.min_flops_per_s, rate);
            s.max_flops_per_s = std::max(s.max_flops_per_s, rate);
        }
    }
    s.harmonic_mean_flops_per_s = static_cast<double>(trials.size()) / inv_rate_sum;
    s.arithmetic_mean_time_s = time_sum / static_cast<double>(trials.size());
    return s;
}

} // namespace mpgemm

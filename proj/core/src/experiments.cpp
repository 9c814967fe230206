#include "mpgemm/experiments.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>

#include <json.hpp>

#include "mpgemm/gemm.hpp"
#include "mpgemm/refinement.hpp"
#include "mpgemm/rng.hpp"

namespace mpgemm {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

void validate(const ExperimentConfig& cfg, bool batched) {
    if (!batched) {
        if (cfg.sizes.empty()) {
            throw ConfigError("sweep requires at least one size");
        }
        for (int n : cfg.sizes) {
            if (n < 1) {
                throw ConfigError("sizes must be >= 1");
            }
        }
        if (cfg.modes.empty()) {
            throw ConfigError("sweep requires at least one mode");
        }
    } else {
        if (cfg.batch_sizes.empty()) {
            throw ConfigError("batched experiment requires batch sizes");
        }
        for (int s : cfg.batch_sizes) {
            if (s < 1) {
                throw ConfigError("batch sizes must be >= 1");
            }
        }
    }
    if (cfg.trials < 1) {
        throw ConfigError("trials must be >= 1");
    }
    if (!(cfg.dist.lo < cfg.dist.hi)) {
        throw ConfigError("distribution requires lo < hi");
    }
    if (!std::isfinite(cfg.alpha) || !std::isfinite(cfg.beta)) {
        throw ConfigError("alpha and beta must be finite");
    }
    for (const ModeSpec& m : cfg.modes) {
        if (m.refine != RefinementMode::None && m.accum != AccumMode::MixedTensor) {
            throw ConfigError("refinement applies to the mixed tensor mode only, not " +
                              to_string(ModeSpec{m.accum, RefinementMode::None}));
        }
    }
}

struct TimedResult {
    MatrixF32 value;
    double seconds;
    int stages;
};

TimedResult run_mode(const ModeSpec& mode, const MatrixF32& a, const MatrixF32& b,
                     const MatrixF32& c, GemmConfig g) {
    g.accum_mode = mode.accum;
    switch (mode.accum) {
    case AccumMode::Fp32Oracle: {
        const auto t0 = Clock::now();
        MatrixF32 r = gemm_oracle(a, b, c, g);
        return {std::move(r), seconds_since(t0), 1};
    }
    case AccumMode::MixedTensor: {
        if (mode.refine == RefinementMode::None) {
            const MatrixF16 ah = round_matrix(a);
            const MatrixF16 bh = round_matrix(b);
            const auto t0 = Clock::now();
            MatrixF32 r = gemm_mixed(ah, bh, c, g);
            return {std::move(r), seconds_since(t0), 1};
        }
        if (mode.refine == RefinementMode::OneSided) {
            const ResidualPair sa = split(a);
            const MatrixF16 bh = round_matrix(b);
            const auto t0 = Clock::now();
            MatrixF32 r = one_sided_from_split(sa, bh, c, g);
            return {std::move(r), seconds_since(t0), 2};
        }
        const ResidualPair sa = split(a);
        const ResidualPair sb = split(b);
        const auto t0 = Clock::now();
        MatrixF32 r = two_sided_from_split(sa, sb, c, g);
        return {std::move(r), seconds_since(t0), 4};
    }
    case AccumMode::Fp16Accum: {
        const MatrixF16 ah = round_matrix(a);
        const MatrixF16 bh = round_matrix(b);
        const MatrixF16 ch = round_matrix(c);
        const auto t0 = Clock::now();
        const MatrixF16 r16 = gemm_half_accum(ah, bh, ch, g);
        const double secs = seconds_since(t0);
        return {widen_matrix(r16), secs, 1};
    }
    case AccumMode::Fp32Kahan: {
        const MatrixF16 ah = round_matrix(a);
        const MatrixF16 bh = round_matrix(b);
        const auto t0 = Clock::now();
        MatrixF32 r = gemm_kahan(ah, bh, c, g);
        return {std::move(r), seconds_since(t0), 1};
    }
    }
    throw ConfigError("unhandled accumulation mode");
}

} // namespace

std::uint64_t sweep_stream(int role, int n, int trial) {
    return static_cast<std::uint64_t>(role) |
           (static_cast<std::uint64_t>(static_cast<std::uint32_t>(n)) << 2) |
           (static_cast<std::uint64_t>(static_cast<std::uint32_t>(trial)) << 34);
}

std::uint64_t batch_stream(int role, int batch_index, int trial) {
    return static_cast<std::uint64_t>(role) |
           (static_cast<std::uint64_t>(static_cast<std::uint32_t>(batch_index)) << 2) |
           (static_cast<std::uint64_t>(static_cast<std::uint32_t>(trial)) << 34) |
           (1ULL << 63);
}

MatrixF32 generate_matrix(int rows, int cols, const Distribution& dist,
                          std::uint64_t seed, std::uint64_t stream_id) {
    if (rows < 1 || cols < 1) {
        throw DimensionMismatch("generate_matrix requires positive dimensions");
    }
    if (!(dist.lo < dist.hi)) {
        throw ConfigError("distribution requires lo < hi");
    }
    const CounterRng rng(seed, stream_id);
    MatrixF32 m(rows, cols);
    float* data = m.data();
    const std::uint64_t count = m.size();
    for (std::uint64_t i = 0; i < count; ++i) {
        data[i] = rng.uniform_at(i, dist.lo, dist.hi);
    }
    return m;
}

MatrixF32 generate_matrix(int n, const Distribution& dist, std::uint64_t seed,
                          std::uint64_t stream_id) {
    return generate_matrix(n, n, dist, seed, stream_id);
}

std::vector<ErrorReport> run_error_sweep(const ExperimentConfig& cfg) {
    validate(cfg, false);
    const int num_modes = static_cast<int>(cfg.modes.size());
    std::vector<ErrorReport> out;
    out.reserve(cfg.sizes.size() * static_cast<std::size_t>(num_modes) * cfg.trials);

    for (int n : cfg.sizes) {
        // Indexed by (mode, trial); emitted in that order after the trial loop.
        std::vector<ErrorReport> block(static_cast<std::size_t>(num_modes) * cfg.trials);
        for (int trial = 0; trial < cfg.trials; ++trial) {
            MatrixF32 a = generate_matrix(n, cfg.dist, cfg.seed, sweep_stream(0, n, trial));
            MatrixF32 b = generate_matrix(n, cfg.dist, cfg.seed, sweep_stream(1, n, trial));
            if (cfg.pre_round_inputs) {
                a = widen_matrix(round_matrix(a));
                b = widen_matrix(round_matrix(b));
            }
            const bool want_c = cfg.random_c && cfg.beta != 0.0f;
            const MatrixF32 c = want_c ? generate_matrix(n, cfg.dist, cfg.seed,
                                                         sweep_stream(2, n, trial))
                                       : MatrixF32(n, n);

            GemmConfig g;
            g.alpha = cfg.alpha;
            g.beta = cfg.beta;

            const auto tref = Clock::now();
            const MatrixF32 ref = gemm_oracle(a, b, c, g);
            const double ref_seconds = seconds_since(tref);

            for (int mi = 0; mi < num_modes; ++mi) {
                TimedResult res = run_mode(cfg.modes[mi], a, b, c, g);
                ErrorReport& rep = block[static_cast<std::size_t>(mi) * cfg.trials + trial];
                rep.n = n;
                rep.mode = cfg.modes[mi];
                rep.trial = trial;
                rep.max_norm_error = max_norm(error_matrix(res.value, ref));
                rep.flops = flops_gemm(n, n, n, res.stages, cfg.beta != 0.0f);
                rep.wall_time_s = res.seconds;
                rep.ref_wall_time_s = ref_seconds;
                rep.seed = cfg.seed;
            }
        }
        out.insert(out.end(), block.begin(), block.end());
    }
    return out;
}

std::vector<ErrorReport> run_batched_experiment(const ExperimentConfig& cfg) {
    validate(cfg, true);
    std::vector<ErrorReport> out;
    GemmConfig g;
    g.alpha = cfg.alpha;
    g.beta = cfg.beta;

    for (int batch : cfg.batch_sizes) {
        for (int trial = 0; trial < cfg.trials; ++trial) {
            std::vector<MatrixF32> a32, b32;
            std::vector<MatrixF16> a16, b16;
            std::vector<MatrixF32> c32;
            a32.reserve(batch);
            b32.reserve(batch);
            a16.reserve(batch);
            b16.reserve(batch);
            c32.reserve(batch);
            for (int i = 0; i < batch; ++i) {
                a32.push_back(generate_matrix(16, cfg.dist, cfg.seed,
                                              batch_stream(0, i, trial)));
                b32.push_back(generate_matrix(16, cfg.dist, cfg.seed,
                                              batch_stream(1, i, trial)));
                if (cfg.pre_round_inputs) {
                    a32.back() = widen_matrix(round_matrix(a32.back()));
                    b32.back() = widen_matrix(round_matrix(b32.back()));
                }
                a16.push_back(round_matrix(a32.back()));
                b16.push_back(round_matrix(b32.back()));
                c32.emplace_back(16, 16);
            }

            const auto t0 = Clock::now();
            const std::vector<MatrixF32> results = gemm_batched(a16, b16, c32, g);
            const double seconds = seconds_since(t0);

            const auto tref = Clock::now();
            float worst = 0.0f;
            for (int i = 0; i < batch; ++i) {
                const MatrixF32 ref = gemm_oracle(a32[i], b32[i], c32[i], g);
                worst = std::max(worst, max_norm(error_matrix(results[i], ref)));
            }

            ErrorReport rep;
            rep.n = batch;
            rep.mode = ModeSpec{AccumMode::MixedTensor, RefinementMode::None};
            rep.batched = true;
            rep.trial = trial;
            rep.max_norm_error = worst;
            rep.flops = static_cast<std::uint64_t>(batch) *
                        flops_gemm(16, 16, 16, 1, cfg.beta != 0.0f);
            rep.wall_time_s = seconds;
            rep.ref_wall_time_s = seconds_since(tref);
            rep.seed = cfg.seed;
            out.push_back(rep);
        }
    }
    return out;
}

void write_csv(std::span<const ErrorReport> reports, std::ostream& os) {
    os << "n,mode,trial,max_norm_error,flops,wall_time_s,seed\n";
    char buf[160];
    for (const ErrorReport& r : reports) {
        std::snprintf(buf, sizeof(buf), "%d,%s,%d,%.9g,%llu,%.6e,%llu\n", r.n,
                      r.mode_label().c_str(), r.trial,
                      static_cast<double>(r.max_norm_error),
                      static_cast<unsigned long long>(r.flops), r.wall_time_s,
                      static_cast<unsigned long long>(r.seed));
        os << buf;
    }
    if (!os) {
        throw IoError("failed to write CSV report");
    }
}

void write_json(std::span<const ErrorReport> reports, std::ostream& os) {
    nlohmann::json arr = nlohmann::json::array();
    for (const ErrorReport& r : reports) {
        arr.push_back({{"n", r.n},
                       {"mode", r.mode_label()},
                       {"trial", r.trial},
                       {"max_norm_error", r.max_norm_error},
                       {"flops", r.flops},
                       {"wall_time_s", r.wall_time_s},
                       {"seed", r.seed}});
    }
    os << arr.dump(2) << '\n';
    if (!os) {
        throw IoError("failed to write JSON report");
    }
}

void write_report(std::span<const ErrorReport> reports, ReportFormat format,
                  const std::string& path) {
    const bool to_stdout = path.empty() || path == "-";
    std::ofstream file;
    if (!to_stdout) {
        file.open(path, std::ios::trunc);
        if (!file) {
            throw IoError("cannot open '" + path + "' for writing");
        }
    }
    std::ostream& os = to_stdout ? std::cout : file;
    if (format == ReportFormat::Csv) {
        write_csv(reports, os);
    } else {
        write_json(reports, os);
    }
}

} // namespace mpgemm

// mpgemm command-line tool: precision-loss sweeps, batched runs, matrix file
// utilities and one-shot GEMMs on matrix files.
//
// Every option can also be set through an MPGEMM_-prefixed environment
// variable (e.g. MPGEMM_SEED, MPGEMM_TRIALS); command-line flags win.

#include <cstdio>
#include <exception>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mpgemm/experiments.hpp"
#include "mpgemm/gemm.hpp"
#include "mpgemm/matrix_io.hpp"
#include "mpgemm/metrics.hpp"
#include "mpgemm/parallel.hpp"
#include "mpgemm/refinement.hpp"

using namespace mpgemm;

namespace {

Distribution parse_dist(const std::string& spec) {
    // uniform:LO:HI
    if (spec.rfind("uniform:", 0) != 0) {
        throw ConfigError("unsupported distribution '" + spec +
                          "' (expected uniform:LO:HI)");
    }
    const auto rest = spec.substr(8);
    const auto sep = rest.find(':');
    if (sep == std::string::npos) {
        throw ConfigError("distribution '" + spec + "' is missing a bound");
    }
    Distribution d;
    try {
        d.lo = std::stof(rest.substr(0, sep));
        d.hi = std::stof(rest.substr(sep + 1));
    } catch (const std::exception&) {
        throw ConfigError("cannot parse distribution bounds in '" + spec + "'");
    }
    if (!(d.lo < d.hi)) {
        throw ConfigError("distribution requires LO < HI");
    }
    return d;
}

std::vector<ModeSpec> parse_modes(const std::vector<std::string>& tokens) {
    std::vector<ModeSpec> modes;
    for (const auto& t : tokens) {
        modes.push_back(parse_mode(t));
    }
    return modes;
}

void print_group_summaries(const std::vector<ErrorReport>& reports) {
    // One summary line per (n, mode) group, using the harmonic-mean-of-rates
    // and arithmetic-mean-of-times conventions.
    std::size_t i = 0;
    while (i < reports.size()) {
        std::size_t j = i;
        std::vector<TrialSample> samples;
        double err_sum = 0.0;
        float err_min = 0.0f, err_max = 0.0f;
        while (j < reports.size() && reports[j].n == reports[i].n &&
               reports[j].mode_label() == reports[i].mode_label()) {
            samples.push_back({reports[j].wall_time_s, reports[j].flops});
            err_sum += reports[j].max_norm_error;
            err_min = j == i ? reports[j].max_norm_error
                             : std::min(err_min, reports[j].max_norm_error);
            err_max = j == i ? reports[j].max_norm_error
                             : std::max(err_max, reports[j].max_norm_error);
            ++j;
        }
        const SummaryStats s = summarize(samples);
        std::fprintf(stderr,
                     "# n=%-6d mode=%-16s trials=%-3zu mean_err=%.3e "
                     "err_range=[%.3e, %.3e] hmean=%.3e flops/s mean_time=%.3es\n",
                     reports[i].n, reports[i].mode_label().c_str(), samples.size(),
                     err_sum / static_cast<double>(samples.size()), err_min, err_max,
                     s.harmonic_mean_flops_per_s, s.arithmetic_mean_time_s);
        i = j;
    }
}

MatrixF32 as_f32(const AnyMatrix& m) {
    if (const auto* f32 = std::get_if<MatrixF32>(&m)) {
        return *f32;
    }
    return widen_matrix(std::get<MatrixF16>(m));
}

MatrixF16 as_f16(const AnyMatrix& m) {
    if (const auto* f16 = std::get_if<MatrixF16>(&m)) {
        return *f16;
    }
    return round_matrix(std::get<MatrixF32>(m));
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Mixed-precision matrix-multiply emulation and precision-loss experiments"};
    app.require_subcommand(1);

    int threads = 0;
    app.add_option("--threads", threads, "Worker threads (default: all cores)")
        ->envname("MPGEMM_THREADS");

    // Common experiment options, shared by sweep and batched.
    ExperimentConfig cfg;
    std::vector<std::string> mode_tokens{"mixed"};
    std::string dist_spec = "uniform:-1:1";
    std::string format = "csv";
    std::string out_path = "-";
    bool quiet = false;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--trials", cfg.trials, "Trials per configuration")
            ->envname("MPGEMM_TRIALS");
        cmd->add_option("--seed", cfg.seed, "RNG seed")->envname("MPGEMM_SEED");
        cmd->add_option("--alpha", cfg.alpha, "GEMM alpha")->envname("MPGEMM_ALPHA");
        cmd->add_option("--beta", cfg.beta, "GEMM beta")->envname("MPGEMM_BETA");
        cmd->add_option("--dist", dist_spec, "Input distribution, uniform:LO:HI")
            ->envname("MPGEMM_DIST");
        cmd->add_option("--format", format, "Report format: csv or json")
            ->check(CLI::IsMember({"csv", "json"}))
            ->envname("MPGEMM_FORMAT");
        cmd->add_option("--out", out_path, "Report path ('-' for stdout)")
            ->envname("MPGEMM_OUT");
        cmd->add_flag("--random-c", cfg.random_c,
                      "Initialize C randomly (full paper protocol) instead of zeros");
        cmd->add_flag("--pre-round-inputs", cfg.pre_round_inputs,
                      "Diagnostic: round A and B to half before running");
        cmd->add_flag("--quiet", quiet, "Suppress per-group summary lines on stderr");
    };

    // sweep
    auto* sweep = app.add_subcommand("sweep", "Precision-loss sweep over sizes and modes");
    sweep->add_option("--sizes", cfg.sizes, "Square matrix sizes")
        ->delimiter(',')
        ->required()
        ->envname("MPGEMM_SIZES");
    sweep->add_option("--modes", mode_tokens,
                      "Modes: fp32, mixed, mixed-refine-a, mixed-refine-ab, "
                      "fp16-accum, kahan")
        ->delimiter(',')
        ->envname("MPGEMM_MODES");
    add_common(sweep);

    // batched
    auto* batched = app.add_subcommand("batched", "Batched 16x16 GEMM error experiment");
    batched->add_option("--batch-sizes", cfg.batch_sizes, "Batch sizes")
        ->delimiter(',')
        ->required()
        ->envname("MPGEMM_BATCH_SIZES");
    add_common(batched);

    // gemm
    auto* gemm = app.add_subcommand("gemm", "One-shot GEMM on matrix files");
    std::string a_path, b_path, c_path, gemm_out, gemm_mode = "mixed";
    bool check_oracle = false;
    float g_alpha = 1.0f, g_beta = 1.0f;
    gemm->add_option("--a", a_path, "Left operand matrix file")->required();
    gemm->add_option("--b", b_path, "Right operand matrix file")->required();
    gemm->add_option("--c", c_path, "Accumulator matrix file (default: zeros)");
    gemm->add_option("--mode", gemm_mode, "Arithmetic mode");
    gemm->add_option("--alpha", g_alpha, "GEMM alpha");
    gemm->add_option("--beta", g_beta, "GEMM beta");
    gemm->add_option("--out", gemm_out, "Result matrix file")->required();
    gemm->add_flag("--check", check_oracle,
                   "Also print the max-norm error against the fp32 reference");

    // convert
    auto* convert = app.add_subcommand("convert", "Convert a matrix file between single and half");
    std::string conv_in, conv_out, conv_to = "half";
    convert->add_option("--in", conv_in, "Input matrix file")->required();
    convert->add_option("--out", conv_out, "Output matrix file")->required();
    convert->add_option("--to", conv_to, "Target dtype: half or single")
        ->check(CLI::IsMember({"half", "single"}));

    // split-demo
    auto* split_demo =
        app.add_subcommand("split-demo", "Show the rounding-residual decomposition of a matrix file");
    std::string split_in, out_half, out_residual, out_residual_f32;
    int show = 4;
    split_demo->add_option("--in", split_in, "Single-precision matrix file")->required();
    split_demo->add_option("--show", show, "Entries to print (default 4)");
    split_demo->add_option("--out-half", out_half, "Write the half part to this file");
    split_demo->add_option("--out-residual", out_residual,
                           "Write the half-rounded residual to this file");
    split_demo->add_option("--out-residual-f32", out_residual_f32,
                           "Write the exact residual to this file");

    CLI11_PARSE(app, argc, argv);

    try {
        if (threads > 0) {
            set_thread_count(threads);
        }
        const ReportFormat rf = format == "json" ? ReportFormat::Json : ReportFormat::Csv;

        if (sweep->parsed()) {
            cfg.dist = parse_dist(dist_spec);
            cfg.modes = parse_modes(mode_tokens);
            const auto reports = run_error_sweep(cfg);
            write_report(reports, rf, out_path);
            if (!quiet) {
                print_group_summaries(reports);
            }
        } else if (batched->parsed()) {
            cfg.dist = parse_dist(dist_spec);
            const auto reports = run_batched_experiment(cfg);
            write_report(reports, rf, out_path);
            if (!quiet) {
                print_group_summaries(reports);
            }
        } else if (gemm->parsed()) {
            const ModeSpec mode = parse_mode(gemm_mode);
            const MatrixF32 a = as_f32(read_matrix(a_path));
            const MatrixF32 b = as_f32(read_matrix(b_path));
            const MatrixF32 c = c_path.empty() ? MatrixF32(a.rows(), b.cols())
                                               : as_f32(read_matrix(c_path));
            GemmConfig g;
            g.alpha = g_alpha;
            g.beta = g_beta;

            std::optional<MatrixF32> result;
            int stages = 1;
            switch (mode.accum) {
            case AccumMode::Fp32Oracle:
                result = gemm_oracle(a, b, c, g);
                break;
            case AccumMode::MixedTensor:
                if (mode.refine == RefinementMode::None) {
                    result = gemm_mixed(round_matrix(a), round_matrix(b), c, g);
                } else if (mode.refine == RefinementMode::OneSided) {
                    result = refined_gemm_one_sided(a, round_matrix(b), c, g);
                    stages = 2;
                } else {
                    result = refined_gemm_two_sided(a, b, c, g);
                    stages = 4;
                }
                break;
            case AccumMode::Fp16Accum: {
                const MatrixF16 r16 =
                    gemm_half_accum(round_matrix(a), round_matrix(b), round_matrix(c), g);
                write_matrix(r16, gemm_out);
                result.reset();
                std::fprintf(stderr, "# wrote %dx%d half matrix to %s\n", r16.rows(),
                             r16.cols(), gemm_out.c_str());
                if (check_oracle) {
                    const MatrixF32 ref = gemm_oracle(a, b, c, g);
                    std::fprintf(stderr, "# max-norm error vs fp32: %.6e\n",
                                 max_norm(error_matrix(widen_matrix(r16), ref)));
                }
                return 0;
            }
            case AccumMode::Fp32Kahan:
                result = gemm_kahan(round_matrix(a), round_matrix(b), c, g);
                break;
            }
            write_matrix(*result, gemm_out);
            std::fprintf(stderr, "# wrote %dx%d matrix to %s (%llu flops)\n",
                         result->rows(), result->cols(), gemm_out.c_str(),
                         static_cast<unsigned long long>(flops_gemm(
                             a.rows(), b.cols(), a.cols(), stages, g_beta != 0.0f)));
            if (check_oracle) {
                const MatrixF32 ref = gemm_oracle(a, b, c, g);
                std::fprintf(stderr, "# max-norm error vs fp32: %.6e\n",
                             max_norm(error_matrix(*result, ref)));
            }
        } else if (convert->parsed()) {
            const AnyMatrix in = read_matrix(conv_in);
            if (conv_to == "half") {
                write_matrix(as_f16(in), conv_out);
            } else {
                write_matrix(as_f32(in), conv_out);
            }
        } else if (split_demo->parsed()) {
            const AnyMatrix in = read_matrix(split_in);
            if (!std::holds_alternative<MatrixF32>(in)) {
                throw ConfigError("split-demo expects a single-precision matrix file");
            }
            const MatrixF32& a = std::get<MatrixF32>(in);
            const ResidualPair p = split(a);

            float max_abs = 0.0f, max_res = 0.0f;
            double max_rebuild = 0.0;
            std::size_t nonzero_res = 0;
            for (int i = 0; i < a.rows(); ++i) {
                for (int j = 0; j < a.cols(); ++j) {
                    max_abs = std::max(max_abs, std::fabs(a.at(i, j)));
                    const float r = p.residual_f32.at(i, j);
                    max_res = std::max(max_res, std::fabs(r));
                    nonzero_res += r != 0.0f;
                    const double rebuilt =
                        static_cast<double>(widen(p.half_part.at(i, j))) +
                        static_cast<double>(widen(p.residual.at(i, j)));
                    max_rebuild = std::max(
                        max_rebuild, std::fabs(rebuilt - static_cast<double>(a.at(i, j))));
                }
            }
            std::printf("matrix: %dx%d, max |entry| = %g\n", a.rows(), a.cols(), max_abs);
            std::printf("residual: max |r| = %g, nonzero in %zu of %zu entries\n",
                        max_res, nonzero_res, a.size());
            std::printf("reconstruction: max |half + residual - a| = %g\n", max_rebuild);
            for (int i = 0; i < a.rows() && i * a.cols() < show; ++i) {
                for (int j = 0; j < a.cols() && i * a.cols() + j < show; ++j) {
                    std::printf("  a[%d][%d] = %.9g = %.9g + %.9g (residual_f32 %.9g)\n",
                                i, j, a.at(i, j), widen(p.half_part.at(i, j)),
                                widen(p.residual.at(i, j)), p.residual_f32.at(i, j));
                }
            }
            if (!out_half.empty()) {
                write_matrix(p.half_part, out_half);
            }
            if (!out_residual.empty()) {
                write_matrix(p.residual, out_residual);
            }
            if (!out_residual_f32.empty()) {
                write_matrix(p.residual_f32, out_residual_f32);
            }
        }
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}

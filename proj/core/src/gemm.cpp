#include "mpgemm/gemm.hpp"

#include <cmath>
#include <cstring>
#include <string>

#include "mpgemm/parallel.hpp"

namespace mpgemm {

namespace {

constexpr int kTile = 16;

// Register-blocked micro-kernel shape. 8x32 accumulators fit the AVX-512
// register file; the code is plain C++ and stays correct on any target.
constexpr int kRegRows = 8;
constexpr int kRegCols = 32;
constexpr int kPanelK = 256;

void check_gemm_dims(int am, int ak, int bk, int bn, int cm, int cn) {
    if (ak != bk || am != cm || bn != cn) {
        throw DimensionMismatch(
            "gemm dimensions do not agree: A is " + std::to_string(am) + "x" +
            std::to_string(ak) + ", B is " + std::to_string(bk) + "x" +
            std::to_string(bn) + ", C is " + std::to_string(cm) + "x" +
            std::to_string(cn));
    }
}

void check_config(const GemmConfig& cfg, bool tensor_mode) {
    if (!std::isfinite(cfg.alpha) || !std::isfinite(cfg.beta)) {
        throw ConfigError("alpha and beta must be finite");
    }
    if (tensor_mode && cfg.tile != kTile) {
        throw ConfigError("tensor modes require a 16-wide tile, got " +
                          std::to_string(cfg.tile));
    }
}

int padded(int n) { return (n + kTile - 1) / kTile * kTile; }

// Dense row-major float workspace.
struct Buffer {
    Buffer(int rows, int cols)
        : rows(rows), cols(cols),
          data(static_cast<std::size_t>(rows) * cols, 0.0f) {}

    float* row(int r) { return data.data() + static_cast<std::size_t>(r) * cols; }
    const float* row(int r) const {
        return data.data() + static_cast<std::size_t>(r) * cols;
    }

    int rows;
    int cols;
    std::vector<float> data;
};

Buffer widen_padded(const MatrixF16& m, int prows, int pcols, float alpha,
                    bool rescale_to_half) {
    Buffer out(prows, pcols);
    for (int r = 0; r < m.rows(); ++r) {
        float* dst = out.row(r);
        for (int c = 0; c < m.cols(); ++c) {
            float v = widen(m.at(r, c));
            if (rescale_to_half) {
                v = widen(round_to_half(alpha * v));
            }
            dst[c] = v;
        }
    }
    return out;
}

Buffer scale_padded(const MatrixF32& m, int prows, int pcols, float alpha) {
    Buffer out(prows, pcols);
    for (int r = 0; r < m.rows(); ++r) {
        float* dst = out.row(r);
        for (int c = 0; c < m.cols(); ++c) {
            dst[c] = alpha == 1.0f ? m.at(r, c) : alpha * m.at(r, c);
        }
    }
    return out;
}

// --- plain fused fold -------------------------------------------------------
//
// C[i][j] <- fold over k in [k0, k1) of fmaf(A[i][k], B[k][j], acc), resumed
// from the value already in C. Register blocking and threading never reorder
// k for an output entry, so results are bit-identical for any worker count.

template <int R, int J>
void micro_full(const float* a, int lda, const float* b, int ldb, float* c,
                int ldc, int k0, int k1) {
    float acc[R][J];
    for (int r = 0; r < R; ++r) {
        for (int j = 0; j < J; ++j) {
            acc[r][j] = c[r * static_cast<std::size_t>(ldc) + j];
        }
    }
    for (int k = k0; k < k1; ++k) {
        const float* brow = b + static_cast<std::size_t>(k) * ldb;
        for (int r = 0; r < R; ++r) {
            const float av = a[r * static_cast<std::size_t>(lda) + k];
            for (int j = 0; j < J; ++j) {
                acc[r][j] = std::fmaf(av, brow[j], acc[r][j]);
            }
        }
    }
    for (int r = 0; r < R; ++r) {
        for (int j = 0; j < J; ++j) {
            c[r * static_cast<std::size_t>(ldc) + j] = acc[r][j];
        }
    }
}

void micro_edge(const float* a, int lda, const float* b, int ldb, float* c,
                int ldc, int k0, int k1, int nr, int nj) {
    for (int r = 0; r < nr; ++r) {
        for (int j = 0; j < nj; ++j) {
            float acc = c[r * static_cast<std::size_t>(ldc) + j];
            for (int k = k0; k < k1; ++k) {
                acc = std::fmaf(a[r * static_cast<std::size_t>(lda) + k],
                                b[k * static_cast<std::size_t>(ldb) + j], acc);
            }
            c[r * static_cast<std::size_t>(ldc) + j] = acc;
        }
    }
}

void fold_rows(const Buffer& a, const Buffer& b, Buffer& c, int row_begin,
               int row_end, int k0, int k1) {
    const int n = b.cols;
    for (int kb = k0; kb < k1; kb += kPanelK) {
        const int ke = std::min(kb + kPanelK, k1);
        for (int i = row_begin; i < row_end; i += kRegRows) {
            const int nr = std::min(kRegRows, row_end - i);
            int j = 0;
            if (nr == kRegRows) {
                for (; j + kRegCols <= n; j += kRegCols) {
                    micro_full<kRegRows, kRegCols>(a.row(i), a.cols, b.data.data() + j,
                                                   b.cols, c.row(i) + j, c.cols, kb, ke);
                }
            }
            if (j < n || nr != kRegRows) {
                micro_edge(a.row(i), a.cols, b.data.data() + j, b.cols, c.row(i) + j,
                           c.cols, kb, ke, nr, n - j);
            }
        }
    }
}

void fold_gemm(const Buffer& a, const Buffer& b, Buffer& c, int k0, int k1) {
    const std::uint64_t work = static_cast<std::uint64_t>(c.rows) * c.cols *
                               (k1 > k0 ? k1 - k0 : 0);
    if (work < 1u << 18) {
        fold_rows(a, b, c, 0, c.rows, k0, k1);
        return;
    }
    parallel_for(0, (c.rows + kRegRows - 1) / kRegRows, [&](int g0, int g1) {
        fold_rows(a, b, c, g0 * kRegRows, std::min(g1 * kRegRows, c.rows), k0, k1);
    });
}

// --- compensated fold -------------------------------------------------------

void kahan_rows(const Buffer& a, const Buffer& b, Buffer& c, int row_begin,
                int row_end, int k_extent) {
    // Wide column block: the compensation chain is latency-bound, so many
    // independent vector lanes are needed to keep the FMA pipes busy.
    constexpr int J = 128;
    const int n = b.cols;
    for (int i = row_begin; i < row_end; ++i) {
        const float* arow = a.row(i);
        float* crow = c.row(i);
        int j = 0;
        for (; j + J <= n; j += J) {
            float sum[J];
            float comp[J] = {};
            for (int jj = 0; jj < J; ++jj) {
                sum[jj] = crow[j + jj];
            }
            for (int k = 0; k < k_extent; ++k) {
                const float av = arow[k];
                const float* brow = b.row(k) + j;
                for (int jj = 0; jj < J; ++jj) {
                    const float p = av * brow[jj]; // exact for half operands
                    const float y = p - comp[jj];
                    const float t = sum[jj] + y;
                    comp[jj] = (t - sum[jj]) - y;
                    sum[jj] = t;
                }
            }
            for (int jj = 0; jj < J; ++jj) {
                crow[j + jj] = sum[jj];
            }
        }
        for (; j < n; ++j) {
            float sum = crow[j];
            float comp = 0.0f;
            for (int k = 0; k < k_extent; ++k) {
                const float p = arow[k] * b.row(k)[j];
                const float y = p - comp;
                const float t = sum + y;
                comp = (t - sum) - y;
                sum = t;
            }
            crow[j] = sum;
        }
    }
}

// --- seeding / extraction ---------------------------------------------------

Buffer seed_accumulator(const MatrixF32& c, int prows, int pcols, float beta) {
    Buffer out(prows, pcols);
    for (int r = 0; r < c.rows(); ++r) {
        float* dst = out.row(r);
        for (int cc = 0; cc < c.cols(); ++cc) {
            dst[cc] = beta * c.at(r, cc);
        }
    }
    return out;
}

MatrixF32 crop(const Buffer& buf, int rows, int cols) {
    MatrixF32 out(rows, cols);
    for (int r = 0; r < rows; ++r) {
        std::memcpy(out.row(r), buf.row(r), sizeof(float) * cols);
    }
    return out;
}

} // namespace

MatrixF32 gemm_oracle(const MatrixF32& a, const MatrixF32& b, const MatrixF32& c,
                      const GemmConfig& cfg) {
    check_gemm_dims(a.rows(), a.cols(), b.rows(), b.cols(), c.rows(), c.cols());
    check_config(cfg, false);
    const int m = a.rows(), k = a.cols(), n = b.cols();
    Buffer aw = scale_padded(a, m, k, cfg.alpha);
    Buffer bw = scale_padded(b, k, n, 1.0f);
    Buffer acc = seed_accumulator(c, m, n, cfg.beta);
    fold_gemm(aw, bw, acc, 0, k);
    return crop(acc, m, n);
}

MatrixF32 gemm_mixed(const MatrixF16& a, const MatrixF16& b, const MatrixF32& c,
                     const GemmConfig& cfg) {
    check_gemm_dims(a.rows(), a.cols(), b.rows(), b.cols(), c.rows(), c.cols());
    check_config(cfg, true);
    const int m = a.rows(), k = a.cols(), n = b.cols();
    const int mp = padded(m), kp = padded(k), np = padded(n);
    Buffer aw = widen_padded(a, mp, kp, cfg.alpha, cfg.alpha != 1.0f);
    Buffer bw = widen_padded(b, kp, np, 1.0f, false);
    Buffer acc = seed_accumulator(c, mp, np, cfg.beta);
    fold_gemm(aw, bw, acc, 0, kp);
    return crop(acc, m, n);
}

MatrixF16 gemm_half_accum(const MatrixF16& a, const MatrixF16& b, const MatrixF16& c,
                          const GemmConfig& cfg) {
    check_gemm_dims(a.rows(), a.cols(), b.rows(), b.cols(), c.rows(), c.cols());
    check_config(cfg, true);
    const int m = a.rows(), k = a.cols(), n = b.cols();
    const int mp = padded(m), kp = padded(k), np = padded(n);
    Buffer aw = widen_padded(a, mp, kp, cfg.alpha, cfg.alpha != 1.0f);
    Buffer bw = widen_padded(b, kp, np, 1.0f, false);

    Buffer acc(mp, np);
    for (int r = 0; r < m; ++r) {
        float* dst = acc.row(r);
        for (int cc = 0; cc < n; ++cc) {
            dst[cc] = cfg.beta * widen(c.at(r, cc));
        }
    }
    // Round the running accumulator to half after every 16-wide k-tile.
    for (int kb = 0; kb < kp; kb += kTile) {
        fold_gemm(aw, bw, acc, kb, kb + kTile);
        parallel_for(0, mp, [&](int r0, int r1) {
            for (int r = r0; r < r1; ++r) {
                float* row = acc.row(r);
                for (int j = 0; j < np; ++j) {
                    row[j] = widen(round_to_half(row[j]));
                }
            }
        });
    }

    MatrixF16 out(m, n);
    for (int r = 0; r < m; ++r) {
        const float* src = acc.row(r);
        for (int cc = 0; cc < n; ++cc) {
            out.at(r, cc) = round_to_half(src[cc]);
        }
    }
    return out;
}

MatrixF32 gemm_kahan(const MatrixF16& a, const MatrixF16& b, const MatrixF32& c,
                     const GemmConfig& cfg) {
    check_gemm_dims(a.rows(), a.cols(), b.rows(), b.cols(), c.rows(), c.cols());
    check_config(cfg, true);
    const int m = a.rows(), k = a.cols(), n = b.cols();
    Buffer aw = widen_padded(a, m, k, cfg.alpha, cfg.alpha != 1.0f);
    Buffer bw = widen_padded(b, k, n, 1.0f, false);
    Buffer acc = seed_accumulator(c, m, n, cfg.beta);
    const std::uint64_t work =
        static_cast<std::uint64_t>(m) * n * static_cast<std::uint64_t>(k);
    if (work < 1u << 18) {
        kahan_rows(aw, bw, acc, 0, m, k);
    } else {
        parallel_for(0, m, [&](int r0, int r1) { kahan_rows(aw, bw, acc, r0, r1, k); });
    }
    return crop(acc, m, n);
}

std::vector<MatrixF32> gemm_batched(const std::vector<MatrixF16>& a_batch,
                                    const std::vector<MatrixF16>& b_batch,
                                    const std::vector<MatrixF32>& c_batch,
                                    const GemmConfig& cfg) {
    if (a_batch.size() != b_batch.size() || a_batch.size() != c_batch.size()) {
        throw LengthMismatch("batched gemm requires equally long operand lists");
    }
    if (a_batch.empty()) {
        throw LengthMismatch("batched gemm requires at least one entry");
    }
    check_config(cfg, true);
    const int count = static_cast<int>(a_batch.size());
    for (int i = 0; i < count; ++i) {
        if (a_batch[i].rows() != kTile || a_batch[i].cols() != kTile ||
            b_batch[i].rows() != kTile || b_batch[i].cols() != kTile ||
            c_batch[i].rows() != kTile || c_batch[i].cols() != kTile) {
            throw DimensionMismatch("batched gemm entries must all be 16x16");
        }
    }

    std::vector<MatrixF32> out(count, MatrixF32(kTile, kTile));
    parallel_for(0, count, [&](int lo, int hi) {
        for (int i = lo; i < hi; ++i) {
            Fragment af = load_fragment(a_batch[i], FragmentRole::MatrixA,
                                        Layout::RowMajor);
            if (cfg.alpha != 1.0f) {
                // alpha is folded into A entries, re-rounded to half.
                MatrixF16 scaled(kTile, kTile);
                for (int r = 0; r < kTile; ++r) {
                    for (int cc = 0; cc < kTile; ++cc) {
                        scaled.at(r, cc) =
                            round_to_half(cfg.alpha * widen(a_batch[i].at(r, cc)));
                    }
                }
                af = load_fragment(scaled, FragmentRole::MatrixA, Layout::RowMajor);
            }
            const Fragment bf =
                load_fragment(b_batch[i], FragmentRole::MatrixB, Layout::RowMajor);
            MatrixF32 seed(kTile, kTile);
            for (int r = 0; r < kTile; ++r) {
                for (int cc = 0; cc < kTile; ++cc) {
                    seed.at(r, cc) = cfg.beta * c_batch[i].at(r, cc);
                }
            }
            const Fragment cf =
                load_fragment(seed, FragmentRole::Accumulator, Layout::RowMajor);
            out[i] = store_fragment(mma_sync(af, bf, cf, MmaMode::Fp32),
                                    Layout::RowMajor);
        }
    });
    return out;
}

} // namespace mpgemm

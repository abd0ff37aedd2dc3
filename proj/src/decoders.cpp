#include "decoders.hpp"

#include <cmath>
#include <string>

namespace dstbc {
namespace {

// shared exhaustive search over tuples in tuple-index order; the metric is
// -2 r.x + x^T G x, equal to ||y - Hx||^2 - ||y||^2 for every tuple.
DecodeResult exhaustive_search(const MatchedFilterStats& stats, const Constellation& c,
                               std::size_t n_symbols, std::uint64_t cap, DecodeMethod method) {
    const std::size_t m = c.size();
    const std::size_t K = n_symbols;
    double tuples = 1.0;
    for (std::size_t i = 0; i < K; ++i) tuples *= static_cast<double>(m);
    if (tuples > static_cast<double>(cap))
        throw ValidationError("joint decode: |constellation|^K = " + std::to_string(tuples) +
                              " exceeds cap " + std::to_string(cap) +
                              "; raise the cap to search this space");

    // per-symbol terms m1[k][s] = s^T G_kk s - 2 r_k . s and pair cross terms
    // m2[(k,l)][s,s'] = 2 s^T G_kl s'
    std::vector<double> m1(K * m);
    for (std::size_t k = 0; k < K; ++k) {
        const double g00 = stats.gram(2 * k, 2 * k), g01 = stats.gram(2 * k, 2 * k + 1);
        const double g10 = stats.gram(2 * k + 1, 2 * k), g11 = stats.gram(2 * k + 1, 2 * k + 1);
        const double r0 = stats.r[2 * k], r1 = stats.r[2 * k + 1];
        for (std::size_t s = 0; s < m; ++s) {
            const double a = c.points[s].real(), b = c.points[s].imag();
            m1[k * m + s] = a * (g00 * a + g01 * b) + b * (g10 * a + g11 * b) - 2.0 * (r0 * a + r1 * b);
        }
    }
    const std::size_t npairs = K * (K - 1) / 2;
    std::vector<double> m2(npairs * m * m, 0.0);
    std::vector<std::size_t> pair_base(K * K, 0);
    {
        std::size_t p = 0;
        for (std::size_t k = 0; k < K; ++k)
            for (std::size_t l = k + 1; l < K; ++l) {
                pair_base[k * K + l] = p * m * m;
                const double g00 = stats.gram(2 * k, 2 * l), g01 = stats.gram(2 * k, 2 * l + 1);
                const double g10 = stats.gram(2 * k + 1, 2 * l), g11 = stats.gram(2 * k + 1, 2 * l + 1);
                for (std::size_t s = 0; s < m; ++s) {
                    const double a = c.points[s].real(), b = c.points[s].imag();
                    const double u0 = 2.0 * (a * g00 + b * g10), u1 = 2.0 * (a * g01 + b * g11);
                    for (std::size_t t = 0; t < m; ++t)
                        m2[p * m * m + s * m + t] = u0 * c.points[t].real() + u1 * c.points[t].imag();
                }
                ++p;
            }
    }

    std::vector<std::size_t> idx(K, 0), best_idx(K, 0);
    double best = 0.0;
    bool first = true;
    while (true) {
        double metric = 0.0;
        for (std::size_t k = 0; k < K; ++k) metric += m1[k * m + idx[k]];
        for (std::size_t k = 0; k < K; ++k)
            for (std::size_t l = k + 1; l < K; ++l)
                metric += m2[pair_base[k * K + l] + idx[k] * m + idx[l]];
        if (first || metric < best) {
            first = false;
            best = metric;
            best_idx = idx;
        }
        // odometer, last symbol fastest => tuple index increases
        std::size_t pos = K;
        while (pos > 0) {
            --pos;
            if (++idx[pos] < m) break;
            idx[pos] = 0;
            if (pos == 0) {
                DecodeResult res;
                res.symbol_indices = best_idx;
                res.metric = best;
                res.method = method;
                return res;
            }
        }
    }
}

}  // namespace

MatchedFilterStats matched_filter(const RealMatrix& h_real, std::span<const double> y_real) {
    if (y_real.size() != h_real.rows) throw ValidationError("matched_filter: dimension mismatch");
    MatchedFilterStats s;
    s.r = matvec_transposed(h_real, y_real);
    s.gram = matmul_at_b(h_real, h_real);
    return s;
}

DecodeResult decode_ssd(const MatchedFilterStats& stats, const Constellation& c, double rel_tol) {
    const std::size_t K = stats.r.size() / 2;
    if (stats.gram.rows != 2 * K || stats.gram.cols != 2 * K)
        throw ValidationError("decode_ssd: gram shape mismatch");
    const double tol = rel_tol * std::max(1.0, max_abs(stats.gram));
    BlockDiagResult bd = is_block_diag_2x2(stats.gram, tol);
    if (!bd.ok)
        throw ContractError(
            "decode_ssd: gram is not 2x2 block-diagonal (off-block " +
            std::to_string(bd.max_off_block) +
            "); the design/mode pair is not single-symbol decodable, use a joint decoder");
    DecodeResult res;
    res.method = DecodeMethod::Ssd;
    res.symbol_indices.resize(K);
    double total = 0.0;
    for (std::size_t k = 0; k < K; ++k) {
        const double g00 = stats.gram(2 * k, 2 * k), g01 = stats.gram(2 * k, 2 * k + 1);
        const double g10 = stats.gram(2 * k + 1, 2 * k), g11 = stats.gram(2 * k + 1, 2 * k + 1);
        const double r0 = stats.r[2 * k], r1 = stats.r[2 * k + 1];
        double best = 0.0;
        std::size_t best_s = 0;
        for (std::size_t s = 0; s < c.size(); ++s) {
            const double a = c.points[s].real(), b = c.points[s].imag();
            const double metric =
                a * (g00 * a + g01 * b) + b * (g10 * a + g11 * b) - 2.0 * (r0 * a + r1 * b);
            if (s == 0 || metric < best) {
                best = metric;
                best_s = s;
            }
        }
        res.symbol_indices[k] = best_s;
        total += best;
    }
    res.metric = total;
    return res;
}

DecodeResult decode_joint_mismatched(const RealMatrix& h_real, std::span<const double> y_real,
                                     const Constellation& c, std::uint64_t cap) {
    MatchedFilterStats stats = matched_filter(h_real, y_real);
    return exhaustive_search(stats, c, stats.r.size() / 2, cap, DecodeMethod::JointMismatched);
}

RealMatrix cholesky(const RealMatrix& a) {
    if (a.rows != a.cols) throw ValidationError("cholesky: matrix must be square");
    const std::size_t n = a.rows;
    RealMatrix l(n, n);
    double dmax = 0.0, dmin = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j <= i; ++j) {
            double s = a(i, j);
            for (std::size_t k = 0; k < j; ++k) s -= l(i, k) * l(j, k);
            if (i == j) {
                if (s <= 0.0) {
                    const double cond = (dmin > 0.0) ? dmax / dmin : INFINITY;
                    throw NumericalError(
                        "cholesky: matrix not positive definite at pivot " + std::to_string(i) +
                        " (pivot " + std::to_string(s) + ", condition estimate " +
                        std::to_string(cond) + ")");
                }
                l(i, i) = std::sqrt(s);
                dmax = std::max(dmax, l(i, i));
                dmin = (i == 0) ? l(i, i) : std::min(dmin, l(i, i));
            } else {
                l(i, j) = s / l(j, j);
            }
        }
    }
    return l;
}

DecodeResult decode_joint_whitened(const RealMatrix& h_real, std::span<const double> y_real,
                                   const RealMatrix& omega, const Constellation& c,
                                   std::uint64_t cap) {
    if (omega.rows != h_real.rows || omega.cols != h_real.rows)
        throw ValidationError("decode_joint_whitened: covariance shape mismatch");
    for (std::size_t r = 0; r < omega.rows; ++r)
        for (std::size_t col = r + 1; col < omega.cols; ++col)
            if (std::abs(omega(r, col) - omega(col, r)) > 1e-9 * std::max(1.0, max_abs(omega)))
                throw ValidationError("decode_joint_whitened: covariance is not symmetric");
    RealMatrix l = cholesky(omega);
    // whiten: solve L w = y and L W = H by forward substitution
    const std::size_t n = omega.rows;
    std::vector<double> yw(y_real.begin(), y_real.end());
    RealMatrix hw = h_real;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = 0; k < i; ++k) yw[i] -= l(i, k) * yw[k];
        yw[i] /= l(i, i);
        for (std::size_t ccol = 0; ccol < hw.cols; ++ccol) {
            double s = hw(i, ccol);
            for (std::size_t k = 0; k < i; ++k) s -= l(i, k) * hw(k, ccol);
            hw(i, ccol) = s / l(i, i);
        }
    }
    MatchedFilterStats stats = matched_filter(hw, yw);
    DecodeResult res = exhaustive_search(stats, c, stats.r.size() / 2, cap, DecodeMethod::JointWhitened);
    return res;
}

}  // namespace dstbc

#include "algebra.hpp"

#include <cmath>
#include <cstdlib>
#include <string>

namespace dstbc {

RealMatrix RealMatrix::identity(std::size_t n) {
    RealMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

bool RealMatrix::all_finite() const {
    for (double v : data)
        if (!std::isfinite(v)) return false;
    return true;
}

bool ComplexMatrix::all_finite() const {
    for (const cplx& v : data)
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
    return true;
}

bool operator==(const RealMatrix& a, const RealMatrix& b) {
    return a.rows == b.rows && a.cols == b.cols && a.data == b.data;
}

bool operator==(const ComplexMatrix& a, const ComplexMatrix& b) {
    return a.rows == b.rows && a.cols == b.cols && a.data == b.data;
}

std::pair<RealMatrix, RealMatrix> split_real_imag(const ComplexMatrix& m) {
    RealMatrix re(m.rows, m.cols), im(m.rows, m.cols);
    for (std::size_t i = 0; i < m.data.size(); ++i) {
        re.data[i] = m.data[i].real();
        im.data[i] = m.data[i].imag();
    }
    return {std::move(re), std::move(im)};
}

ComplexMatrix combine_real_imag(const RealMatrix& re, const RealMatrix& im) {
    if (re.rows != im.rows || re.cols != im.cols)
        throw ValidationError("combine_real_imag: shape mismatch");
    ComplexMatrix m(re.rows, re.cols);
    for (std::size_t i = 0; i < m.data.size(); ++i) m.data[i] = {re.data[i], im.data[i]};
    return m;
}

BlockDiagResult is_block_diag_2x2(const RealMatrix& m, double tol) {
    if (m.rows != m.cols) throw ValidationError("is_block_diag_2x2: matrix must be square");
    if (m.rows % 2 != 0) throw ValidationError("is_block_diag_2x2: dimension must be even");
    BlockDiagResult res;
    const std::size_t n = m.rows;
    for (std::size_t r = 0; r < n; ++r) {
        const std::size_t rb = r / 2;
        for (std::size_t c = 0; c < n; ++c) {
            if (c / 2 == rb) continue;
            const double a = std::abs(m(r, c));
            if (a > res.max_off_block) {
                res.max_off_block = a;
                res.off_row = r;
                res.off_col = c;
            }
        }
    }
    res.ok = res.max_off_block <= tol;
    if (res.ok) {
        res.pattern.block_count = n / 2;
        res.pattern.blocks.resize(n / 2);
        for (std::size_t b = 0; b < n / 2; ++b)
            res.pattern.blocks[b] = {m(2 * b, 2 * b), m(2 * b, 2 * b + 1),
                                     m(2 * b + 1, 2 * b), m(2 * b + 1, 2 * b + 1)};
    }
    return res;
}

bool is_positive_definite_2x2(const std::array<double, 4>& b, double tol) {
    if (std::abs(b[1] - b[2]) > tol)
        throw ContractError("is_positive_definite_2x2: block is not symmetric");
    const double a = b[0], off = b[1], c = b[3];
    return a > tol && a * c - off * off > tol;
}

RealMatrix realify_channel(const ComplexMatrix& h) {
    RealMatrix out(2 * h.rows, h.cols);
    for (std::size_t r = 0; r < h.rows; ++r)
        for (std::size_t c = 0; c < h.cols; ++c) {
            out(r, c) = h(r, c).real();
            out(h.rows + r, c) = h(r, c).imag();
        }
    return out;
}

RealMatrix permutation_matrix(std::span<const std::size_t> perm) {
    const std::size_t n = perm.size();
    std::vector<bool> seen(n, false);
    for (std::size_t v : perm) {
        if (v >= n || seen[v]) throw ValidationError("permutation_matrix: not a permutation of 0..n-1");
        seen[v] = true;
    }
    RealMatrix p(n, n);
    for (std::size_t k = 0; k < n; ++k) p(perm[k], k) = 1.0;
    return p;
}

RealMatrix matmul(const RealMatrix& a, const RealMatrix& b) {
    if (a.cols != b.rows) throw ValidationError("matmul: inner dimensions differ");
    RealMatrix c(a.rows, b.cols);
    for (std::size_t i = 0; i < a.rows; ++i) {
        double* ci = &c.data[i * c.cols];
        for (std::size_t k = 0; k < a.cols; ++k) {
            const double aik = a(i, k);
            if (aik == 0.0) continue;
            const double* bk = &b.data[k * b.cols];
            for (std::size_t j = 0; j < b.cols; ++j) ci[j] += aik * bk[j];
        }
    }
    return c;
}

RealMatrix matmul_at_b(const RealMatrix& a, const RealMatrix& b) {
    if (a.rows != b.rows) throw ValidationError("matmul_at_b: row counts differ");
    RealMatrix c(a.cols, b.cols);
    for (std::size_t k = 0; k < a.rows; ++k) {
        const double* ak = &a.data[k * a.cols];
        const double* bk = &b.data[k * b.cols];
        for (std::size_t i = 0; i < a.cols; ++i) {
            const double aki = ak[i];
            if (aki == 0.0) continue;
            double* ci = &c.data[i * c.cols];
            for (std::size_t j = 0; j < b.cols; ++j) ci[j] += aki * bk[j];
        }
    }
    return c;
}

RealMatrix matmul_a_bt(const RealMatrix& a, const RealMatrix& b) {
    if (a.cols != b.cols) throw ValidationError("matmul_a_bt: column counts differ");
    RealMatrix c(a.rows, b.rows);
    for (std::size_t i = 0; i < a.rows; ++i) {
        const double* ai = &a.data[i * a.cols];
        for (std::size_t j = 0; j < b.rows; ++j) {
            const double* bj = &b.data[j * b.cols];
            double s = 0.0;
            for (std::size_t k = 0; k < a.cols; ++k) s += ai[k] * bj[k];
            c(i, j) = s;
        }
    }
    return c;
}

RealMatrix transpose(const RealMatrix& a) {
    RealMatrix t(a.cols, a.rows);
    for (std::size_t r = 0; r < a.rows; ++r)
        for (std::size_t c = 0; c < a.cols; ++c) t(c, r) = a(r, c);
    return t;
}

void add_inplace(RealMatrix& a, const RealMatrix& b, double scale) {
    if (a.rows != b.rows || a.cols != b.cols) throw ValidationError("add_inplace: shape mismatch");
    for (std::size_t i = 0; i < a.data.size(); ++i) a.data[i] += scale * b.data[i];
}

void add_transpose_inplace(RealMatrix& a, const RealMatrix& b, double scale) {
    if (a.rows != b.cols || a.cols != b.rows) throw ValidationError("add_transpose_inplace: shape mismatch");
    for (std::size_t r = 0; r < a.rows; ++r)
        for (std::size_t c = 0; c < a.cols; ++c) a(r, c) += scale * b(c, r);
}

ComplexMatrix cmatmul(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.cols != b.rows) throw ValidationError("cmatmul: inner dimensions differ");
    ComplexMatrix c(a.rows, b.cols);
    for (std::size_t i = 0; i < a.rows; ++i) {
        cplx* ci = &c.data[i * c.cols];
        for (std::size_t k = 0; k < a.cols; ++k) {
            const cplx aik = a(i, k);
            if (aik == cplx{}) continue;
            const cplx* bk = &b.data[k * b.cols];
            for (std::size_t j = 0; j < b.cols; ++j) ci[j] += aik * bk[j];
        }
    }
    return c;
}

ComplexMatrix cmatmul_ah_b(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.rows != b.rows) throw ValidationError("cmatmul_ah_b: row counts differ");
    ComplexMatrix c(a.cols, b.cols);
    for (std::size_t k = 0; k < a.rows; ++k) {
        const cplx* ak = &a.data[k * a.cols];
        const cplx* bk = &b.data[k * b.cols];
        for (std::size_t i = 0; i < a.cols; ++i) {
            const cplx aki = std::conj(ak[i]);
            if (aki == cplx{}) continue;
            cplx* ci = &c.data[i * c.cols];
            for (std::size_t j = 0; j < b.cols; ++j) ci[j] += aki * bk[j];
        }
    }
    return c;
}

ComplexMatrix conjugate(const ComplexMatrix& a) {
    ComplexMatrix c(a.rows, a.cols);
    for (std::size_t i = 0; i < a.data.size(); ++i) c.data[i] = std::conj(a.data[i]);
    return c;
}

void cadd_inplace(ComplexMatrix& a, const ComplexMatrix& b, cplx scale) {
    if (a.rows != b.rows || a.cols != b.cols) throw ValidationError("cadd_inplace: shape mismatch");
    for (std::size_t i = 0; i < a.data.size(); ++i) a.data[i] += scale * b.data[i];
}

RealMatrix real_part(const ComplexMatrix& a) {
    RealMatrix r(a.rows, a.cols);
    for (std::size_t i = 0; i < a.data.size(); ++i) r.data[i] = a.data[i].real();
    return r;
}

RealMatrix imag_part(const ComplexMatrix& a) {
    RealMatrix r(a.rows, a.cols);
    for (std::size_t i = 0; i < a.data.size(); ++i) r.data[i] = a.data[i].imag();
    return r;
}

std::vector<cplx> matvec(const ComplexMatrix& a, std::span<const double> x) {
    if (x.size() != a.cols) throw ValidationError("apply: vector length mismatch");
    std::vector<cplx> y(a.rows, cplx{});
    for (std::size_t r = 0; r < a.rows; ++r) {
        cplx s{};
        const cplx* ar = &a.data[r * a.cols];
        for (std::size_t c = 0; c < a.cols; ++c) s += ar[c] * x[c];
        y[r] = s;
    }
    return y;
}

std::vector<double> matvec(const RealMatrix& a, std::span<const double> x) {
    if (x.size() != a.cols) throw ValidationError("apply: vector length mismatch");
    std::vector<double> y(a.rows, 0.0);
    for (std::size_t r = 0; r < a.rows; ++r) {
        double s = 0.0;
        const double* ar = &a.data[r * a.cols];
        for (std::size_t c = 0; c < a.cols; ++c) s += ar[c] * x[c];
        y[r] = s;
    }
    return y;
}

std::vector<double> matvec_transposed(const RealMatrix& a, std::span<const double> x) {
    if (x.size() != a.rows) throw ValidationError("matvec_transposed: vector length mismatch");
    std::vector<double> y(a.cols, 0.0);
    for (std::size_t r = 0; r < a.rows; ++r) {
        const double xr = x[r];
        if (xr == 0.0) continue;
        const double* ar = &a.data[r * a.cols];
        for (std::size_t c = 0; c < a.cols; ++c) y[c] += ar[c] * xr;
    }
    return y;
}

double max_abs(const RealMatrix& a) {
    double m = 0.0;
    for (double v : a.data) m = std::max(m, std::abs(v));
    return m;
}

}  // namespace dstbc

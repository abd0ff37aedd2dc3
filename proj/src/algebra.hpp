#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

namespace dstbc {

using cplx = std::complex<double>;

/// Bad user input (dimensions, file contents, configuration).
struct ValidationError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// A documented precondition was violated by the caller.
struct ContractError : std::logic_error {
    using std::logic_error::logic_error;
};

/// Numerical failure (singular matrix, non-finite values).
struct NumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Dense row-major real matrix.
struct RealMatrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> data;

    RealMatrix() = default;
    RealMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0.0) {}

    double& operator()(std::size_t r, std::size_t c) { return data[r * cols + c]; }
    double operator()(std::size_t r, std::size_t c) const { return data[r * cols + c]; }

    static RealMatrix identity(std::size_t n);
    bool all_finite() const;
};

/// Dense row-major complex matrix.
struct ComplexMatrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<cplx> data;

    ComplexMatrix() = default;
    ComplexMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, cplx{}) {}

    cplx& operator()(std::size_t r, std::size_t c) { return data[r * cols + c]; }
    cplx operator()(std::size_t r, std::size_t c) const { return data[r * cols + c]; }

    bool all_finite() const;
};

bool operator==(const RealMatrix& a, const RealMatrix& b);
bool operator==(const ComplexMatrix& a, const ComplexMatrix& b);

/// Symmetric 2x2 blocks extracted from a block-diagonal matrix; block k pairs
/// the in-phase and quadrature coordinates of complex symbol k.
struct Block2Pattern {
    std::size_t block_count = 0;
    std::vector<std::array<double, 4>> blocks;  // row-major [a b; c d] per block
};

/// Result of the 2x2 block-diagonal structure test. `max_off_block` and the
/// offending indices are filled even on success (then max_off_block <= tol).
struct BlockDiagResult {
    bool ok = false;
    Block2Pattern pattern;
    double max_off_block = 0.0;
    std::size_t off_row = 0;
    std::size_t off_col = 0;
};

/// Splits m into (real part, imaginary part) so that m = re + i*im entrywise.
std::pair<RealMatrix, RealMatrix> split_real_imag(const ComplexMatrix& m);

ComplexMatrix combine_real_imag(const RealMatrix& re, const RealMatrix& im);

/// True iff every entry outside the 2x2 diagonal blocks has magnitude <= tol.
/// Requires a square matrix of even dimension.
BlockDiagResult is_block_diag_2x2(const RealMatrix& m, double tol);

/// Determinant test a*c - b^2 > tol with a > tol for a symmetric 2x2 block.
/// Asymmetric input (|b - c| > tol) is a contract error.
bool is_positive_definite_2x2(const std::array<double, 4>& b, double tol);

/// Stacks [Re(h); Im(h)] so that for real x the product equals the realified
/// complex product, and result^T * result = Re(h^H h).
RealMatrix realify_channel(const ComplexMatrix& h);

/// P with P*e_k = e_perm[k]. Rejects inputs that are not permutations of 0..n-1.
RealMatrix permutation_matrix(std::span<const std::size_t> perm);

// --- dense helpers shared by the other modules ---

RealMatrix matmul(const RealMatrix& a, const RealMatrix& b);
RealMatrix matmul_at_b(const RealMatrix& a, const RealMatrix& b);  // a^T * b
RealMatrix matmul_a_bt(const RealMatrix& a, const RealMatrix& b);  // a * b^T
RealMatrix transpose(const RealMatrix& a);
void add_inplace(RealMatrix& a, const RealMatrix& b, double scale = 1.0);
void add_transpose_inplace(RealMatrix& a, const RealMatrix& b, double scale = 1.0);

ComplexMatrix cmatmul(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix cmatmul_ah_b(const ComplexMatrix& a, const ComplexMatrix& b);  // a^H * b
ComplexMatrix conjugate(const ComplexMatrix& a);
void cadd_inplace(ComplexMatrix& a, const ComplexMatrix& b, cplx scale = 1.0);

RealMatrix real_part(const ComplexMatrix& a);
RealMatrix imag_part(const ComplexMatrix& a);

std::vector<cplx> matvec(const ComplexMatrix& a, std::span<const double> x);
std::vector<double> matvec(const RealMatrix& a, std::span<const double> x);
std::vector<double> matvec_transposed(const RealMatrix& a, std::span<const double> x);

double max_abs(const RealMatrix& a);

}  // namespace dstbc

#pragma once

#include <cstdint>
#include <vector>

#include "algebra.hpp"
#include "constellations.hpp"

namespace dstbc {

/// Matched-filter sufficient statistics in the realified convention:
/// r = H^T y (= Re(H_eq^H y)) and gram = H^T H (= Re(H_eq^H H_eq)).
struct MatchedFilterStats {
    std::vector<double> r;
    RealMatrix gram;
};

enum class DecodeMethod { Ssd, JointMismatched, JointWhitened };

struct DecodeResult {
    std::vector<std::size_t> symbol_indices;
    double metric = 0.0;
    DecodeMethod method = DecodeMethod::Ssd;
};

inline constexpr std::uint64_t kDefaultJointCap = 1u << 20;

MatchedFilterStats matched_filter(const RealMatrix& h_real, std::span<const double> y_real);

/// Per-symbol decoding: for each symbol independently minimize
/// -2 r_i . s + s^T D_i s over the constellation, D_i the i-th 2x2 diagonal
/// block of the gram. Requires the gram to be 2x2 block-diagonal within
/// rel_tol * max|gram| (the single-symbol-decodability promise); a
/// non-block-diagonal gram is a contract violation.
DecodeResult decode_ssd(const MatchedFilterStats& stats, const Constellation& c,
                        double rel_tol = 1e-6);

/// Exhaustive minimizer of ||y - H x||^2 over all symbol tuples, enumerated
/// in tuple-index order (symbol 1 most significant) with strict-improvement
/// tie-breaking.
DecodeResult decode_joint_mismatched(const RealMatrix& h_real, std::span<const double> y_real,
                                     const Constellation& c,
                                     std::uint64_t cap = kDefaultJointCap);

/// Exhaustive minimizer of (y - Hx)^T Omega^{-1} (y - Hx); Omega must be
/// symmetric positive definite.
DecodeResult decode_joint_whitened(const RealMatrix& h_real, std::span<const double> y_real,
                                   const RealMatrix& omega, const Constellation& c,
                                   std::uint64_t cap = kDefaultJointCap);

/// Lower-triangular L with A = L L^T; throws NumericalError (with a
/// condition estimate) when the matrix is not positive definite.
RealMatrix cholesky(const RealMatrix& a);

}  // namespace dstbc

#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "algebra.hpp"

namespace dstbc {

/// A linear distributed space-time block code: N relay matrices of size
/// T2 x 2K acting on the realified symbol vector (x_1I, x_1Q, ..., x_KI, x_KQ).
/// Column j of the code matrix is relay_matrices[j] * x.
struct Design {
    std::string name;
    std::size_t n_relays = 0;   // N, one code-matrix column per relay
    std::size_t n_symbols = 0;  // K complex information symbols
    std::size_t rows = 0;       // T2 channel uses in the relay phase
    std::vector<ComplexMatrix> relay_matrices;

    double rate() const { return static_cast<double>(n_symbols) / static_cast<double>(rows); }
    std::string rate_string() const;  // reduced fraction, e.g. "3/4"
};

/// Validates the Design invariants; throws ValidationError with context.
void validate_design(const Design& d);

/// Square complex orthogonal design on 2^a antennas in a+1 symbols,
/// built by the doubling recursion from the 2x2 base.
Design cod_square(unsigned a);

/// Coordinate interleaved orthogonal design, n in {4, 8}.
Design ciod(unsigned n);

/// Clifford unitary-weight SSD code on 2^a antennas in 2a symbols.
Design cuw(unsigned a);

/// Rate-one 8-relay code: block-diagonal composition of two cuw(2) copies on
/// disjoint variable sets.
Design rr8();

/// Rate-one real orthogonal design for n relays from the Hurwitz-Radon family
/// (delay p = 2^delta(n)); coefficients of the I and Q coordinates coincide.
Design rod(unsigned n);

/// Rate-1/2 complex orthogonal design [G; G*] from a real design G.
Design stack_to_cod(const Design& d);

/// Block-diagonal composition: g1 on symbols 1..K top-left, g2 on symbols
/// K+1..2K bottom-right. Inputs must share (T2, K).
Design block_diagonal_compose(const Design& g1, const Design& g2);

/// Replaces every relay matrix A_j by A_j * P(perm); certification outcomes
/// are invariant under this operation.
Design coordinate_interleave(const Design& d, std::span<const std::size_t> perm);

/// T2 x N code matrix for a concrete realified symbol vector (length 2K).
ComplexMatrix code_matrix(const Design& d, std::span<const double> x);

/// Max over symbols of the number of code-matrix entries the symbol touches;
/// the per-symbol transmission count used by the energy split.
std::size_t transmissions_per_symbol(const Design& d);

/// One code-matrix entry as a complex-coefficient linear form over the 2K
/// real coordinates.
struct SymbolicEntry {
    std::vector<cplx> coeffs;
};

struct SymbolicGrid {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<SymbolicEntry> entries;  // row-major

    const SymbolicEntry& at(std::size_t r, std::size_t c) const { return entries[r * cols + c]; }
};

SymbolicGrid render_symbolic(const Design& d);

/// Canonical text for one entry: terms ordered by symbol index, I before Q,
/// pure a*x_k / a*x_k* forms collapsed, signs folded left. Zero renders "0".
std::string format_entry(const SymbolicEntry& e);

/// Full matrix as aligned text, one row per line.
std::string render_text(const Design& d);

// JSON design file format:
//   { "name": str, "N": int, "K": int, "T2": int,
//     "relay_matrices": [ N x [ T2 x [ 2K x [re, im] ] ] ] }
std::string design_to_json(const Design& d);
Design design_from_json(const std::string& text);
void save_design(const Design& d, const std::string& path);
Design load_design(const std::string& path);

/// Builtin registry: cod2 cod4 cod8 ciod4 ciod8 cuw2 cuw4 rr8 rodN scodN.
Design builtin_design(std::string_view spec);
std::vector<std::string> builtin_names();

/// Resolves a builtin name or a JSON file path.
Design resolve_design(const std::string& spec);

}  // namespace dstbc

#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "algebra.hpp"
#include "channel.hpp"
#include "designs.hpp"

namespace dstbc {

inline constexpr double kDefaultCertTol = 1e-9;

/// Tri-state for the full-diversity test: the determinant criterion only
/// covers the subclass with vanishing cross terms.
enum class TriState { False, True, NotApplicable };

std::string to_string(TriState t);

/// The extracted block-diagonal certificates: one per relay for the Gram
/// family, one per unordered pair for the two cross families.
struct DBlockSet {
    std::vector<Block2Pattern> d1;                            // D1_jj, j = 1..N
    std::map<std::pair<std::size_t, std::size_t>, Block2Pattern> d2;  // i < j
    std::map<std::pair<std::size_t, std::size_t>, Block2Pattern> d3;  // i < j
};

/// Failure location: which family, which relay indices, where the largest
/// off-block entry sits and how big it is.
struct CertWitness {
    std::string family;  // "d1", "d2", "d3", "triple_g", "triple_x"
    std::size_t j1 = 0, j2 = 0, j3 = 0;  // 1-based relay indices (unused -> 0)
    std::size_t row = 0, col = 0;
    double magnitude = 0.0;
};

struct ColocatedResult {
    bool ssd = false;
    std::optional<DBlockSet> blocks;   // present on success
    std::optional<CertWitness> witness;  // present on failure
};

struct PcrcResult {
    bool ssd = false;
    std::optional<CertWitness> witness;
};

struct CertReport {
    std::string design_name;
    std::size_t n_relays = 0;
    std::string rate;
    bool colocated_ssd = false;
    bool pcrc_ssd = false;
    TriState full_diversity = TriState::NotApplicable;
    bool rar3_sufficient = false;
    std::optional<CertWitness> witness;

    std::string to_json() const;
    std::string to_text() const;
};

/// Exhaustiveness of the relay-triple scan. The two triple families are
/// invariant under swapping the outer indices, so the upper scan is
/// sufficient; the full scan exists as a cross-check mode.
enum class TripleScan { UpperOnly, AllOrdered };

/// Single-symbol decodability for co-located transmission: the three matrix
/// families Re(A_j^H A_j), Re(A_i^H A_j + A_j^H A_i), Im(A_i^H A_j - A_j^H A_i)
/// must all be 2x2 block-diagonal.
ColocatedResult colocated_ssd_check(const Design& d, double tol = kDefaultCertTol);

/// SSD over the phase-compensated relay channel: colocated SSD plus
/// block-diagonality of the two relay-triple families for all triples.
PcrcResult pcrc_ssd_check(const Design& d, double tol = kDefaultCertTol,
                          TripleScan scan = TripleScan::UpperOnly);

/// Full diversity for all constellations: applicable only when both cross
/// families vanish; then every 2x2 block of every D1_jj must be positive
/// definite.
TriState full_diversity_check(const Design& d, double tol = kDefaultCertTol);

/// Prior-art sufficient condition: stacked [A_jI; A_jQ] satisfies
/// Z_j Z_j^T = alpha I with one common alpha > 0 across relays.
bool rar3_sufficient_check(const Design& d, double tol = kDefaultCertTol);

CertReport certify(const Design& d, double tol = kDefaultCertTol);

struct Table1Row {
    std::string code;
    std::string relays;  // "2", "4", ..., ">=4"
    std::string rate;
    bool necessary_sufficient = false;
    bool rar3_sufficient = false;
};

/// The eight-row certification table over the builtin code families; the
/// stacked-COD row is evaluated at N = 4 and N = 10 and reports the
/// conjunction.
std::vector<Table1Row> table1_report();
std::string table1_text(const std::vector<Table1Row>& rows);
std::string table1_json(const std::vector<Table1Row>& rows);

/// Covariance of the matched-filter statistic Re(H_eq^H z_total) under the
/// phase-compensated model, from the closed-form triple sum over relays
/// (factored as sum_j2 L_j2 L_j2^T) plus the destination-noise term
/// 0.5 Re(H_eq^H H_eq). 2K x 2K.
RealMatrix matched_filter_noise_covariance(const Design& d, const ChannelRealization& ch,
                                           const EnergyPolicy& energy);

}  // namespace dstbc

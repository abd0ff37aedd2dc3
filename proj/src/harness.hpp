#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "channel.hpp"
#include "constellations.hpp"
#include "decoders.hpp"
#include "designs.hpp"

namespace dstbc {

enum class DecoderKind { Ssd, JointMismatched, JointWhitened };

std::string to_string(TransmissionMode m);
std::string to_string(DecoderKind k);
TransmissionMode mode_from_string(const std::string& s);
DecoderKind decoder_from_string(const std::string& s);

/// One Monte Carlo sweep. SNR is the total per-symbol energy budget E_t over
/// the unit destination noise variance, in dB.
struct SimConfig {
    std::string design;          // builtin name or design-file path
    std::string constellation;   // e.g. "qam16", "psk4@30"
    TransmissionMode mode = TransmissionMode::PhaseCompensatedPcrc;
    DecoderKind decoder = DecoderKind::Ssd;
    std::vector<double> snr_grid_db;
    std::uint64_t max_trials = 2'000'000;
    std::uint64_t target_bit_errors = 400;
    std::uint64_t seed = 1;
    unsigned workers = 0;  // 0 = hardware concurrency
    std::uint64_t joint_cap = kDefaultJointCap;

    bool operator==(const SimConfig&) const = default;
};

struct BerPoint {
    double snr_db = 0.0;
    std::uint64_t bits_sent = 0;
    std::uint64_t bit_errors = 0;
    std::uint64_t trials = 0;
    double ber = 0.0;
    double wall_time_s = 0.0;
    double wilson_low = 0.0;
    double wilson_high = 0.0;
};

struct RunRecord {
    SimConfig config;
    std::vector<BerPoint> points;
    std::string snr_definition =
        "snr_db = 10*log10(E_t), total per-symbol two-phase energy over unit "
        "destination noise variance";
};

/// Runs every SNR point until target_bit_errors or max_trials, in rounds of
/// trials whose random streams are keyed by (seed, point, trial); results are
/// bit-identical for any worker count.
RunRecord run_ber(const SimConfig& cfg);

/// Negated least-squares slope of log10(BER) against snr_db/10 over the
/// points inside [lo_db, hi_db]; estimates the diversity order.
double diversity_slope(std::span<const BerPoint> points, double lo_db, double hi_db);

std::string points_to_csv(std::span<const BerPoint> points);
void emit_csv(std::span<const BerPoint> points, const std::string& path);

std::string run_record_to_json(const RunRecord& rec);
RunRecord run_record_from_json(const std::string& text);
void emit_json(const RunRecord& rec, const std::string& path);

std::string config_to_json(const SimConfig& cfg);
SimConfig config_from_json(const std::string& text);

/// CSV parsed back into points (snr_db, bits, errors, ber columns).
std::vector<BerPoint> points_from_csv(const std::string& text);

}  // namespace dstbc

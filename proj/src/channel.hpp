#pragma once

#include <span>
#include <vector>

#include "algebra.hpp"
#include "designs.hpp"
#include "rng.hpp"

namespace dstbc {

/// Per-codeword fading state: source->relay and relay->destination gains.
struct ChannelRealization {
    std::vector<cplx> source_to_relay;  // h_sj
    std::vector<cplx> relay_to_dest;    // h_jd
};

/// Two-phase energy split: half the per-symbol budget in the broadcast phase,
/// the other half spread over the M relay transmissions of the symbol.
struct EnergyPolicy {
    double total_energy = 0.0;      // E_t per symbol, both phases combined
    double broadcast_energy = 0.0;  // E_1 = E_t / 2
    double relay_energy = 0.0;      // E_2 = E_t / (2 M)
    std::size_t transmissions_per_symbol = 0;  // M
    double amplification = 0.0;     // G = sqrt(E_2 / (E_1 + 1))
};

enum class TransmissionMode {
    NoCsiAtRelays,          // relays amplify blindly
    PhaseCompensatedPcrc,   // relays derotate by the source-link phase
};

/// i.i.d. CN(0,1) gains for all 2N links; deterministic given the stream.
ChannelRealization sample_channel(std::size_t n_relays, Rng& rng);

EnergyPolicy energy_policy(double total_energy, const Design& d);

/// Override for the transmissions-per-symbol count (config escape hatch).
EnergyPolicy energy_policy_with_m(double total_energy, std::size_t m);

/// Relay-phase columns c_j = A_j * v_hat_j for one codeword. Noise streams are
/// one Rng per relay; pass an empty span for the noise-free reduction.
std::vector<std::vector<cplx>> relay_receive_and_process(const Design& d,
                                                         std::span<const double> x,
                                                         const ChannelRealization& ch,
                                                         const EnergyPolicy& energy,
                                                         TransmissionMode mode,
                                                         std::span<Rng> relay_noise);

/// y = sum_j h_jd c_j + z_d; null rng means noise-free.
std::vector<cplx> destination_receive(const std::vector<std::vector<cplx>>& columns,
                                      const ChannelRealization& ch, Rng* dest_noise);

/// Realified effective channel (2 T2 x 2K): noise-free realified receive
/// vector equals effective_channel(..) * x.
RealMatrix effective_channel(const Design& d, const ChannelRealization& ch,
                             const EnergyPolicy& energy, TransmissionMode mode);

/// Complex-valued effective channel (T2 x 2K), before realification.
ComplexMatrix effective_channel_complex(const Design& d, const ChannelRealization& ch,
                                        const EnergyPolicy& energy, TransmissionMode mode);

/// Exact second-moment matrix of the realified total noise
/// z = sum_j h_jd A_j zhat_j + z_d: 0.5 I plus (G^2/2)-scaled relay terms.
/// Mode does not enter; phase compensation leaves the noise statistics alone.
RealMatrix total_noise_covariance(const Design& d, const ChannelRealization& ch,
                                  const EnergyPolicy& energy);

/// Realified total-noise sample consistent with total_noise_covariance.
std::vector<double> sample_total_noise(const Design& d, const ChannelRealization& ch,
                                       const EnergyPolicy& energy, std::span<Rng> relay_noise,
                                       Rng& dest_noise);

std::vector<double> realify_vector(std::span<const cplx> v);

}  // namespace dstbc

#include "channel.hpp"

#include <cmath>

namespace dstbc {
namespace {

// v_hat_j for one relay: G sqrt(E1) * (rotation or magnitude) applied to x,
// plus the G-scaled realified broadcast noise.
std::vector<double> relay_vector(const Design& d, std::span<const double> x, cplx h_sj,
                                 const EnergyPolicy& energy, TransmissionMode mode,
                                 Rng* noise) {
    const std::size_t K = d.n_symbols;
    std::vector<double> v(2 * K, 0.0);
    const double scale = energy.amplification * std::sqrt(energy.broadcast_energy);
    if (mode == TransmissionMode::PhaseCompensatedPcrc) {
        const double mag = std::abs(h_sj);
        for (std::size_t i = 0; i < 2 * K; ++i) v[i] = scale * mag * x[i];
    } else {
        const double hr = h_sj.real(), hi = h_sj.imag();
        for (std::size_t k = 0; k < K; ++k) {
            v[2 * k] = scale * (hr * x[2 * k] - hi * x[2 * k + 1]);
            v[2 * k + 1] = scale * (hi * x[2 * k] + hr * x[2 * k + 1]);
        }
    }
    if (noise) {
        const double ns = energy.amplification * 0.70710678118654752440;
        for (std::size_t i = 0; i < 2 * K; ++i) v[i] += ns * noise->gaussian();
    }
    return v;
}

}  // namespace

ChannelRealization sample_channel(std::size_t n_relays, Rng& rng) {
    ChannelRealization ch;
    ch.source_to_relay.reserve(n_relays);
    ch.relay_to_dest.reserve(n_relays);
    for (std::size_t j = 0; j < n_relays; ++j) ch.source_to_relay.push_back(rng.cgaussian_unit());
    for (std::size_t j = 0; j < n_relays; ++j) ch.relay_to_dest.push_back(rng.cgaussian_unit());
    return ch;
}

EnergyPolicy energy_policy_with_m(double total_energy, std::size_t m) {
    if (!(total_energy > 0.0)) throw ValidationError("energy_policy: total energy must be positive");
    if (m == 0) throw ValidationError("energy_policy: transmissions per symbol must be >= 1");
    EnergyPolicy e;
    e.total_energy = total_energy;
    e.broadcast_energy = total_energy / 2.0;
    e.transmissions_per_symbol = m;
    e.relay_energy = total_energy / (2.0 * static_cast<double>(m));
    e.amplification = std::sqrt(e.relay_energy / (e.broadcast_energy + 1.0));
    return e;
}

EnergyPolicy energy_policy(double total_energy, const Design& d) {
    return energy_policy_with_m(total_energy, transmissions_per_symbol(d));
}

std::vector<std::vector<cplx>> relay_receive_and_process(const Design& d,
                                                         std::span<const double> x,
                                                         const ChannelRealization& ch,
                                                         const EnergyPolicy& energy,
                                                         TransmissionMode mode,
                                                         std::span<Rng> relay_noise) {
    if (x.size() != 2 * d.n_symbols)
        throw ValidationError("relay_receive_and_process: x must have length 2K");
    if (ch.source_to_relay.size() != d.n_relays)
        throw ValidationError("relay_receive_and_process: channel size mismatch");
    if (!relay_noise.empty() && relay_noise.size() != d.n_relays)
        throw ValidationError("relay_receive_and_process: need one noise stream per relay");
    std::vector<std::vector<cplx>> cols;
    cols.reserve(d.n_relays);
    for (std::size_t j = 0; j < d.n_relays; ++j) {
        Rng* noise = relay_noise.empty() ? nullptr : &relay_noise[j];
        auto v = relay_vector(d, x, ch.source_to_relay[j], energy, mode, noise);
        cols.push_back(matvec(d.relay_matrices[j], v));
    }
    return cols;
}

std::vector<cplx> destination_receive(const std::vector<std::vector<cplx>>& columns,
                                      const ChannelRealization& ch, Rng* dest_noise) {
    if (columns.size() != ch.relay_to_dest.size())
        throw ValidationError("destination_receive: column count mismatch");
    if (columns.empty()) return {};
    const std::size_t T2 = columns.front().size();
    std::vector<cplx> y(T2, cplx{});
    for (std::size_t j = 0; j < columns.size(); ++j) {
        if (columns[j].size() != T2) throw ValidationError("destination_receive: ragged columns");
        const cplx h = ch.relay_to_dest[j];
        for (std::size_t t = 0; t < T2; ++t) y[t] += h * columns[j][t];
    }
    if (dest_noise)
        for (std::size_t t = 0; t < T2; ++t) y[t] += dest_noise->cgaussian_unit();
    return y;
}

ComplexMatrix effective_channel_complex(const Design& d, const ChannelRealization& ch,
                                        const EnergyPolicy& energy, TransmissionMode mode) {
    if (ch.source_to_relay.size() != d.n_relays || ch.relay_to_dest.size() != d.n_relays)
        throw ValidationError("effective_channel: channel size mismatch");
    const std::size_t K = d.n_symbols;
    ComplexMatrix h(d.rows, 2 * K);
    const double scale = energy.amplification * std::sqrt(energy.broadcast_energy);
    for (std::size_t j = 0; j < d.n_relays; ++j) {
        const cplx hd = ch.relay_to_dest[j];
        const cplx hs = ch.source_to_relay[j];
        const auto& a = d.relay_matrices[j];
        if (mode == TransmissionMode::PhaseCompensatedPcrc) {
            const cplx w = scale * std::abs(hs) * hd;
            for (std::size_t i = 0; i < h.data.size(); ++i) h.data[i] += w * a.data[i];
        } else {
            // columns of A_j * H_sj: pairwise rotation of (I, Q) column pairs
            const cplx w = scale * hd;
            const double hr = hs.real(), hi = hs.imag();
            for (std::size_t t = 0; t < a.rows; ++t)
                for (std::size_t k = 0; k < K; ++k) {
                    const cplx ai = a(t, 2 * k), aq = a(t, 2 * k + 1);
                    h(t, 2 * k) += w * (ai * hr + aq * hi);
                    h(t, 2 * k + 1) += w * (-ai * hi + aq * hr);
                }
        }
    }
    return h;
}

RealMatrix effective_channel(const Design& d, const ChannelRealization& ch,
                             const EnergyPolicy& energy, TransmissionMode mode) {
    return realify_channel(effective_channel_complex(d, ch, energy, mode));
}

RealMatrix total_noise_covariance(const Design& d, const ChannelRealization& ch,
                                  const EnergyPolicy& energy) {
    const std::size_t T2 = d.rows;
    RealMatrix omega(2 * T2, 2 * T2);
    for (std::size_t i = 0; i < 2 * T2; ++i) omega(i, i) = 0.5;
    const double g2 = energy.amplification * energy.amplification / 2.0;
    for (std::size_t j = 0; j < d.n_relays; ++j) {
        ComplexMatrix m = d.relay_matrices[j];
        const cplx h = ch.relay_to_dest[j];
        for (auto& v : m.data) v *= h;
        RealMatrix r = realify_channel(m);
        RealMatrix rrT = matmul_a_bt(r, r);
        add_inplace(omega, rrT, g2);
    }
    return omega;
}

std::vector<double> sample_total_noise(const Design& d, const ChannelRealization& ch,
                                       const EnergyPolicy& energy, std::span<Rng> relay_noise,
                                       Rng& dest_noise) {
    if (relay_noise.size() != d.n_relays)
        throw ValidationError("sample_total_noise: need one noise stream per relay");
    const std::size_t T2 = d.rows;
    std::vector<cplx> z(T2, cplx{});
    const double ns = energy.amplification * 0.70710678118654752440;
    std::vector<double> zj(2 * d.n_symbols);
    for (std::size_t j = 0; j < d.n_relays; ++j) {
        for (auto& v : zj) v = ns * relay_noise[j].gaussian();
        auto col = matvec(d.relay_matrices[j], zj);
        const cplx h = ch.relay_to_dest[j];
        for (std::size_t t = 0; t < T2; ++t) z[t] += h * col[t];
    }
    for (std::size_t t = 0; t < T2; ++t) z[t] += dest_noise.cgaussian_unit();
    return realify_vector(z);
}

std::vector<double> realify_vector(std::span<const cplx> v) {
    std::vector<double> out(2 * v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        out[i] = v[i].real();
        out[v.size() + i] = v[i].imag();
    }
    return out;
}

}  // namespace dstbc

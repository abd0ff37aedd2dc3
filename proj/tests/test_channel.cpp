#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "channel.hpp"
#include "conditions.hpp"

using namespace dstbc;

namespace {

std::vector<double> random_x(std::size_t n, Rng& rng) {
    std::vector<double> x(n);
    for (auto& v : x) v = rng.gaussian();
    return x;
}

}  // namespace

TEST_CASE("sample_channel determinism and law") {
    Rng a(123), b(123);
    auto ch1 = sample_channel(4, a);
    auto ch2 = sample_channel(4, b);
    CHECK(ch1.source_to_relay == ch2.source_to_relay);
    CHECK(ch1.relay_to_dest == ch2.relay_to_dest);

    CHECK(sample_channel(0, a).source_to_relay.empty());

    // law of large numbers: E|h|^2 = 1
    Rng rng(9);
    double acc = 0;
    const int n = 100000;
    for (int t = 0; t < n; ++t) acc += std::norm(rng.cgaussian_unit());
    CHECK(std::abs(acc / n - 1.0) < 0.02);
}

TEST_CASE("energy policy") {
    Design d = builtin_design("cod2");
    EnergyPolicy e = energy_policy(2.0, d);
    CHECK(e.broadcast_energy == 1.0);
    CHECK(e.transmissions_per_symbol == 2);
    CHECK(e.relay_energy == 0.5);
    CHECK(e.amplification == doctest::Approx(0.5));
    CHECK_THROWS_AS(energy_policy(0.0, d), ValidationError);
    CHECK_THROWS_AS(energy_policy(-1.0, d), ValidationError);
    // G approaches sqrt(E2/E1) as the broadcast energy grows
    EnergyPolicy big = energy_policy(2.0e9, d);
    CHECK(big.amplification ==
          doctest::Approx(std::sqrt(big.relay_energy / big.broadcast_energy)).epsilon(1e-6));
}

TEST_CASE("noise-free relay processing") {
    Design d = builtin_design("cod2");
    EnergyPolicy e = energy_policy(2.0, d);
    ChannelRealization ch;
    ch.source_to_relay = {cplx{1, 0}, cplx{1, 0}};
    ch.relay_to_dest = {cplx{1, 0}, cplx{1, 0}};
    Rng rng(5);
    auto x = random_x(4, rng);

    SUBCASE("phase-compensated with unit gains reduces to scaled columns") {
        auto cols = relay_receive_and_process(d, x, ch, e, TransmissionMode::PhaseCompensatedPcrc, {});
        const double s = e.amplification * std::sqrt(e.broadcast_energy);
        for (std::size_t j = 0; j < 2; ++j) {
            auto want = matvec(d.relay_matrices[j], x);
            for (std::size_t t = 0; t < want.size(); ++t)
                CHECK(std::abs(cols[j][t] - s * want[t]) < 1e-14);
        }
    }
    SUBCASE("real positive gains make both modes identical") {
        ch.source_to_relay = {cplx{0.3, 0}, cplx{1.7, 0}};
        auto a = relay_receive_and_process(d, x, ch, e, TransmissionMode::PhaseCompensatedPcrc, {});
        auto b = relay_receive_and_process(d, x, ch, e, TransmissionMode::NoCsiAtRelays, {});
        for (std::size_t j = 0; j < 2; ++j)
            for (std::size_t t = 0; t < a[j].size(); ++t) CHECK(std::abs(a[j][t] - b[j][t]) < 1e-14);
    }
}

TEST_CASE("destination combining") {
    std::vector<std::vector<cplx>> cols = {{cplx{1, 0}, cplx{0, 1}}, {cplx{2, 0}, cplx{0, 0}}};
    ChannelRealization ch;
    ch.source_to_relay = {cplx{1, 0}, cplx{1, 0}};

    SUBCASE("single relay passthrough") {
        ch.relay_to_dest = {cplx{1, 0}};
        std::vector<std::vector<cplx>> one = {cols[0]};
        auto y = destination_receive(one, ch, nullptr);
        CHECK(y == cols[0]);
    }
    SUBCASE("two relays with complex weights") {
        ch.relay_to_dest = {cplx{1, 0}, cplx{0, 1}};
        auto y = destination_receive(cols, ch, nullptr);
        CHECK(std::abs(y[0] - (cplx{1, 0} + cplx{0, 1} * cplx{2, 0})) < 1e-15);
        CHECK(std::abs(y[1] - cplx{0, 1}) < 1e-15);
    }
    SUBCASE("destination noise halves per real component") {
        ch.relay_to_dest = {cplx{0, 0}};
        std::vector<std::vector<cplx>> one = {{cplx{}, cplx{}}};
        Rng rng(31);
        double acc_r = 0, acc_i = 0;
        const int n = 50000;
        for (int t = 0; t < n; ++t) {
            auto y = destination_receive(one, ch, &rng);
            acc_r += y[0].real() * y[0].real();
            acc_i += y[0].imag() * y[0].imag();
        }
        CHECK(std::abs(acc_r / n - 0.5) < 0.02);
        CHECK(std::abs(acc_i / n - 0.5) < 0.02);
    }
}

TEST_CASE("effective channel matches the simulated noise-free path") {
    Rng rng(777);
    for (const char* n : {"cod2", "ciod4", "cuw4", "cod4", "scod4"}) {
        Design d = builtin_design(n);
        EnergyPolicy e = energy_policy(3.0, d);
        for (auto mode : {TransmissionMode::PhaseCompensatedPcrc, TransmissionMode::NoCsiAtRelays}) {
            for (int t = 0; t < 20; ++t) {
                auto ch = sample_channel(d.n_relays, rng);
                auto x = random_x(2 * d.n_symbols, rng);
                auto cols = relay_receive_and_process(d, x, ch, e, mode, {});
                auto y = destination_receive(cols, ch, nullptr);
                auto y_real = realify_vector(y);
                auto want = matvec(effective_channel(d, ch, e, mode), x);
                REQUIRE(want.size() == y_real.size());
                double scale = 0;
                for (double v : y_real) scale = std::max(scale, std::abs(v));
                for (std::size_t i = 0; i < want.size(); ++i)
                    CHECK(std::abs(want[i] - y_real[i]) < 1e-12 * (1.0 + scale));
            }
        }
    }
}

TEST_CASE("phase compensation invariance under seeded noise") {
    // replacing the source gains by their magnitudes must not change anything
    Design d = builtin_design("ciod4");
    EnergyPolicy e = energy_policy(2.0, d);
    Rng crng(12);
    auto ch = sample_channel(d.n_relays, crng);
    ChannelRealization mag = ch;
    for (auto& h : mag.source_to_relay) h = std::abs(h);
    Rng xr(55);
    auto x = random_x(8, xr);
    std::vector<Rng> noise_a, noise_b;
    for (std::size_t j = 0; j < 4; ++j) {
        noise_a.emplace_back(Rng(1000 + j));
        noise_b.emplace_back(Rng(1000 + j));
    }
    auto a = relay_receive_and_process(d, x, ch, e, TransmissionMode::PhaseCompensatedPcrc, noise_a);
    auto b = relay_receive_and_process(d, x, mag, e, TransmissionMode::PhaseCompensatedPcrc, noise_b);
    for (std::size_t j = 0; j < 4; ++j) CHECK(a[j] == b[j]);
}

TEST_CASE("total noise covariance") {
    Design d = builtin_design("cod2");
    Rng rng(4);
    auto ch = sample_channel(2, rng);

    SUBCASE("no amplification leaves only the destination floor") {
        EnergyPolicy e{};
        e.amplification = 0.0;
        RealMatrix omega = total_noise_covariance(d, ch, e);
        for (std::size_t r = 0; r < omega.rows; ++r)
            for (std::size_t c = 0; c < omega.cols; ++c)
                CHECK(omega(r, c) == (r == c ? 0.5 : 0.0));
    }
    SUBCASE("scaled identity for scaled-identity-sufficient designs") {
        EnergyPolicy e = energy_policy(2.0, d);
        RealMatrix omega = total_noise_covariance(d, ch, e);
        const double diag = omega(0, 0);
        for (std::size_t r = 0; r < omega.rows; ++r)
            for (std::size_t c = 0; c < omega.cols; ++c)
                CHECK(omega(r, c) == doctest::Approx(r == c ? diag : 0.0).epsilon(1e-12));
        CHECK(diag > 0.5);
    }
    SUBCASE("matches the empirical second moment") {
        Design dd = builtin_design("ciod4");
        EnergyPolicy e = energy_policy(4.0, dd);
        auto ch4 = sample_channel(4, rng);
        RealMatrix want = total_noise_covariance(dd, ch4, e);
        const std::size_t L = 2 * dd.rows;
        RealMatrix acc(L, L), acc2(L, L);
        std::vector<Rng> relay;
        for (int j = 0; j < 4; ++j) relay.emplace_back(Rng(50 + j));
        Rng dest(99);
        const int n = 30000;
        for (int t = 0; t < n; ++t) {
            auto z = sample_total_noise(dd, ch4, e, relay, dest);
            for (std::size_t i = 0; i < L; ++i)
                for (std::size_t j = 0; j < L; ++j) {
                    const double v = z[i] * z[j];
                    acc(i, j) += v;
                    acc2(i, j) += v * v;
                }
        }
        for (std::size_t i = 0; i < L; ++i)
            for (std::size_t j = 0; j < L; ++j) {
                const double mean = acc(i, j) / n;
                const double var = acc2(i, j) / n - mean * mean;
                const double se = std::sqrt(std::max(var, 1e-30) / n);
                CHECK(std::abs(mean - want(i, j)) < 4.0 * se + 1e-12);
            }
    }
    SUBCASE("symmetric positive definite for random realizations") {
        Design dd = builtin_design("cuw4");
        EnergyPolicy e = energy_policy(2.0, dd);
        for (int t = 0; t < 20; ++t) {
            auto ch4 = sample_channel(4, rng);
            RealMatrix omega = total_noise_covariance(dd, ch4, e);
            for (std::size_t r = 0; r < omega.rows; ++r)
                for (std::size_t c = 0; c < r; ++c)
                    CHECK(omega(r, c) == doctest::Approx(omega(c, r)).epsilon(1e-12));
            // diagonal dominance of the destination floor keeps it PD; verify
            // via a few random quadratic forms
            for (int q = 0; q < 5; ++q) {
                auto v = random_x(omega.rows, rng);
                double quad = 0;
                for (std::size_t r = 0; r < omega.rows; ++r)
                    for (std::size_t c = 0; c < omega.cols; ++c) quad += v[r] * omega(r, c) * v[c];
                CHECK(quad > 0.0);
            }
        }
    }
}

TEST_CASE("per-transmission relay energy stays within budget") {
    // E[|transmitted entry|^2] <= E2 within sampling error (equality when all
    // source gains have unit magnitude; Rayleigh averages to the budget)
    Design d = builtin_design("cod2");
    EnergyPolicy e = energy_policy(2.0, d);
    Rng rng(2);
    double acc = 0;
    std::size_t count = 0;
    const int n = 20000;
    std::vector<Rng> noise;
    noise.emplace_back(Rng(7));
    noise.emplace_back(Rng(8));
    for (int t = 0; t < n; ++t) {
        auto ch = sample_channel(2, rng);
        std::vector<double> x(4);
        for (auto& v : x) v = rng.gaussian() * 0.70710678118654752440;  // unit-energy symbols
        auto cols = relay_receive_and_process(d, x, ch, e, TransmissionMode::PhaseCompensatedPcrc,
                                              noise);
        for (const auto& col : cols)
            for (const auto& entry : col) {
                acc += std::norm(entry);
                ++count;
            }
    }
    const double mean = acc / count;
    CHECK(mean < e.relay_energy * 1.05);
    CHECK(mean > e.relay_energy * 0.8);
}

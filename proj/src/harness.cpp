#include "harness.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "conditions.hpp"

namespace dstbc {
namespace {

using json = nlohmann::json;

struct PointAccum {
    std::uint64_t bits = 0;
    std::uint64_t errors = 0;
    std::uint64_t trials = 0;
};

struct TrialContext {
    const Design* design;
    const Constellation* constellation;
    TransmissionMode mode;
    DecoderKind decoder;
    EnergyPolicy energy;
    std::uint64_t seed;
    std::size_t point_index;
    std::uint64_t joint_cap;
};

// stream tags inside one trial
constexpr std::uint64_t kStreamChannel = 0;
constexpr std::uint64_t kStreamData = 1;
constexpr std::uint64_t kStreamRelayBase = 2;

std::pair<std::uint64_t, std::uint64_t> run_trial(const TrialContext& ctx, std::uint64_t trial) {
    const Design& d = *ctx.design;
    const Constellation& c = *ctx.constellation;
    const std::size_t K = d.n_symbols;
    const std::size_t N = d.n_relays;

    Rng ch_rng(Rng::derive(ctx.seed, {ctx.point_index, trial, kStreamChannel}));
    Rng data_rng(Rng::derive(ctx.seed, {ctx.point_index, trial, kStreamData}));
    std::vector<Rng> relay_rngs;
    relay_rngs.reserve(N);
    for (std::size_t j = 0; j < N; ++j)
        relay_rngs.emplace_back(Rng::derive(ctx.seed, {ctx.point_index, trial, kStreamRelayBase + j}));
    Rng dest_rng(Rng::derive(ctx.seed, {ctx.point_index, trial, kStreamRelayBase + N}));

    ChannelRealization ch = sample_channel(N, ch_rng);

    std::vector<std::size_t> tx(K);
    std::vector<double> x(2 * K);
    for (std::size_t k = 0; k < K; ++k) {
        tx[k] = static_cast<std::size_t>(data_rng.below(c.size()));
        x[2 * k] = c.points[tx[k]].real();
        x[2 * k + 1] = c.points[tx[k]].imag();
    }

    auto columns = relay_receive_and_process(d, x, ch, ctx.energy, ctx.mode, relay_rngs);
    auto y = destination_receive(columns, ch, &dest_rng);
    auto y_real = realify_vector(y);
    RealMatrix h_real = effective_channel(d, ch, ctx.energy, ctx.mode);

    DecodeResult dec;
    switch (ctx.decoder) {
        case DecoderKind::Ssd:
            dec = decode_ssd(matched_filter(h_real, y_real), c);
            break;
        case DecoderKind::JointMismatched:
            dec = decode_joint_mismatched(h_real, y_real, c, ctx.joint_cap);
            break;
        case DecoderKind::JointWhitened: {
            RealMatrix omega = total_noise_covariance(d, ch, ctx.energy);
            dec = decode_joint_whitened(h_real, y_real, omega, c, ctx.joint_cap);
            break;
        }
    }

    std::uint64_t errors = 0;
    for (std::size_t k = 0; k < K; ++k)
        errors += std::popcount(c.labels[tx[k]] ^ c.labels[dec.symbol_indices[k]]);
    return {static_cast<std::uint64_t>(K) * c.bits_per_symbol, errors};
}

void wilson_interval(std::uint64_t errors, std::uint64_t bits, double& lo, double& hi) {
    if (bits == 0) {
        lo = hi = 0.0;
        return;
    }
    const double z = 1.959963984540054;  // 95%
    const double n = static_cast<double>(bits);
    const double p = static_cast<double>(errors) / n;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / n;
    const double center = p + z2 / (2.0 * n);
    const double half = z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n));
    lo = std::max(0.0, (center - half) / denom);
    hi = std::min(1.0, (center + half) / denom);
}

void validate_config(const SimConfig& cfg, const Design& d, const Constellation& c) {
    if (cfg.snr_grid_db.empty()) throw ValidationError("simulate: empty SNR grid");
    for (std::size_t i = 1; i < cfg.snr_grid_db.size(); ++i)
        if (cfg.snr_grid_db[i] <= cfg.snr_grid_db[i - 1])
            throw ValidationError("simulate: SNR grid must be strictly increasing");
    if (cfg.target_bit_errors == 0) throw ValidationError("simulate: target_bit_errors must be >= 1");
    if (cfg.max_trials == 0) throw ValidationError("simulate: max_trials must be >= 1");
    if (cfg.decoder == DecoderKind::Ssd) {
        if (cfg.mode != TransmissionMode::PhaseCompensatedPcrc)
            throw ValidationError(
                "simulate: the single-symbol decoder needs phase compensation at the relays "
                "(mode pcrc); without it the metric does not separate, use --decoder joint");
        if (!pcrc_ssd_check(d).ssd)
            throw ValidationError("simulate: design '" + d.name +
                                  "' is not single-symbol decodable over the phase-compensated "
                                  "relay channel (run `check " +
                                  d.name + "`); use --decoder joint or whitened");
    } else {
        double tuples = 1.0;
        for (std::size_t i = 0; i < d.n_symbols; ++i) tuples *= static_cast<double>(c.size());
        if (tuples > static_cast<double>(cfg.joint_cap))
            throw ValidationError("simulate: joint search space " + std::to_string(tuples) +
                                  " exceeds cap " + std::to_string(cfg.joint_cap));
    }
}

}  // namespace

std::string to_string(TransmissionMode m) {
    return m == TransmissionMode::PhaseCompensatedPcrc ? "pcrc" : "nocsi";
}

std::string to_string(DecoderKind k) {
    switch (k) {
        case DecoderKind::Ssd: return "ssd";
        case DecoderKind::JointMismatched: return "joint";
        default: return "whitened";
    }
}

TransmissionMode mode_from_string(const std::string& s) {
    if (s == "pcrc") return TransmissionMode::PhaseCompensatedPcrc;
    if (s == "nocsi") return TransmissionMode::NoCsiAtRelays;
    throw ValidationError("mode must be 'pcrc' or 'nocsi', got '" + s + "'");
}

DecoderKind decoder_from_string(const std::string& s) {
    if (s == "ssd") return DecoderKind::Ssd;
    if (s == "joint") return DecoderKind::JointMismatched;
    if (s == "whitened") return DecoderKind::JointWhitened;
    throw ValidationError("decoder must be 'ssd', 'joint' or 'whitened', got '" + s + "'");
}

RunRecord run_ber(const SimConfig& cfg) {
    Design d = resolve_design(cfg.design);
    Constellation c = parse_constellation(cfg.constellation);
    validate_config(cfg, d, c);

    unsigned workers = cfg.workers ? cfg.workers : std::max(1u, std::thread::hardware_concurrency());

    RunRecord rec;
    rec.config = cfg;
    for (std::size_t pi = 0; pi < cfg.snr_grid_db.size(); ++pi) {
        const auto t0 = std::chrono::steady_clock::now();
        const double snr_db = cfg.snr_grid_db[pi];
        TrialContext ctx;
        ctx.design = &d;
        ctx.constellation = &c;
        ctx.mode = cfg.mode;
        ctx.decoder = cfg.decoder;
        ctx.energy = energy_policy(std::pow(10.0, snr_db / 10.0), d);
        ctx.seed = cfg.seed;
        ctx.point_index = pi;
        ctx.joint_cap = cfg.joint_cap;

        PointAccum acc;
        std::uint64_t next_trial = 0;
        while (acc.errors < cfg.target_bit_errors && acc.trials < cfg.max_trials) {
            // deterministic round size: grow while the point is quiet
            std::uint64_t block = 4096;
            if (acc.trials >= 65536 && acc.errors < cfg.target_bit_errors / 4) block = 65536;
            block = std::min(block, cfg.max_trials - acc.trials);

            std::vector<std::uint64_t> bits_w(workers, 0), errs_w(workers, 0);
            std::exception_ptr fail;
            std::mutex fail_mu;
            auto body = [&](unsigned w) {
                std::uint64_t b = 0, e = 0;
                try {
                    for (std::uint64_t t = next_trial + w; t < next_trial + block; t += workers) {
                        auto [tb, te] = run_trial(ctx, t);
                        b += tb;
                        e += te;
                    }
                } catch (...) {
                    std::lock_guard<std::mutex> lk(fail_mu);
                    if (!fail) fail = std::current_exception();
                }
                bits_w[w] = b;
                errs_w[w] = e;
            };
            if (workers == 1) {
                body(0);
            } else {
                std::vector<std::thread> pool;
                pool.reserve(workers);
                for (unsigned w = 0; w < workers; ++w) pool.emplace_back(body, w);
                for (auto& th : pool) th.join();
            }
            if (fail) std::rethrow_exception(fail);
            for (unsigned w = 0; w < workers; ++w) {
                acc.bits += bits_w[w];
                acc.errors += errs_w[w];
            }
            acc.trials += block;
            next_trial += block;
        }

        BerPoint pt;
        pt.snr_db = snr_db;
        pt.bits_sent = acc.bits;
        pt.bit_errors = acc.errors;
        pt.trials = acc.trials;
        pt.ber = acc.bits ? static_cast<double>(acc.errors) / static_cast<double>(acc.bits) : 0.0;
        pt.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        wilson_interval(acc.errors, acc.bits, pt.wilson_low, pt.wilson_high);
        rec.points.push_back(pt);
    }
    return rec;
}

double diversity_slope(std::span<const BerPoint> points, double lo_db, double hi_db) {
    std::vector<const BerPoint*> sel;
    for (const auto& p : points)
        if (p.snr_db >= lo_db && p.snr_db <= hi_db) sel.push_back(&p);
    if (sel.size() < 3)
        throw ValidationError("diversity_slope: need at least 3 points in the window, have " +
                              std::to_string(sel.size()));
    for (const auto* p : sel)
        if (p->bit_errors == 0)
            throw ValidationError("diversity_slope: zero-error point at " +
                                  std::to_string(p->snr_db) +
                                  " dB in the window; run more trials or shrink the window");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = static_cast<double>(sel.size());
    for (const auto* p : sel) {
        const double x = p->snr_db / 10.0;
        const double y = std::log10(p->ber);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double denom = n * sxx - sx * sx;
    if (std::abs(denom) < 1e-12) throw ValidationError("diversity_slope: degenerate SNR window");
    return -(n * sxy - sx * sy) / denom;
}

std::string points_to_csv(std::span<const BerPoint> points) {
    std::string out = "snr_db,bits,errors,ber\n";
    char buf[160];
    for (const auto& p : points) {
        std::snprintf(buf, sizeof buf, "%.10g,%llu,%llu,%.10g\n", p.snr_db,
                      static_cast<unsigned long long>(p.bits_sent),
                      static_cast<unsigned long long>(p.bit_errors), p.ber);
        out += buf;
    }
    return out;
}

void emit_csv(std::span<const BerPoint> points, const std::string& path) {
    std::ofstream f(path);
    if (!f) throw ValidationError("emit_csv: cannot open " + path);
    f << points_to_csv(points);
    if (!f) throw ValidationError("emit_csv: write failed for " + path);
}

namespace {

json point_to_json(const BerPoint& p) {
    return json{{"snr_db", p.snr_db},     {"bits", p.bits_sent},
                {"errors", p.bit_errors}, {"trials", p.trials},
                {"ber", p.ber},           {"wall_time_s", p.wall_time_s},
                {"wilson_low", p.wilson_low}, {"wilson_high", p.wilson_high}};
}

BerPoint point_from_json(const json& j) {
    BerPoint p;
    p.snr_db = j.at("snr_db").get<double>();
    p.bits_sent = j.at("bits").get<std::uint64_t>();
    p.bit_errors = j.at("errors").get<std::uint64_t>();
    p.trials = j.at("trials").get<std::uint64_t>();
    p.ber = j.at("ber").get<double>();
    p.wall_time_s = j.value("wall_time_s", 0.0);
    p.wilson_low = j.value("wilson_low", 0.0);
    p.wilson_high = j.value("wilson_high", 0.0);
    return p;
}

json config_to_json_obj(const SimConfig& cfg) {
    return json{{"design", cfg.design},
                {"constellation", cfg.constellation},
                {"mode", to_string(cfg.mode)},
                {"decoder", to_string(cfg.decoder)},
                {"snr_grid_db", cfg.snr_grid_db},
                {"max_trials", cfg.max_trials},
                {"target_bit_errors", cfg.target_bit_errors},
                {"seed", cfg.seed},
                {"workers", cfg.workers},
                {"joint_cap", cfg.joint_cap}};
}

SimConfig config_from_json_obj(const json& j) {
    SimConfig cfg;
    cfg.design = j.at("design").get<std::string>();
    cfg.constellation = j.at("constellation").get<std::string>();
    cfg.mode = mode_from_string(j.at("mode").get<std::string>());
    cfg.decoder = decoder_from_string(j.at("decoder").get<std::string>());
    cfg.snr_grid_db = j.at("snr_grid_db").get<std::vector<double>>();
    cfg.max_trials = j.value("max_trials", std::uint64_t{2'000'000});
    cfg.target_bit_errors = j.value("target_bit_errors", std::uint64_t{400});
    cfg.seed = j.value("seed", std::uint64_t{1});
    cfg.workers = j.value("workers", 0u);
    cfg.joint_cap = j.value("joint_cap", kDefaultJointCap);
    return cfg;
}

}  // namespace

std::string run_record_to_json(const RunRecord& rec) {
    json j;
    j["config"] = config_to_json_obj(rec.config);
    j["snr_definition"] = rec.snr_definition;
    json pts = json::array();
    for (const auto& p : rec.points) pts.push_back(point_to_json(p));
    j["points"] = std::move(pts);
    return j.dump(2);
}

RunRecord run_record_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw ValidationError(std::string("run record: parse error: ") + e.what());
    }
    RunRecord rec;
    try {
        rec.config = config_from_json_obj(j.at("config"));
        rec.snr_definition = j.value("snr_definition", rec.snr_definition);
        for (const auto& p : j.at("points")) rec.points.push_back(point_from_json(p));
    } catch (const json::exception& e) {
        throw ValidationError(std::string("run record: ") + e.what());
    }
    return rec;
}

void emit_json(const RunRecord& rec, const std::string& path) {
    std::ofstream f(path);
    if (!f) throw ValidationError("emit_json: cannot open " + path);
    f << run_record_to_json(rec) << "\n";
    if (!f) throw ValidationError("emit_json: write failed for " + path);
}

std::string config_to_json(const SimConfig& cfg) { return config_to_json_obj(cfg).dump(2); }

SimConfig config_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw ValidationError(std::string("sim config: parse error: ") + e.what());
    }
    try {
        return config_from_json_obj(j);
    } catch (const json::exception& e) {
        throw ValidationError(std::string("sim config: ") + e.what());
    }
}

std::vector<BerPoint> points_from_csv(const std::string& text) {
    std::vector<BerPoint> pts;
    std::istringstream is(text);
    std::string line;
    bool header = true;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        if (header) {
            header = false;
            continue;
        }
        BerPoint p;
        unsigned long long bits = 0, errs = 0;
        if (std::sscanf(line.c_str(), "%lf,%llu,%llu,%lf", &p.snr_db, &bits, &errs, &p.ber) != 4)
            throw ValidationError("csv: malformed row '" + line + "'");
        p.bits_sent = bits;
        p.bit_errors = errs;
        pts.push_back(p);
    }
    return pts;
}

}  // namespace dstbc

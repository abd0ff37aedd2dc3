// dstbc command-line front end. Talks to the shared library exclusively
// through the C interface in dstbc/dstbc.h.

#include <cstdio>
#include <cstdlib>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "dstbc/dstbc.h"

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitRuntime = 3;

struct StringGuard {
    char* ptr = nullptr;
    ~StringGuard() { dstbc_string_free(ptr); }
};

struct DesignGuard {
    dstbc_design* ptr = nullptr;
    ~DesignGuard() { dstbc_design_free(ptr); }
};

int fail(dstbc_status st) {
    std::fprintf(stderr, "error: %s\n", dstbc_last_error());
    return st == DSTBC_ERR_INVALID ? kExitValidation : kExitRuntime;
}

// "start:step:stop" inclusive grid
std::vector<double> parse_snr(const std::string& spec) {
    double start = 0, step = 0, stop = 0;
    if (std::sscanf(spec.c_str(), "%lf:%lf:%lf", &start, &step, &stop) != 3 || step <= 0 ||
        stop < start)
        throw CLI::ValidationError("--snr", "expected start:step:stop with step > 0");
    std::vector<double> grid;
    for (double v = start; v <= stop + 1e-9; v += step) grid.push_back(v);
    return grid;
}

std::string json_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    return out;
}

unsigned default_workers() {
    if (const char* env = std::getenv("DSTBC_WORKERS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v > 0) return static_cast<unsigned>(v);
    }
    return 0;  // library picks hardware concurrency
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"distributed space-time block codes: construction, certification, simulation"};
    app.require_subcommand(1);

    std::string design_spec, const_spec = "qam16", mode = "pcrc", decoder = "ssd";
    std::string snr_spec = "0:2:24", out_csv, out_json, csv_path, window;
    std::uint64_t trials = 2'000'000, errors_target = 400, seed = 1;
    unsigned workers = default_workers();
    double tol = 1e-9;
    bool as_json = false;

    auto* show = app.add_subcommand("show", "print the symbolic code matrix of a design");
    show->add_option("design", design_spec, "builtin name or design JSON file")->required();

    auto* check = app.add_subcommand("check", "certify decodability and diversity conditions");
    check->add_option("design", design_spec, "builtin name or design JSON file")->required();
    check->add_option("--tol", tol, "structural tolerance");
    check->add_flag("--json", as_json, "emit JSON instead of text");

    auto* table = app.add_subcommand("table1", "certification table over the builtin families");
    table->add_flag("--json", as_json, "emit JSON instead of text");

    auto* sim = app.add_subcommand("simulate", "Monte Carlo BER sweep");
    sim->add_option("--design", design_spec, "builtin name or design JSON file")->required();
    sim->add_option("--const", const_spec, "constellation, e.g. qam16 or psk4@30");
    sim->add_option("--mode", mode, "nocsi or pcrc")->check(CLI::IsMember({"nocsi", "pcrc"}));
    sim->add_option("--decoder", decoder, "ssd, joint or whitened")
        ->check(CLI::IsMember({"ssd", "joint", "whitened"}));
    sim->add_option("--snr", snr_spec, "SNR grid as start:step:stop in dB");
    sim->add_option("--trials", trials, "max trials per SNR point");
    sim->add_option("--errors-target", errors_target, "stop a point after this many bit errors");
    sim->add_option("--seed", seed, "master seed");
    sim->add_option("--workers", workers, "worker threads (0 = auto)");
    sim->add_option("--out", out_csv, "CSV output path");
    sim->add_option("--json", out_json, "JSON run-record output path");

    auto* slope = app.add_subcommand("slope", "diversity order from a result CSV");
    slope->add_option("csv", csv_path, "CSV produced by simulate")->required();
    slope->add_option("--window", window, "SNR window lo:hi in dB")->required();

    CLI11_PARSE(app, argc, argv);

    if (show->parsed()) {
        DesignGuard d;
        if (auto st = dstbc_design_create(design_spec.c_str(), &d.ptr)) return fail(st);
        StringGuard text;
        if (auto st = dstbc_design_render(d.ptr, &text.ptr)) return fail(st);
        std::fputs(text.ptr, stdout);
        return 0;
    }

    if (check->parsed()) {
        DesignGuard d;
        if (auto st = dstbc_design_create(design_spec.c_str(), &d.ptr)) return fail(st);
        StringGuard rep;
        if (auto st = dstbc_certify(d.ptr, tol, as_json ? 1 : 0, &rep.ptr)) return fail(st);
        std::fputs(rep.ptr, stdout);
        if (as_json) std::fputc('\n', stdout);
        return 0;
    }

    if (table->parsed()) {
        StringGuard text;
        if (auto st = dstbc_table1(as_json ? 1 : 0, &text.ptr)) return fail(st);
        std::fputs(text.ptr, stdout);
        if (as_json) std::fputc('\n', stdout);
        return 0;
    }

    if (sim->parsed()) {
        std::vector<double> grid;
        try {
            grid = parse_snr(snr_spec);
        } catch (const CLI::Error& e) {
            std::fprintf(stderr, "error: %s\n", e.what());
            return kExitValidation;
        }
        std::string grid_json = "[";
        for (std::size_t i = 0; i < grid.size(); ++i) {
            char buf[32];
            std::snprintf(buf, sizeof buf, "%s%.10g", i ? "," : "", grid[i]);
            grid_json += buf;
        }
        grid_json += "]";
        char cfg[4096];
        std::snprintf(cfg, sizeof cfg,
                      "{\"design\":\"%s\",\"constellation\":\"%s\",\"mode\":\"%s\","
                      "\"decoder\":\"%s\",\"snr_grid_db\":%s,\"max_trials\":%llu,"
                      "\"target_bit_errors\":%llu,\"seed\":%llu,\"workers\":%u}",
                      json_escape(design_spec).c_str(), json_escape(const_spec).c_str(),
                      mode.c_str(), decoder.c_str(), grid_json.c_str(),
                      static_cast<unsigned long long>(trials),
                      static_cast<unsigned long long>(errors_target),
                      static_cast<unsigned long long>(seed), workers);
        StringGuard result;
        if (auto st = dstbc_simulate(cfg, &result.ptr)) return fail(st);
        StringGuard csv;
        if (auto st = dstbc_result_to_csv(result.ptr, &csv.ptr)) return fail(st);
        if (!out_csv.empty()) {
            if (auto st = dstbc_write_text_file(out_csv.c_str(), csv.ptr)) return fail(st);
        }
        if (!out_json.empty()) {
            std::string with_newline = std::string(result.ptr) + "\n";
            if (auto st = dstbc_write_text_file(out_json.c_str(), with_newline.c_str()))
                return fail(st);
        }
        std::fputs(csv.ptr, stdout);
        return 0;
    }

    if (slope->parsed()) {
        double lo = 0, hi = 0;
        if (std::sscanf(window.c_str(), "%lf:%lf", &lo, &hi) != 2 || hi <= lo) {
            std::fprintf(stderr, "error: --window expects lo:hi in dB\n");
            return kExitValidation;
        }
        double s = 0.0;
        if (auto st = dstbc_slope_from_csv_file(csv_path.c_str(), lo, hi, &s)) return fail(st);
        std::printf("diversity_order %.6f\n", s);
        return 0;
    }

    return kExitValidation;
}

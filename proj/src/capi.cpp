#include "dstbc/dstbc.h"

#include <cstdlib>
#include <cstring>
#include <fstream>
#include <new>
#include <sstream>
#include <string>

#include "conditions.hpp"
#include "designs.hpp"
#include "harness.hpp"

namespace {

thread_local std::string g_last_error = "no error";

struct dstbc_design_wrap {
    dstbc::Design design;
};

char* dup_string(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (!out) throw std::bad_alloc();
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

template <typename Fn>
dstbc_status guarded(Fn&& fn) {
    try {
        fn();
        return DSTBC_OK;
    } catch (const dstbc::ValidationError& e) {
        g_last_error = e.what();
        return DSTBC_ERR_INVALID;
    } catch (const dstbc::ContractError& e) {
        g_last_error = e.what();
        return DSTBC_ERR_INVALID;
    } catch (const std::bad_alloc&) {
        g_last_error = "out of memory";
        return DSTBC_ERR_RUNTIME;
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return DSTBC_ERR_RUNTIME;
    } catch (...) {
        g_last_error = "unknown failure";
        return DSTBC_ERR_RUNTIME;
    }
}

dstbc_status require(bool cond, const char* msg) {
    if (cond) return DSTBC_OK;
    g_last_error = msg;
    return DSTBC_ERR_INVALID;
}

}  // namespace

struct dstbc_design_s : dstbc_design_wrap {};

extern "C" {

const char* dstbc_version(void) { return "1.0.0"; }

const char* dstbc_last_error(void) { return g_last_error.c_str(); }

void dstbc_string_free(char* s) { std::free(s); }

dstbc_status dstbc_design_create(const char* spec, dstbc_design** out) {
    if (auto st = require(spec && out, "dstbc_design_create: null argument")) return st;
    return guarded([&] {
        auto* d = new dstbc_design_s{};
        try {
            d->design = dstbc::resolve_design(spec);
        } catch (...) {
            delete d;
            throw;
        }
        *out = d;
    });
}

dstbc_status dstbc_design_from_json(const char* json_text, dstbc_design** out) {
    if (auto st = require(json_text && out, "dstbc_design_from_json: null argument")) return st;
    return guarded([&] {
        auto* d = new dstbc_design_s{};
        try {
            d->design = dstbc::design_from_json(json_text);
        } catch (...) {
            delete d;
            throw;
        }
        *out = d;
    });
}

void dstbc_design_free(dstbc_design* d) { delete static_cast<dstbc_design_s*>(d); }

dstbc_status dstbc_design_dims(const dstbc_design* d, unsigned* n_relays, unsigned* n_symbols,
                               unsigned* n_rows) {
    if (auto st = require(d != nullptr, "dstbc_design_dims: null design")) return st;
    const auto& dd = static_cast<const dstbc_design_s*>(d)->design;
    if (n_relays) *n_relays = static_cast<unsigned>(dd.n_relays);
    if (n_symbols) *n_symbols = static_cast<unsigned>(dd.n_symbols);
    if (n_rows) *n_rows = static_cast<unsigned>(dd.rows);
    return DSTBC_OK;
}

dstbc_status dstbc_design_name(const dstbc_design* d, char** out) {
    if (auto st = require(d && out, "dstbc_design_name: null argument")) return st;
    return guarded([&] { *out = dup_string(static_cast<const dstbc_design_s*>(d)->design.name); });
}

dstbc_status dstbc_design_to_json(const dstbc_design* d, char** json_out) {
    if (auto st = require(d && json_out, "dstbc_design_to_json: null argument")) return st;
    return guarded([&] {
        *json_out = dup_string(dstbc::design_to_json(static_cast<const dstbc_design_s*>(d)->design));
    });
}

dstbc_status dstbc_design_save(const dstbc_design* d, const char* path) {
    if (auto st = require(d && path, "dstbc_design_save: null argument")) return st;
    dstbc_status rc = guarded(
        [&] { dstbc::save_design(static_cast<const dstbc_design_s*>(d)->design, path); });
    return rc == DSTBC_ERR_INVALID ? DSTBC_ERR_IO : rc;
}

dstbc_status dstbc_design_render(const dstbc_design* d, char** text_out) {
    if (auto st = require(d && text_out, "dstbc_design_render: null argument")) return st;
    return guarded([&] {
        *text_out = dup_string(dstbc::render_text(static_cast<const dstbc_design_s*>(d)->design));
    });
}

dstbc_status dstbc_builtin_names(char** csv_out) {
    if (auto st = require(csv_out != nullptr, "dstbc_builtin_names: null argument")) return st;
    return guarded([&] {
        std::string all;
        for (const auto& n : dstbc::builtin_names()) {
            if (!all.empty()) all += ",";
            all += n;
        }
        *csv_out = dup_string(all);
    });
}

dstbc_status dstbc_certify(const dstbc_design* d, double tol, int as_json, char** out) {
    if (auto st = require(d && out, "dstbc_certify: null argument")) return st;
    if (auto st = require(tol > 0.0, "dstbc_certify: tolerance must be positive")) return st;
    return guarded([&] {
        dstbc::CertReport rep = dstbc::certify(static_cast<const dstbc_design_s*>(d)->design, tol);
        *out = dup_string(as_json ? rep.to_json() : rep.to_text());
    });
}

dstbc_status dstbc_table1(int as_json, char** out) {
    if (auto st = require(out != nullptr, "dstbc_table1: null argument")) return st;
    return guarded([&] {
        auto rows = dstbc::table1_report();
        *out = dup_string(as_json ? dstbc::table1_json(rows) : dstbc::table1_text(rows));
    });
}

dstbc_status dstbc_simulate(const char* config_json, char** result_json_out) {
    if (auto st = require(config_json && result_json_out, "dstbc_simulate: null argument"))
        return st;
    return guarded([&] {
        dstbc::SimConfig cfg = dstbc::config_from_json(config_json);
        dstbc::RunRecord rec = dstbc::run_ber(cfg);
        *result_json_out = dup_string(dstbc::run_record_to_json(rec));
    });
}

dstbc_status dstbc_result_to_csv(const char* result_json, char** csv_out) {
    if (auto st = require(result_json && csv_out, "dstbc_result_to_csv: null argument")) return st;
    return guarded([&] {
        dstbc::RunRecord rec = dstbc::run_record_from_json(result_json);
        *csv_out = dup_string(dstbc::points_to_csv(rec.points));
    });
}

dstbc_status dstbc_write_text_file(const char* path, const char* text) {
    if (auto st = require(path && text, "dstbc_write_text_file: null argument")) return st;
    std::ofstream f(path);
    if (!f) {
        g_last_error = std::string("cannot open ") + path;
        return DSTBC_ERR_IO;
    }
    f << text;
    if (!f) {
        g_last_error = std::string("write failed for ") + path;
        return DSTBC_ERR_IO;
    }
    return DSTBC_OK;
}

dstbc_status dstbc_slope_from_csv_file(const char* csv_path, double lo_db, double hi_db,
                                       double* slope_out) {
    if (auto st = require(csv_path && slope_out, "dstbc_slope_from_csv_file: null argument"))
        return st;
    std::ifstream f(csv_path);
    if (!f) {
        g_last_error = std::string("cannot open ") + csv_path;
        return DSTBC_ERR_IO;
    }
    std::ostringstream ss;
    ss << f.rdbuf();
    return guarded([&] {
        auto pts = dstbc::points_from_csv(ss.str());
        *slope_out = dstbc::diversity_slope(pts, lo_db, hi_db);
    });
}

dstbc_status dstbc_slope_from_points(const double* snr_db, const double* ber, size_t n,
                                     double lo_db, double hi_db, double* slope_out) {
    if (auto st = require(snr_db && ber && slope_out, "dstbc_slope_from_points: null argument"))
        return st;
    return guarded([&] {
        std::vector<dstbc::BerPoint> pts(n);
        for (size_t i = 0; i < n; ++i) {
            pts[i].snr_db = snr_db[i];
            pts[i].ber = ber[i];
            pts[i].bits_sent = 1;
            pts[i].bit_errors = ber[i] > 0.0 ? 1 : 0;
        }
        *slope_out = dstbc::diversity_slope(pts, lo_db, hi_db);
    });
}

}  // extern "C"

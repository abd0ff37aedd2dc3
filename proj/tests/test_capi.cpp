#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstring>
#include <filesystem>
#include <string>
#include <vector>

#include "dstbc/dstbc.h"

namespace {

struct Str {
    char* p = nullptr;
    ~Str() { dstbc_string_free(p); }
    std::string view() const { return p ? std::string(p) : std::string(); }
};

struct Des {
    dstbc_design* p = nullptr;
    ~Des() { dstbc_design_free(p); }
};

}  // namespace

TEST_CASE("design lifecycle through the C interface") {
    Des d;
    REQUIRE(dstbc_design_create("ciod4", &d.p) == DSTBC_OK);
    unsigned n = 0, k = 0, t2 = 0;
    CHECK(dstbc_design_dims(d.p, &n, &k, &t2) == DSTBC_OK);
    CHECK(n == 4);
    CHECK(k == 4);
    CHECK(t2 == 4);

    Str name;
    CHECK(dstbc_design_name(d.p, &name.p) == DSTBC_OK);
    CHECK(name.view() == "ciod4");

    Str render;
    CHECK(dstbc_design_render(d.p, &render.p) == DSTBC_OK);
    CHECK(render.view().find("x_1I + j x_3Q") != std::string::npos);

    Str js;
    CHECK(dstbc_design_to_json(d.p, &js.p) == DSTBC_OK);
    Des back;
    CHECK(dstbc_design_from_json(js.p, &back.p) == DSTBC_OK);
    Str js2;
    CHECK(dstbc_design_to_json(back.p, &js2.p) == DSTBC_OK);
    CHECK(js.view() == js2.view());
}

TEST_CASE("file round trip") {
    Des d;
    REQUIRE(dstbc_design_create("cod2", &d.p) == DSTBC_OK);
    const std::string path =
        (std::filesystem::temp_directory_path() / "dstbc_capi_design.json").string();
    REQUIRE(dstbc_design_save(d.p, path.c_str()) == DSTBC_OK);
    Des loaded;
    CHECK(dstbc_design_create(path.c_str(), &loaded.p) == DSTBC_OK);
    unsigned n = 0;
    CHECK(dstbc_design_dims(loaded.p, &n, nullptr, nullptr) == DSTBC_OK);
    CHECK(n == 2);
    std::filesystem::remove(path);
}

TEST_CASE("errors surface through status codes and messages") {
    Des d;
    CHECK(dstbc_design_create("nosuch", &d.p) == DSTBC_ERR_INVALID);
    CHECK(std::string(dstbc_last_error()).find("cod2") != std::string::npos);
    CHECK(dstbc_design_create(nullptr, &d.p) == DSTBC_ERR_INVALID);
    CHECK(dstbc_design_dims(nullptr, nullptr, nullptr, nullptr) == DSTBC_ERR_INVALID);
    CHECK(dstbc_design_from_json("{bad", &d.p) == DSTBC_ERR_INVALID);
    double s = 0;
    CHECK(dstbc_slope_from_csv_file("/nonexistent/file.csv", 0, 10, &s) == DSTBC_ERR_IO);
}

TEST_CASE("certification report") {
    Des d;
    REQUIRE(dstbc_design_create("ciod4", &d.p) == DSTBC_OK);
    Str js;
    REQUIRE(dstbc_certify(d.p, 1e-9, 1, &js.p) == DSTBC_OK);
    CHECK(js.view().find("\"pcrc_ssd\": true") != std::string::npos);
    CHECK(js.view().find("\"rar3_sufficient\": false") != std::string::npos);
    Str text;
    REQUIRE(dstbc_certify(d.p, 1e-9, 0, &text.p) == DSTBC_OK);
    CHECK(text.view().find("PCRC SSD          : True") != std::string::npos);
    CHECK(dstbc_certify(d.p, -1.0, 1, &js.p) == DSTBC_ERR_INVALID);
}

TEST_CASE("table output") {
    Str text;
    REQUIRE(dstbc_table1(0, &text.p) == DSTBC_OK);
    CHECK(text.view().find("COD2 (Alamouti)") != std::string::npos);
    CHECK(text.view().find("CODs from RODs") != std::string::npos);
    Str js;
    REQUIRE(dstbc_table1(1, &js.p) == DSTBC_OK);
    CHECK(js.view().find("\"necessary_sufficient\": true") != std::string::npos);
}

TEST_CASE("simulation, csv and slope through the C interface") {
    const char* cfg = R"({"design":"cod2","constellation":"psk4","mode":"pcrc",
        "decoder":"ssd","snr_grid_db":[0,4,8],"max_trials":2000,
        "target_bit_errors":100,"seed":9,"workers":2})";
    Str result;
    REQUIRE(dstbc_simulate(cfg, &result.p) == DSTBC_OK);
    CHECK(result.view().find("\"seed\": 9") != std::string::npos);

    Str csv;
    REQUIRE(dstbc_result_to_csv(result.p, &csv.p) == DSTBC_OK);
    CHECK(csv.view().rfind("snr_db,bits,errors,ber\n", 0) == 0);

    const std::string path =
        (std::filesystem::temp_directory_path() / "dstbc_capi_points.csv").string();
    REQUIRE(dstbc_write_text_file(path.c_str(), csv.p) == DSTBC_OK);
    double slope = 0;
    // 3 points spanning 0..8 dB exist; slope value itself is noisy here, the
    // call just has to succeed on a well-formed file
    CHECK(dstbc_slope_from_csv_file(path.c_str(), 0, 8, &slope) == DSTBC_OK);
    std::filesystem::remove(path);

    Str bad;
    CHECK(dstbc_simulate("{\"design\":\"cod4\",\"constellation\":\"psk4\","
                         "\"mode\":\"pcrc\",\"decoder\":\"ssd\",\"snr_grid_db\":[0]}",
                         &bad.p) == DSTBC_ERR_INVALID);
    CHECK(std::string(dstbc_last_error()).find("joint") != std::string::npos);
}

TEST_CASE("slope from raw points") {
    std::vector<double> snr = {10, 12, 14, 16, 18, 20};
    std::vector<double> ber;
    for (double s : snr) ber.push_back(0.3 * std::pow(10.0, -3.0 * s / 10.0));
    double slope = 0;
    REQUIRE(dstbc_slope_from_points(snr.data(), ber.data(), snr.size(), 10, 20, &slope) ==
            DSTBC_OK);
    CHECK(slope == doctest::Approx(3.0).epsilon(1e-9));
}

TEST_CASE("builtin listing and version") {
    Str names;
    REQUIRE(dstbc_builtin_names(&names.p) == DSTBC_OK);
    CHECK(names.view().find("rr8") != std::string::npos);
    CHECK(std::string(dstbc_version()).find('.') != std::string::npos);
}

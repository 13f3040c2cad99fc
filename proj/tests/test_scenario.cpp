#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hetnet/errors.hpp"
#include "hetnet/scenario.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

using namespace hetnet;
using namespace hetnet::scenario;

namespace {

std::filesystem::path write_temp(const std::string& name,
                                 const std::string& text) {
    const auto path = std::filesystem::temp_directory_path() / name;
    std::ofstream out(path);
    out << text;
    return path;
}

} // namespace

TEST_CASE("the default scenario is the two-user reference deployment") {
    const Scenario sc = default_scenario();
    CHECK(sc.name == "example");
    CHECK(sc.topology.K == 2);
    CHECK(sc.topology.L == 1);
    CHECK(sc.topology.macro_user_km == std::vector<double>{0.5, 4.5});
    CHECK(sc.power.macrocell_watts == 40.0);
    CHECK(sc.power.femtocell_watts == 5.0);
    CHECK(sc.blind_c == doctest::Approx(0.5773502691896258));
    CHECK(sc.blind_d == 0.5);
    CHECK(sc.sweep.frames == 500);
    CHECK(sc.sweep.bits_per_frame == 6144);
}

TEST_CASE("scenario files parse field by field, defaults fill the gaps") {
    const auto path = write_temp("hetnet_sc_roundtrip.json", R"({
        "name": "bench",
        "topology": {
            "K": 3, "L": 1, "N": 2, "M_r": 2,
            "path_loss_exponent": 2.5,
            "macro_user_km": [0.5, 1.5, 4.5],
            "femto_user_km": [[0.2], [0.2], [0.2]],
            "macro_to_femto_km": [[5.0], [5.1], [5.2]],
            "femto_to_macro_km": [[0.2], [0.2], [0.2]],
            "femto_cross_km": 0.3
        },
        "power": {"macrocell_watts": 20.0},
        "schedule": {"c": 0.5},
        "sweep": {"snr_start_db": 10.0, "snr_stop_db": 30.0,
                  "snr_step_db": 10.0, "frames": 7,
                  "bits_per_frame": 128, "seed": 99}
    })");
    const Scenario sc = load_scenario(path.string());
    std::filesystem::remove(path);

    CHECK(sc.name == "bench");
    CHECK(sc.topology.K == 3);
    CHECK(sc.topology.path_loss_exponent == 2.5);
    CHECK(sc.topology.macro_user_km == std::vector<double>{0.5, 1.5, 4.5});
    CHECK(sc.topology.femto_cross_km == 0.3);
    CHECK(sc.power.macrocell_watts == 20.0);
    CHECK(sc.power.femtocell_watts == 5.0); // default kept
    CHECK(sc.blind_c == 0.5);
    CHECK(sc.blind_d == 0.5); // default kept
    CHECK(sc.sweep.seed == 99);
    CHECK(sc.sweep.frames == 7);

    const sim::SimConfig cfg = make_sim_config(sc);
    CHECK(cfg.snr_db == std::vector<double>{10.0, 20.0, 30.0});
    CHECK(cfg.seed == 99);
    CHECK(cfg.blind_c == 0.5);
    CHECK(cfg.topology.K == 3);
}

TEST_CASE("bad scenario files are refused with a config error") {
    CHECK_THROWS_AS(load_scenario("/nonexistent/hetnet.json"), ConfigError);

    const auto garbled = write_temp("hetnet_sc_garbled.json", "{not json");
    CHECK_THROWS_AS(load_scenario(garbled.string()), ConfigError);
    std::filesystem::remove(garbled);

    const auto badshape = write_temp(
        "hetnet_sc_badshape.json",
        R"({"topology": {"K": 3, "macro_user_km": [1.0]}})");
    CHECK_THROWS_AS(load_scenario(badshape.string()), ConfigError);
    std::filesystem::remove(badshape);

    const auto badsweep = write_temp(
        "hetnet_sc_badsweep.json", R"({"sweep": {"snr_step_db": 0.0}})");
    CHECK_THROWS_AS(load_scenario(badsweep.string()), ConfigError);
    std::filesystem::remove(badsweep);

    const auto reversed = write_temp(
        "hetnet_sc_reversed.json",
        R"({"sweep": {"snr_start_db": 10.0, "snr_stop_db": 0.0}})");
    CHECK_THROWS_AS(load_scenario(reversed.string()), ConfigError);
    std::filesystem::remove(reversed);

    const auto zeroframes = write_temp("hetnet_sc_zeroframes.json",
                                       R"({"sweep": {"frames": 0}})");
    CHECK_THROWS_AS(load_scenario(zeroframes.string()), ConfigError);
    std::filesystem::remove(zeroframes);

    const auto wrongtype = write_temp(
        "hetnet_sc_wrongtype.json", R"({"topology": {"K": "two"}})");
    CHECK_THROWS_AS(load_scenario(wrongtype.string()), ConfigError);
    std::filesystem::remove(wrongtype);
}

TEST_CASE("SNR grids include both endpoints and survive rounding") {
    Sweep sweep; // 0..40 step 5
    CHECK(snr_grid(sweep) ==
          std::vector<double>{0, 5, 10, 15, 20, 25, 30, 35, 40});
    sweep.snr_step_db = 7.0;
    CHECK(snr_grid(sweep) == std::vector<double>{0, 7, 14, 21, 28, 35});
    sweep.snr_start_db = 10.0;
    sweep.snr_stop_db = 10.0;
    CHECK(snr_grid(sweep) == std::vector<double>{10});

    sweep.snr_start_db = 0.0;
    sweep.snr_stop_db = 1.0;
    sweep.snr_step_db = 0.1; // accumulation rounding must not drop 1.0
    const auto grid = snr_grid(sweep);
    REQUIRE(grid.size() == 11);
    CHECK(grid.back() == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("doubles are printed with round-trip precision") {
    const double values[] = {0.0,    1.0,     0.1,   1.0 / 3.0, 2.875,
                             1e-300, 1.5e300, -0.25, 0.5773502691896258};
    for (double v : values) {
        const std::string s = format_double(v);
        CHECK(std::strtod(s.c_str(), nullptr) == v);
    }
    CHECK(format_double(0.25) == "0.25");
    CHECK(format_double(40.0) == "40");
}

TEST_CASE("equal scenarios hash equal, different ones differ") {
    const Scenario a = default_scenario();
    const Scenario b = default_scenario();
    CHECK(canonical_json(a) == canonical_json(b));
    CHECK(config_hash(a) == config_hash(b));
    CHECK(config_hash(a).size() == 16);

    Scenario c = default_scenario();
    c.sweep.seed = 2;
    CHECK(config_hash(c) != config_hash(a));
    Scenario d = default_scenario();
    d.topology.macro_user_km[1] = 4.6;
    CHECK(config_hash(d) != config_hash(a));
}

TEST_CASE("BER tables serialize to the documented long format") {
    sim::SimResult r;
    r.scheme = "hybrid";
    r.users = {"a1", "f1"};
    r.snr_db = {0.0, 5.0};
    r.ber = {{0.25, 0.125}, {0.0, 0.0}};
    r.bit_errors = {{64, 32}, {0, 0}};
    r.bits_sent = {256, 256};
    r.seed = 7;
    r.frames = 2;
    r.bits_per_frame = 64;

    std::ostringstream os;
    write_ber_csv(os, {r});
    CHECK(os.str() == "# hetnet-csv v1 ber\n"
                      "# seed=7 frames=2 bits_per_frame=64\n"
                      "snr_db,scheme,user,metric,value\n"
                      "0,hybrid,a1,ber,0.25\n"
                      "0,hybrid,a1,bit_errors,64\n"
                      "0,hybrid,a1,bits,256\n"
                      "0,hybrid,f1,ber,0\n"
                      "0,hybrid,f1,bit_errors,0\n"
                      "0,hybrid,f1,bits,256\n"
                      "5,hybrid,a1,ber,0.125\n"
                      "5,hybrid,a1,bit_errors,32\n"
                      "5,hybrid,a1,bits,256\n"
                      "5,hybrid,f1,ber,0\n"
                      "5,hybrid,f1,bit_errors,0\n"
                      "5,hybrid,f1,bits,256\n");
}

TEST_CASE("rate tables add the sum pseudo-user") {
    sim::SimResult r;
    r.scheme = "blind-ia";
    r.users = {"a1"};
    r.snr_db = {10.0};
    r.rate = {{1.5}};
    r.sum_rate = {1.5};
    r.seed = 3;
    r.frames = 4;

    std::ostringstream os;
    write_rate_csv(os, {r});
    CHECK(os.str() == "# hetnet-csv v1 rate\n"
                      "# seed=3 frames=4\n"
                      "snr_db,scheme,user,metric,value\n"
                      "10,blind-ia,a1,rate_bps_hz,1.5\n"
                      "10,blind-ia,sum,rate_bps_hz,1.5\n");
}

TEST_CASE("the manifest records hash, schemes, and outputs") {
    std::ostringstream os;
    write_manifest(os, default_scenario(), {"hybrid", "tdma-hybrid"},
                   {"out/ber.csv"});
    const std::string text = os.str();
    CHECK(text.find("\"schema\": \"hetnet-manifest-v1\"") != std::string::npos);
    CHECK(text.find(config_hash(default_scenario())) != std::string::npos);
    CHECK(text.find("tdma-hybrid") != std::string::npos);
    CHECK(text.find("out/ber.csv") != std::string::npos);
    CHECK(text.find("\"macro_user_km\"") != std::string::npos);
}

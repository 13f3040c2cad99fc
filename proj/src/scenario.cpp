#include "hetnet/scenario.hpp"

#include "hetnet/errors.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <ostream>
#include <sstream>

namespace hetnet {
namespace scenario {

namespace {

using nlohmann::json;

std::vector<double> as_double_vec(const json& j) {
    std::vector<double> out;
    for (const auto& v : j) out.push_back(v.get<double>());
    return out;
}

std::vector<std::vector<double>> as_double_grid(const json& j) {
    std::vector<std::vector<double>> out;
    for (const auto& row : j) out.push_back(as_double_vec(row));
    return out;
}

Topology parse_topology(const json& j, Topology base) {
    Topology t = base;
    t.K = j.value("K", t.K);
    t.L = j.value("L", t.L);
    t.N = j.value("N", t.N);
    t.M_r = j.value("M_r", t.M_r);
    t.path_loss_exponent = j.value("path_loss_exponent", t.path_loss_exponent);
    t.femto_cross_km = j.value("femto_cross_km", t.femto_cross_km);
    if (j.contains("macro_user_km")) t.macro_user_km = as_double_vec(j.at("macro_user_km"));
    if (j.contains("femto_user_km")) t.femto_user_km = as_double_grid(j.at("femto_user_km"));
    if (j.contains("macro_to_femto_km"))
        t.macro_to_femto_km = as_double_grid(j.at("macro_to_femto_km"));
    if (j.contains("femto_to_macro_km"))
        t.femto_to_macro_km = as_double_grid(j.at("femto_to_macro_km"));
    return t;
}

json topology_json(const Topology& t) {
    json j;
    j["K"] = t.K;
    j["L"] = t.L;
    j["M_r"] = t.M_r;
    j["N"] = t.N;
    j["femto_cross_km"] = t.femto_cross_km;
    j["femto_to_macro_km"] = t.femto_to_macro_km;
    j["femto_user_km"] = t.femto_user_km;
    j["macro_to_femto_km"] = t.macro_to_femto_km;
    j["macro_user_km"] = t.macro_user_km;
    j["path_loss_exponent"] = t.path_loss_exponent;
    return j;
}

} // namespace

Scenario default_scenario() { return Scenario{}; }

Scenario load_scenario(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open scenario file: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw ConfigError("scenario parse error in " + path + ": " + e.what());
    }
    Scenario sc;
    try {
        sc.name = j.value("name", sc.name);
        if (j.contains("topology")) sc.topology = parse_topology(j.at("topology"), sc.topology);
        if (j.contains("power")) {
            sc.power.macrocell_watts =
                j.at("power").value("macrocell_watts", sc.power.macrocell_watts);
            sc.power.femtocell_watts =
                j.at("power").value("femtocell_watts", sc.power.femtocell_watts);
        }
        if (j.contains("schedule")) {
            sc.blind_c = j.at("schedule").value("c", sc.blind_c);
            sc.blind_d = j.at("schedule").value("d", sc.blind_d);
        }
        if (j.contains("sweep")) {
            const json& s = j.at("sweep");
            sc.sweep.snr_start_db = s.value("snr_start_db", sc.sweep.snr_start_db);
            sc.sweep.snr_stop_db = s.value("snr_stop_db", sc.sweep.snr_stop_db);
            sc.sweep.snr_step_db = s.value("snr_step_db", sc.sweep.snr_step_db);
            sc.sweep.frames = s.value("frames", sc.sweep.frames);
            sc.sweep.bits_per_frame = s.value("bits_per_frame", sc.sweep.bits_per_frame);
            sc.sweep.seed = s.value("seed", sc.sweep.seed);
        }
    } catch (const json::exception& e) {
        throw ConfigError("scenario field error in " + path + ": " + e.what());
    }
    try {
        sc.topology.validate();
    } catch (const Error& e) {
        throw ConfigError("invalid topology in " + path + ": " + e.what());
    }
    if (sc.sweep.snr_step_db <= 0.0) throw ConfigError("snr_step_db must be positive");
    if (sc.sweep.snr_stop_db < sc.sweep.snr_start_db)
        throw ConfigError("snr_stop_db must be >= snr_start_db");
    if (sc.sweep.frames < 1 || sc.sweep.bits_per_frame < 1)
        throw ConfigError("frames and bits_per_frame must be >= 1");
    return sc;
}

std::vector<double> snr_grid(const Sweep& sweep) {
    std::vector<double> grid;
    const double eps = sweep.snr_step_db * 1e-9;
    for (double v = sweep.snr_start_db; v <= sweep.snr_stop_db + eps; v += sweep.snr_step_db)
        grid.push_back(v);
    return grid;
}

std::string canonical_json(const Scenario& sc) {
    json j;
    j["name"] = sc.name;
    j["power"] = {{"femtocell_watts", sc.power.femtocell_watts},
                  {"macrocell_watts", sc.power.macrocell_watts}};
    j["schedule"] = {{"c", sc.blind_c}, {"d", sc.blind_d}};
    j["sweep"] = {{"bits_per_frame", sc.sweep.bits_per_frame},
                  {"frames", sc.sweep.frames},
                  {"seed", sc.sweep.seed},
                  {"snr_start_db", sc.sweep.snr_start_db},
                  {"snr_step_db", sc.sweep.snr_step_db},
                  {"snr_stop_db", sc.sweep.snr_stop_db}};
    j["topology"] = topology_json(sc.topology);
    return j.dump(); // nlohmann objects iterate in sorted key order
}

std::string config_hash(const Scenario& sc) {
    const std::string text = canonical_json(sc);
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

sim::SimConfig make_sim_config(const Scenario& sc) {
    sim::SimConfig cfg;
    cfg.topology = sc.topology;
    cfg.power = sc.power;
    cfg.snr_db = snr_grid(sc.sweep);
    cfg.frames = sc.sweep.frames;
    cfg.bits_per_frame = sc.sweep.bits_per_frame;
    cfg.seed = sc.sweep.seed;
    cfg.blind_c = sc.blind_c;
    cfg.blind_d = sc.blind_d;
    return cfg;
}

std::string format_double(double v) {
    char buf[40];
    for (int precision = 15; precision <= 17; ++precision) {
        std::snprintf(buf, sizeof buf, "%.*g", precision, v);
        if (std::strtod(buf, nullptr) == v) break;
    }
    return buf;
}

void write_ber_csv(std::ostream& os, const std::vector<sim::SimResult>& results) {
    os << "# hetnet-csv v1 ber\n";
    if (!results.empty()) {
        os << "# seed=" << results.front().seed << " frames=" << results.front().frames
           << " bits_per_frame=" << results.front().bits_per_frame << "\n";
    }
    os << "snr_db,scheme,user,metric,value\n";
    for (const auto& result : results) {
        for (std::size_t s = 0; s < result.snr_db.size(); ++s) {
            for (std::size_t u = 0; u < result.users.size(); ++u) {
                os << format_double(result.snr_db[s]) << ',' << result.scheme << ','
                   << result.users[u] << ",ber," << format_double(result.ber[u][s]) << "\n";
                os << format_double(result.snr_db[s]) << ',' << result.scheme << ','
                   << result.users[u] << ",bit_errors," << result.bit_errors[u][s] << "\n";
                os << format_double(result.snr_db[s]) << ',' << result.scheme << ','
                   << result.users[u] << ",bits," << result.bits_sent[u] << "\n";
            }
        }
    }
}

void write_rate_csv(std::ostream& os, const std::vector<sim::SimResult>& results) {
    os << "# hetnet-csv v1 rate\n";
    if (!results.empty()) {
        os << "# seed=" << results.front().seed << " frames=" << results.front().frames
           << "\n";
    }
    os << "snr_db,scheme,user,metric,value\n";
    for (const auto& result : results) {
        for (std::size_t s = 0; s < result.snr_db.size(); ++s) {
            for (std::size_t u = 0; u < result.users.size(); ++u) {
                os << format_double(result.snr_db[s]) << ',' << result.scheme << ','
                   << result.users[u] << ",rate_bps_hz,"
                   << format_double(result.rate[u][s]) << "\n";
            }
            os << format_double(result.snr_db[s]) << ',' << result.scheme
               << ",sum,rate_bps_hz," << format_double(result.sum_rate[s]) << "\n";
        }
    }
}

void write_manifest(std::ostream& os, const Scenario& sc,
                    const std::vector<std::string>& schemes,
                    const std::vector<std::string>& outputs) {
    json j;
    j["config_hash"] = config_hash(sc);
    j["outputs"] = outputs;
    j["scenario"] = json::parse(canonical_json(sc));
    j["schema"] = "hetnet-manifest-v1";
    j["schemes"] = schemes;
    os << j.dump(2) << "\n";
}

} // namespace scenario
} // namespace hetnet

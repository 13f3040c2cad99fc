#ifndef HETNET_SCENARIO_HPP
#define HETNET_SCENARIO_HPP

#include "hetnet/sim.hpp"
#include "hetnet/topology.hpp"

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

// Scenario files (JSON) and result serialization (CSV + manifest). The CSV
// writers format every number with enough digits to round-trip, so identical
// runs produce byte-identical files; the manifest records the inputs that
// produced a result set, keyed by a hash of the canonical scenario text.

namespace hetnet {
namespace scenario {

struct Sweep {
    double snr_start_db = 0.0;
    double snr_stop_db = 40.0;
    double snr_step_db = 5.0;
    int frames = 500;
    int bits_per_frame = 6144;
    std::uint64_t seed = 1;
};

struct Scenario {
    std::string name = "example";
    Topology topology = example_topology();
    PowerConfig power{};
    double blind_c = 0.5773502691896258;
    double blind_d = 0.5;
    Sweep sweep{};
};

// Parse a scenario file. Missing keys keep their defaults; malformed JSON,
// wrong types, or shape mismatches throw ConfigError.
Scenario load_scenario(const std::string& path);

Scenario default_scenario();

// Expand the sweep grid (inclusive endpoints, tolerant of step rounding).
std::vector<double> snr_grid(const Sweep& sweep);

// Scenario as sorted-key JSON text; equal scenarios produce equal strings.
std::string canonical_json(const Scenario& sc);

// FNV-1a 64-bit hash of canonical_json, as 16 hex digits.
std::string config_hash(const Scenario& sc);

// Fill a SimConfig from the scenario (scheme fields left for the caller).
sim::SimConfig make_sim_config(const Scenario& sc);

// results.csv, long format:
//   # hetnet-csv v1 <kind>
//   snr_db,scheme,user,metric,value
// BER rows also carry bit_errors/bits as separate metric rows; rate tables
// add a "sum" pseudo-user.
void write_ber_csv(std::ostream& os, const std::vector<sim::SimResult>& results);
void write_rate_csv(std::ostream& os, const std::vector<sim::SimResult>& results);

// manifest.json describing one CLI run.
void write_manifest(std::ostream& os, const Scenario& sc,
                    const std::vector<std::string>& schemes,
                    const std::vector<std::string>& outputs);

// Shortest representation that parses back to exactly the same double.
std::string format_double(double v);

} // namespace scenario
} // namespace hetnet

#endif

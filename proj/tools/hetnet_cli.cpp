// Command-line front end: BER sweeps, rate sweeps, DoF tables, and
// scheme-vs-TDMA comparisons, written as CSV plus a manifest describing the
// run. Exit codes: 0 success, 2 configuration or usage error, 3 numeric
// degeneracy (a guarded factorization or decomposition failed), 1 anything
// else.

#include "hetnet/dof.hpp"
#include "hetnet/errors.hpp"
#include "hetnet/scenario.hpp"
#include "hetnet/sim.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <string>
#include <utility>
#include <vector>

namespace {

using namespace hetnet;

struct CommonOpts {
    std::string scenario_path;
    std::string out_dir = "out";
    std::string scheme = "all";
    int frames = -1;
    int bits_per_frame = -1;
    long long seed = -1;
    double snr_start = std::nan("");
    double snr_stop = std::nan("");
    double snr_step = std::nan("");
    int workers = 0;
};

void add_common(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--scenario", o.scenario_path, "scenario JSON file");
    cmd->add_option("--out", o.out_dir, "output directory")->capture_default_str();
    cmd->add_option("--scheme", o.scheme,
                    "hybrid | blind | tdma-hybrid | tdma-blind | all")
        ->capture_default_str();
    cmd->add_option("--frames", o.frames, "Monte-Carlo frames / channel draws");
    cmd->add_option("--bits-per-frame", o.bits_per_frame, "network payload bits per frame");
    cmd->add_option("--seed", o.seed, "master RNG seed");
    cmd->add_option("--snr-start", o.snr_start, "reference SNR sweep start (dB)");
    cmd->add_option("--snr-stop", o.snr_stop, "reference SNR sweep stop (dB)");
    cmd->add_option("--snr-step", o.snr_step, "reference SNR sweep step (dB)");
    cmd->add_option("--workers", o.workers, "worker threads (0 = hardware)");
}

scenario::Scenario load_with_overrides(const CommonOpts& o) {
    scenario::Scenario sc = o.scenario_path.empty()
                                ? scenario::default_scenario()
                                : scenario::load_scenario(o.scenario_path);
    if (o.frames > 0) sc.sweep.frames = o.frames;
    if (o.bits_per_frame > 0) sc.sweep.bits_per_frame = o.bits_per_frame;
    if (o.seed >= 0) sc.sweep.seed = static_cast<std::uint64_t>(o.seed);
    if (!std::isnan(o.snr_start)) sc.sweep.snr_start_db = o.snr_start;
    if (!std::isnan(o.snr_stop)) sc.sweep.snr_stop_db = o.snr_stop;
    if (!std::isnan(o.snr_step)) sc.sweep.snr_step_db = o.snr_step;
    if (sc.sweep.snr_step_db <= 0.0) throw ConfigError("snr step must be positive");
    if (sc.sweep.snr_stop_db < sc.sweep.snr_start_db)
        throw ConfigError("snr stop must be >= snr start");
    return sc;
}

using SchemePick = std::pair<sim::Scheme, sim::TdmaContext>;

std::vector<SchemePick> parse_schemes(const std::string& name) {
    if (name == "hybrid") return {{sim::Scheme::kHybrid, sim::TdmaContext::kHybrid}};
    if (name == "blind") return {{sim::Scheme::kBlindIA, sim::TdmaContext::kBlindIA}};
    if (name == "tdma-hybrid") return {{sim::Scheme::kTdma, sim::TdmaContext::kHybrid}};
    if (name == "tdma-blind") return {{sim::Scheme::kTdma, sim::TdmaContext::kBlindIA}};
    if (name == "all") {
        return {{sim::Scheme::kHybrid, sim::TdmaContext::kHybrid},
                {sim::Scheme::kBlindIA, sim::TdmaContext::kBlindIA},
                {sim::Scheme::kTdma, sim::TdmaContext::kHybrid},
                {sim::Scheme::kTdma, sim::TdmaContext::kBlindIA}};
    }
    throw ConfigError("unknown scheme: " + name);
}

sim::SimConfig config_for(const scenario::Scenario& sc, const CommonOpts& o,
                          const SchemePick& pick) {
    sim::SimConfig cfg = scenario::make_sim_config(sc);
    cfg.scheme = pick.first;
    cfg.tdma_context = pick.second;
    cfg.workers = o.workers;
    return cfg;
}

std::ofstream open_output(const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot write " + path.string());
    return out;
}

void finish_run(const CommonOpts& o, const scenario::Scenario& sc,
                const std::vector<std::string>& schemes,
                const std::vector<std::string>& outputs) {
    auto manifest = open_output(std::filesystem::path(o.out_dir) / "manifest.json");
    scenario::write_manifest(manifest, sc, schemes, outputs);
    std::cout << "wrote";
    for (const auto& f : outputs) std::cout << ' ' << o.out_dir << '/' << f;
    std::cout << " " << o.out_dir << "/manifest.json\n";
}

int run_ber(const CommonOpts& o) {
    const scenario::Scenario sc = load_with_overrides(o);
    std::vector<sim::SimResult> results;
    std::vector<std::string> names;
    for (const auto& pick : parse_schemes(o.scheme)) {
        results.push_back(sim::run_ber_sweep(config_for(sc, o, pick)));
        names.push_back(results.back().scheme);
    }
    std::filesystem::create_directories(o.out_dir);
    auto out = open_output(std::filesystem::path(o.out_dir) / "ber.csv");
    scenario::write_ber_csv(out, results);
    finish_run(o, sc, names, {"ber.csv"});
    return 0;
}

int run_rate(const CommonOpts& o) {
    const scenario::Scenario sc = load_with_overrides(o);
    std::vector<sim::SimResult> results;
    std::vector<std::string> names;
    for (const auto& pick : parse_schemes(o.scheme)) {
        results.push_back(sim::run_rate_sweep(config_for(sc, o, pick)));
        names.push_back(results.back().scheme);
    }
    std::filesystem::create_directories(o.out_dir);
    auto out = open_output(std::filesystem::path(o.out_dir) / "rate.csv");
    scenario::write_rate_csv(out, results);
    finish_run(o, sc, names, {"rate.csv"});
    return 0;
}

int run_compare(const CommonOpts& o, bool with_ber) {
    const scenario::Scenario sc = load_with_overrides(o);
    const auto picks = parse_schemes("all");
    std::vector<sim::SimResult> rates;
    std::vector<std::string> names;
    for (const auto& pick : picks) {
        rates.push_back(sim::run_rate_sweep(config_for(sc, o, pick)));
        names.push_back(rates.back().scheme);
    }
    std::filesystem::create_directories(o.out_dir);
    std::vector<std::string> outputs;

    {
        auto out = open_output(std::filesystem::path(o.out_dir) / "compare_rates.csv");
        out << "# hetnet-csv v1 compare (sum rates, bits/s/Hz)\n";
        out << "snr_db";
        for (const auto& r : rates) out << ',' << r.scheme;
        out << "\n";
        for (std::size_t s = 0; s < rates.front().snr_db.size(); ++s) {
            out << scenario::format_double(rates.front().snr_db[s]);
            for (const auto& r : rates) out << ',' << scenario::format_double(r.sum_rate[s]);
            out << "\n";
        }
        outputs.push_back("compare_rates.csv");
    }
    {
        auto out = open_output(std::filesystem::path(o.out_dir) / "rate.csv");
        scenario::write_rate_csv(out, rates);
        outputs.push_back("rate.csv");
    }
    if (with_ber) {
        std::vector<sim::SimResult> bers;
        for (const auto& pick : picks)
            bers.push_back(sim::run_ber_sweep(config_for(sc, o, pick)));
        auto out = open_output(std::filesystem::path(o.out_dir) / "ber.csv");
        scenario::write_ber_csv(out, bers);
        outputs.push_back("ber.csv");
    }
    finish_run(o, sc, names, outputs);
    return 0;
}

void print_dof_tables(std::ostream& os, const dof::DofQuery& base) {
    using dof::DofQuery;
    using dof::DofReport;
    os << "# degrees of freedom per slot; x = slots TDMA grants the femtocells\n";
    os << "scheme,x,macro,femto,total,gain_vs_tdma\n";

    DofQuery hq = base;
    hq.T = base.L + 1;
    const DofReport hybrid = dof::dof_hybrid(hq);
    os << "hybrid,," << hybrid.macrocell.str() << ',' << hybrid.femtocells.str() << ','
       << hybrid.total.str() << ",\n";
    for (int x = 0; x <= hq.T; ++x) {
        DofQuery q = hq;
        q.x = x;
        const DofReport tdma = dof::dof_tdma_hybrid_comparison(q);
        os << "tdma-hybrid," << x << ',' << tdma.macrocell.str() << ','
           << tdma.femtocells.str() << ',' << tdma.total.str() << ','
           << dof::hybrid_gain(q).str() << "\n";
    }

    DofQuery bq = base;
    bq.T = base.K + 1;
    const DofReport blind = dof::dof_blind_ia(bq);
    os << "blind-ia,," << blind.macrocell.str() << ',' << blind.femtocells.str() << ','
       << blind.total.str() << ",\n";
    for (int x = 0; x <= bq.T; ++x) {
        DofQuery q = bq;
        q.x = x;
        const DofReport tdma = dof::dof_tdma_blind_comparison(q);
        os << "tdma-blind," << x << ',' << tdma.macrocell.str() << ','
           << tdma.femtocells.str() << ',' << tdma.total.str() << ','
           << (blind.total - tdma.total).str() << "\n";
    }

    os << "# hybrid total exceeds TDMA for every x < " << (base.L + 1) << "\n";
    if (base.L == 1) {
        DofQuery q = bq;
        q.x = 0;
        os << "# blind-ia total exceeds TDMA for x < "
           << dof::blind_ia_gain_threshold(q).str() << "\n";
    } else {
        DofQuery q = bq;
        q.x = 1;
        os << "# blind-ia total exceeds TDMA (x odd) for x < "
           << dof::blind_ia_gain_threshold(q).str() << "\n";
        q.x = 0;
        os << "# blind-ia total exceeds TDMA (x even) for x < "
           << dof::blind_ia_gain_threshold(q).str() << "\n";
    }
}

int run_dof(const dof::DofQuery& base, const std::string& out_dir) {
    if (out_dir.empty()) {
        print_dof_tables(std::cout, base);
        return 0;
    }
    std::filesystem::create_directories(out_dir);
    auto out = open_output(std::filesystem::path(out_dir) / "dof.csv");
    print_dof_tables(out, base);
    std::cout << "wrote " << out_dir << "/dof.csv\n";
    return 0;
}

int guarded(const std::function<int()>& body) {
    try {
        return body();
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const InvalidParameterError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const UnsupportedTopologyError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const DegenerateChannelError& e) {
        std::cerr << "numeric degeneracy: " << e.what() << "\n";
        return 3;
    } catch (const FactorizationMismatchError& e) {
        std::cerr << "numeric degeneracy: " << e.what() << "\n";
        return 3;
    } catch (const NotPositiveDefiniteError& e) {
        std::cerr << "numeric degeneracy: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"link-level simulator for macro/femto interference management"};
    app.require_subcommand(1);

    CommonOpts ber_opts, rate_opts, cmp_opts;
    bool cmp_with_ber = false;

    CLI::App* ber = app.add_subcommand("ber", "uncoded QPSK BER sweep");
    add_common(ber, ber_opts);

    CLI::App* rate = app.add_subcommand("rate", "ergodic sum-rate sweep");
    add_common(rate, rate_opts);

    CLI::App* cmp = app.add_subcommand("compare", "all schemes vs TDMA, joined table");
    add_common(cmp, cmp_opts);
    cmp->add_flag("--with-ber", cmp_with_ber, "also run the BER sweep for every scheme");

    dof::DofQuery dof_query;
    std::string dof_out;
    CLI::App* dofc = app.add_subcommand("dof", "exact DoF tables for both schemes");
    dofc->add_option("--K", dof_query.K, "macro users")->capture_default_str();
    dofc->add_option("--L", dof_query.L, "femtocells per macro user")->capture_default_str();
    dofc->add_option("--N", dof_query.N, "transmit antennas")->capture_default_str();
    dofc->add_option("--M-r", dof_query.M_r, "femto receive antennas")->capture_default_str();
    dofc->add_option("--out", dof_out, "write dof.csv here instead of stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    if (ber->parsed()) return guarded([&] { return run_ber(ber_opts); });
    if (rate->parsed()) return guarded([&] { return run_rate(rate_opts); });
    if (cmp->parsed()) return guarded([&] { return run_compare(cmp_opts, cmp_with_ber); });
    return guarded([&] { return run_dof(dof_query, dof_out); });
}

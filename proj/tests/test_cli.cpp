#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

// End-to-end checks of the command-line tool: spawn the real binary, inspect
// exit codes and the files it writes. The build passes the binary and
// scenario locations in as compile definitions.

#ifndef HETNET_CLI_PATH
#error "HETNET_CLI_PATH must point at the CLI binary"
#endif
#ifndef HETNET_SCENARIO_DIR
#error "HETNET_SCENARIO_DIR must point at the scenario files"
#endif

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

namespace {

namespace fs = std::filesystem;

fs::path work_dir() {
    const fs::path dir = fs::temp_directory_path() / "hetnet_cli_test";
    fs::create_directories(dir);
    return dir;
}

int run_cli(const std::string& args, const std::string& stdout_file = "") {
    std::string cmd = std::string(HETNET_CLI_PATH) + " " + args;
    cmd += stdout_file.empty() ? " >/dev/null" : " >" + stdout_file;
    cmd += " 2>/dev/null";
    const int rc = std::system(cmd.c_str());
    REQUIRE(rc != -1);
    return WIFEXITED(rc) ? WEXITSTATUS(rc) : -2;
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string example_scenario() {
    return (fs::path(HETNET_SCENARIO_DIR) / "example_model.json").string();
}

} // namespace

TEST_CASE("dof tables print the per-slot message counts unreduced") {
    const fs::path out = work_dir() / "dof_stdout.txt";
    CHECK(run_cli("dof", out.string()) == 0);
    const std::string text = slurp(out);
    CHECK(text.find("hybrid,,4/2,4/2,8/2,") != std::string::npos);
    CHECK(text.find("blind-ia,,4/3,4/3,8/3,") != std::string::npos);
    CHECK(text.find("tdma-hybrid,0,4/2,0/2,4/2,4/2") != std::string::npos);
    CHECK(text.find("# hybrid total exceeds TDMA for every x < 2") !=
          std::string::npos);

    const fs::path big = work_dir() / "dof_k5.txt";
    CHECK(run_cli("dof --K 5 --L 2 --N 3 --M-r 3", big.string()) == 0);
    const std::string table = slurp(big);
    CHECK(table.find("blind-ia,,15/6,45/6,60/6,") != std::string::npos);
    CHECK(table.find("(x odd) for x < 84/24") != std::string::npos);
    CHECK(table.find("(x even) for x < 84/24") != std::string::npos);

    const fs::path dir = work_dir() / "dof_csv";
    CHECK(run_cli("dof --out " + dir.string()) == 0);
    CHECK(slurp(dir / "dof.csv").find("8/3") != std::string::npos);
}

TEST_CASE("ber runs write the table plus a manifest, reproducibly") {
    const std::string common =
        "ber --scenario " + example_scenario() +
        " --scheme hybrid --frames 2 --bits-per-frame 64 --seed 5"
        " --snr-start 40 --snr-stop 40 --workers 1 --out ";
    const fs::path a = work_dir() / "ber_a";
    const fs::path b = work_dir() / "ber_b";
    CHECK(run_cli(common + a.string()) == 0);
    CHECK(run_cli(common + b.string()) == 0);

    const std::string csv = slurp(a / "ber.csv");
    CHECK(csv.rfind("# hetnet-csv v1 ber", 0) == 0);
    CHECK(csv.find("40,hybrid,a1,ber,") != std::string::npos);
    CHECK(csv.find("40,hybrid,f2,bits,") != std::string::npos);
    CHECK(csv == slurp(b / "ber.csv")); // same seed, byte-identical output

    const std::string manifest = slurp(a / "manifest.json");
    CHECK(manifest.find("hetnet-manifest-v1") != std::string::npos);
    CHECK(manifest.find("\"hybrid\"") != std::string::npos);
}

TEST_CASE("rate and compare runs cover every scheme") {
    const fs::path dir = work_dir() / "rate_all";
    CHECK(run_cli("rate --scenario " + example_scenario() +
                  " --frames 3 --snr-start 0 --snr-stop 10 --snr-step 5"
                  " --workers 1 --out " +
                  dir.string()) == 0);
    const std::string rate = slurp(dir / "rate.csv");
    for (const char* scheme :
         {"hybrid", "blind-ia", "tdma-hybrid", "tdma-blind"})
        CHECK(rate.find(std::string(",") + scheme + ",sum,") !=
              std::string::npos);

    const fs::path cdir = work_dir() / "compare";
    CHECK(run_cli("compare --scenario " + example_scenario() +
                  " --frames 2 --snr-start 0 --snr-stop 5 --snr-step 5"
                  " --workers 1 --out " +
                  cdir.string()) == 0);
    const std::string cmp = slurp(cdir / "compare_rates.csv");
    CHECK(cmp.find("snr_db,hybrid,blind-ia,tdma-hybrid,tdma-blind") !=
          std::string::npos);
    CHECK(fs::exists(cdir / "rate.csv"));
    CHECK(fs::exists(cdir / "manifest.json"));
}

TEST_CASE("usage and configuration mistakes exit with code 2") {
    CHECK(run_cli("ber --scheme nonsense --frames 1 --out " +
                  (work_dir() / "x1").string()) == 2);
    CHECK(run_cli("ber --scenario /nonexistent.json --out " +
                  (work_dir() / "x2").string()) == 2);
    CHECK(run_cli("rate --snr-step 0 --frames 1 --out " +
                  (work_dir() / "x3").string()) == 2);
    CHECK(run_cli("ber --no-such-flag") == 2);
    CHECK(run_cli("") == 2); // a subcommand is required

    // A hybrid BER run needs M_r = N; the scenario override path reports it
    // as a configuration problem.
    const fs::path sc = work_dir() / "mr1.json";
    std::ofstream(sc) << R"({"topology": {"M_r": 1}})";
    CHECK(run_cli("ber --scenario " + sc.string() +
                  " --scheme hybrid --frames 1 --bits-per-frame 32"
                  " --snr-start 10 --snr-stop 10 --out " +
                  (work_dir() / "x4").string()) == 2);
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hetnet/errors.hpp"
#include "hetnet/linalg.hpp"
#include "hetnet/qpsk.hpp"
#include "hetnet/rng.hpp"
#include "hetnet/sim.hpp"

#include <cmath>
#include <cstdint>
#include <vector>

using namespace hetnet;
using namespace hetnet::sim;

namespace {

SimConfig small_config(Scheme scheme, std::vector<double> snr) {
    SimConfig cfg;
    cfg.scheme = scheme;
    cfg.snr_db = std::move(snr);
    cfg.frames = 3;
    cfg.bits_per_frame = 256;
    cfg.seed = 21;
    cfg.workers = 1;
    return cfg;
}

Topology scalar_topology() {
    Topology t;
    t.K = 1;
    t.L = 1;
    t.N = 1;
    t.M_r = 1;
    t.macro_user_km = {1.0};
    t.femto_user_km = {{1.0}};
    t.macro_to_femto_km = {{1.0}};
    t.femto_to_macro_km = {{1.0}};
    t.validate();
    return t;
}

// E[ln(1 + c*x)] for x ~ Exp(1); Simpson rule far past double precision.
double expected_log1p_exp(double c) {
    const double hi = 60.0;
    const int n = 120000;
    const double h = hi / n;
    auto f = [&](double x) { return std::log1p(c * x) * std::exp(-x); };
    double acc = f(0.0) + f(hi);
    for (int i = 1; i < n; ++i) acc += f(i * h) * (i % 2 ? 4.0 : 2.0);
    return acc * h / 3.0;
}

} // namespace

TEST_CASE("QPSK mapping: unit energy, quadrant demap, Gray distances") {
    using qpsk::map_bits;
    const double r = 1.0 / std::sqrt(2.0);
    CHECK(std::abs(map_bits(0, 0) - Complex(r, r)) < 1e-15);
    CHECK(std::abs(map_bits(0, 1) - Complex(r, -r)) < 1e-15);
    CHECK(std::abs(map_bits(1, 0) - Complex(-r, r)) < 1e-15);
    CHECK(std::abs(map_bits(1, 1) - Complex(-r, -r)) < 1e-15);
    for (int i = 0; i < 4; ++i) {
        CHECK(std::abs(qpsk::constellation()[i]) == doctest::Approx(1.0));
        CHECK(qpsk::constellation()[i] == map_bits(i >> 1, i & 1));
        int b0 = -1, b1 = -1;
        qpsk::demap(qpsk::constellation()[i], b0, b1);
        CHECK(b0 == (i >> 1));
        CHECK(b1 == (i & 1));
    }
    // Gray property: one bit flip <-> squared distance 2, two flips <-> 4.
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            const int flips = ((i ^ j) >> 1) + ((i ^ j) & 1);
            const double d2 =
                std::norm(qpsk::constellation()[i] - qpsk::constellation()[j]);
            CHECK(d2 == doctest::Approx(2.0 * flips).epsilon(1e-12));
        }
}

TEST_CASE("QPSK modulate/demodulate round-trips") {
    Xoshiro256pp rng(77);
    std::vector<std::uint8_t> bits(200);
    for (auto& b : bits) b = static_cast<std::uint8_t>(rng.bit());
    const Vector syms = qpsk::modulate(bits);
    REQUIRE(syms.size() == 100);
    CHECK(qpsk::demodulate(syms) == bits);
    CHECK_THROWS_AS(qpsk::modulate(std::vector<std::uint8_t>{1}),
                    InvalidParameterError);
}

TEST_CASE("ML detection matches an exhaustive search") {
    Xoshiro256pp rng(78);
    for (int trial = 0; trial < 200; ++trial) {
        Matrix ch(2, 2);
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) ch(i, j) = rng.cgaussian();
        Vector y(2);
        for (int i = 0; i < 2; ++i) y(i) = 2.0 * rng.cgaussian();

        const Vector hat = qpsk::ml_detect(y, ch);
        double best = 1e300;
        for (int i = 0; i < 16; ++i) {
            Vector u(2);
            u(0) = qpsk::constellation()[i & 3];
            u(1) = qpsk::constellation()[(i >> 2) & 3];
            best = std::min(best, (y - ch * u).squaredNorm());
        }
        CHECK((y - ch * hat).squaredNorm() == doctest::Approx(best).epsilon(1e-12));
    }
    // Noiseless input returns the exact transmitted block.
    Matrix ch(2, 2);
    ch << Complex(1, 0.3), Complex(-0.2, 1), Complex(0.5, -1), Complex(2, 0);
    Vector u(2);
    u(0) = qpsk::constellation()[2];
    u(1) = qpsk::constellation()[1];
    CHECK(linalg::max_abs(qpsk::ml_detect(ch * u, ch) - u) == 0.0);

    CHECK_THROWS_AS(qpsk::ml_detect(Vector::Zero(9), Matrix::Identity(9, 9)),
                    InvalidParameterError);
}

TEST_CASE("scheme names used in CSV output") {
    CHECK(scheme_name(Scheme::kHybrid, TdmaContext::kHybrid) == "hybrid");
    CHECK(scheme_name(Scheme::kBlindIA, TdmaContext::kHybrid) == "blind-ia");
    CHECK(scheme_name(Scheme::kTdma, TdmaContext::kHybrid) == "tdma-hybrid");
    CHECK(scheme_name(Scheme::kTdma, TdmaContext::kBlindIA) == "tdma-blind");
}

TEST_CASE("BER sweep bookkeeping: labels, bit accounting, ratios") {
    SimConfig cfg = small_config(Scheme::kHybrid, {30.0, 40.0});
    cfg.bits_per_frame = 100;
    const SimResult r = run_ber_sweep(cfg);
    REQUIRE(r.users == std::vector<std::string>{"a1", "a2", "f1", "f2"});
    REQUIRE(r.ber.size() == 4);
    REQUIRE(r.ber[0].size() == 2);
    REQUIRE(r.snr_db == cfg.snr_db);
    CHECK(r.frames == 3);
    // 100 payload bits pack into ceil(100/16) = 7 supersymbols of 4 bits per
    // user, every simulated bit counted.
    for (int u = 0; u < 4; ++u) {
        CHECK(r.bits_sent[u] == 3LL * 7 * 4);
        for (int s = 0; s < 2; ++s)
            CHECK(r.ber[u][s] ==
                  static_cast<double>(r.bit_errors[u][s]) / r.bits_sent[u]);
    }
    CHECK(r.scheme == "hybrid");
    CHECK(r.rate.empty()); // BER runs do not fabricate rate columns
}

TEST_CASE("interference-limited links clean up at very high reference SNR") {
    // Post-projection the femto links and the whole blind scheme carry no
    // residual interference, so at 100 dB every error vanishes; the macro
    // NOMA users keep an interference floor instead.
    SimConfig cfg = small_config(Scheme::kHybrid, {100.0});
    cfg.frames = 5;
    cfg.bits_per_frame = 512;
    const SimResult hyb = run_ber_sweep(cfg);
    CHECK(hyb.bit_errors[2][0] == 0);
    CHECK(hyb.bit_errors[3][0] == 0);

    cfg.scheme = Scheme::kBlindIA;
    const SimResult blind = run_ber_sweep(cfg);
    for (int u = 0; u < 4; ++u) CHECK(blind.bit_errors[u][0] == 0);

    cfg.scheme = Scheme::kTdma;
    cfg.tdma_context = TdmaContext::kHybrid;
    const SimResult tdma = run_ber_sweep(cfg);
    for (int u = 0; u < 4; ++u) CHECK(tdma.bit_errors[u][0] == 0);
}

TEST_CASE("BER sweeps are bit-identical across runs and worker counts") {
    SimConfig cfg = small_config(Scheme::kBlindIA, {20.0, 30.0});
    cfg.frames = 4;
    const SimResult a = run_ber_sweep(cfg);
    const SimResult b = run_ber_sweep(cfg);
    CHECK(a.bit_errors == b.bit_errors);

    cfg.workers = 3;
    const SimResult c = run_ber_sweep(cfg);
    CHECK(a.bit_errors == c.bit_errors);

    cfg.workers = 1;
    cfg.seed = 22;
    const SimResult d = run_ber_sweep(cfg);
    CHECK(a.bit_errors != d.bit_errors);
}

TEST_CASE("BER sweep on a two-group blind layout") {
    SimConfig cfg = small_config(Scheme::kBlindIA, {40.0});
    cfg.topology.K = 2;
    cfg.topology.L = 2;
    cfg.topology.N = 3;
    cfg.topology.M_r = 3;
    cfg.topology.macro_user_km = {0.5, 1.0};
    cfg.topology.femto_user_km = {{0.2, 0.2}, {0.2, 0.2}};
    cfg.topology.macro_to_femto_km = {{2.0, 2.0}, {2.0, 2.0}};
    cfg.topology.femto_to_macro_km = {{0.5, 0.5}, {0.5, 0.5}};
    cfg.frames = 2;
    const SimResult r = run_ber_sweep(cfg);
    REQUIRE(r.users == std::vector<std::string>{"a1", "a2", "f11", "f12",
                                                "f21", "f22"});
    for (int u = 0; u < 6; ++u) CHECK(r.bits_sent[u] > 0);
}

TEST_CASE("hybrid BER needs matching receive antennas") {
    SimConfig cfg = small_config(Scheme::kHybrid, {30.0});
    cfg.topology.M_r = 1;
    CHECK_THROWS_AS(run_ber_sweep(cfg), UnsupportedTopologyError);
}

TEST_CASE("rate sweeps: sum semantics and strict SNR monotonicity") {
    SimConfig cfg;
    cfg.snr_db = {0.0, 20.0, 40.0};
    cfg.frames = 40;
    cfg.seed = 9;
    cfg.workers = 1;

    for (Scheme s : {Scheme::kHybrid, Scheme::kBlindIA, Scheme::kTdma}) {
        cfg.scheme = s;
        const SimResult r = run_rate_sweep(cfg);
        REQUIRE(r.rate.size() == 4);
        REQUIRE(r.sum_rate.size() == 3);
        for (std::size_t p = 0; p < r.sum_rate.size(); ++p) {
            double agg = 0.0;
            for (int u = 0; u < 4; ++u) agg += r.rate[u][p];
            if (s == Scheme::kTdma) agg /= 4.0; // time sharing: the mean
            CHECK(r.sum_rate[p] == doctest::Approx(agg).epsilon(1e-12));
        }
        // Common random numbers make the sweep monotone draw by draw.
        CHECK(r.sum_rate[0] < r.sum_rate[1]);
        CHECK(r.sum_rate[1] < r.sum_rate[2]);
        CHECK(r.ber.empty());
    }
}

TEST_CASE("TDMA solo rates against the quadrature oracle") {
    SimConfig cfg;
    cfg.scheme = Scheme::kTdma;
    cfg.tdma_context = TdmaContext::kHybrid;
    cfg.topology = scalar_topology();
    cfg.power.macrocell_watts = 6.0;
    cfg.power.femtocell_watts = 3.0;
    // Reference SNR 0 dB with N = 1: sigma^2 = P = 6.
    cfg.snr_db = {0.0};
    cfg.frames = 40000;
    cfg.seed = 123;
    cfg.workers = 1;
    const SimResult r = tdma_baseline_rates(cfg);

    const double ln2 = std::log(2.0);
    const int T = 2; // L+1 slots in this context
    const double macro_oracle = expected_log1p_exp(6.0 / 6.0) / T / ln2;
    const double femto_oracle = expected_log1p_exp(3.0 / 6.0) / T / ln2;
    CHECK(r.rate[0][0] == doctest::Approx(macro_oracle).epsilon(0.02));
    CHECK(r.rate[1][0] == doctest::Approx(femto_oracle).epsilon(0.02));
    CHECK(r.sum_rate[0] ==
          doctest::Approx(0.5 * (r.rate[0][0] + r.rate[1][0])).epsilon(1e-12));

    // Scheme::kTdma routed through run_rate_sweep is the same computation.
    SimConfig again = cfg;
    again.frames = 50;
    const SimResult x = run_rate_sweep(again);
    again.scheme = Scheme::kTdma;
    const SimResult y = tdma_baseline_rates(again);
    CHECK(x.rate[0][0] == y.rate[0][0]);
    CHECK(x.sum_rate[0] == y.sum_rate[0]);
}

TEST_CASE("window-3 median smoothing") {
    const std::vector<double> s{5, 1, 4, 1, 9};
    CHECK(median3(s) == std::vector<double>{5, 4, 1, 4, 9});
    CHECK(median3({3.0, 7.0}) == std::vector<double>{3.0, 7.0});
    CHECK(median3({}) == std::vector<double>{});
}

TEST_CASE("monotonicity test tolerates binomial noise, flags real rises") {
    // Clean decreasing curve passes at any sample size.
    CHECK(monotone_within_noise({1e-1, 1e-2, 1e-3, 1e-4}, 1000000));
    // A sustained rise fails once the sample size makes it significant...
    CHECK_FALSE(monotone_within_noise({1e-3, 1e-2, 1e-1}, 1000000));
    // ...but small wiggles within a few sigma of a flat floor pass.
    const std::vector<double> wiggle{1.0e-3, 1.05e-3, 1.1e-3, 1.2e-3};
    CHECK(monotone_within_noise(wiggle, 10000));
    CHECK_FALSE(monotone_within_noise(wiggle, 100000000));
    // An isolated single-point spike is smoothed away by the median.
    CHECK(monotone_within_noise({1e-2, 1e-3, 1e-1, 1e-3, 1e-4}, 1000000));
}

#ifndef HETNET_SIM_HPP
#define HETNET_SIM_HPP

#include "hetnet/topology.hpp"

#include <cstdint>
#include <string>
#include <vector>

// Monte-Carlo link-level simulation: uncoded QPSK BER sweeps and ergodic
// rate sweeps over a reference-SNR grid for the hybrid scheme, the blind
// alignment scheme, and a TDMA baseline that time-shares the same
// supersymbol. Reference SNR is 10*log10(P_macro/(N*sigma_n^2)).
//
// Reproducibility contract: every random quantity comes from a sub-stream
// derived from (seed, purpose, frame, supersymbol). Channels, payload bits,
// and unit-variance noise are drawn once per supersymbol and shared by every
// SNR point (common random numbers), so sweeps are smooth and a re-run with
// the same config is bit-identical regardless of worker count.

namespace hetnet {
namespace sim {

enum class Scheme { kHybrid, kBlindIA, kTdma };

// Which deployment the TDMA baseline time-shares: the hybrid supersymbol
// (T = L+1, plain solo links) or the blind one (T = K+1, solo users keep the
// supersymbol beamformers and projections).
enum class TdmaContext { kHybrid, kBlindIA };

std::string scheme_name(Scheme s, TdmaContext ctx);

struct SimConfig {
    Scheme scheme = Scheme::kHybrid;
    TdmaContext tdma_context = TdmaContext::kHybrid;
    Topology topology = example_topology();
    PowerConfig power{};
    std::vector<double> snr_db{};
    int frames = 500;
    int bits_per_frame = 6144; // network payload bits per frame
    std::uint64_t seed = 1;
    double blind_c = 0.5773502691896258; // broadcast-slot schedule weight
    double blind_d = 0.5;                // shared-slot femto schedule weight
    int workers = 0;                     // 0: hardware concurrency
};

struct SimResult {
    std::string scheme;
    std::vector<std::string> users; // "a1".."aK" then "f11".."fKL" ("fk" when L=1)
    std::vector<double> snr_db;

    // BER sweep outputs ([user][snr]; empty when only rates were run).
    std::vector<std::vector<double>> ber;
    std::vector<std::vector<long long>> bit_errors;
    std::vector<long long> bits_sent; // per user, per SNR point

    // Rate sweep outputs in bits/s/Hz ([user][snr]; empty when only BER ran).
    // For TDMA, rate[user] is the user's solo rate while it holds the
    // channel and sum_rate is the time-shared network average (mean across
    // users); for the other schemes sum_rate is the plain sum.
    std::vector<std::vector<double>> rate;
    std::vector<double> sum_rate;

    std::uint64_t seed = 0;
    int frames = 0;
    int bits_per_frame = 0;
};

SimResult run_ber_sweep(const SimConfig& cfg);
SimResult run_rate_sweep(const SimConfig& cfg);

// Solo time-sharing rates for cfg.tdma_context (what run_rate_sweep calls
// for Scheme::kTdma; exposed so comparisons can run it directly).
SimResult tdma_baseline_rates(const SimConfig& cfg);

// Sliding median of window 3; endpoints are passed through.
std::vector<double> median3(const std::vector<double>& series);

// True when the median-smoothed BER series never rises by more than
// n_sigmas binomial standard deviations between consecutive SNR points.
bool monotone_within_noise(const std::vector<double>& ber,
                           long long bits_per_point, double n_sigmas = 3.0);

} // namespace sim
} // namespace hetnet

#endif

#include "hetnet/sim.hpp"

#include "hetnet/blind_ia.hpp"
#include "hetnet/channel.hpp"
#include "hetnet/errors.hpp"
#include "hetnet/hybrid.hpp"
#include "hetnet/linalg.hpp"
#include "hetnet/qpsk.hpp"
#include "hetnet/rng.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <thread>
#include <vector>

namespace hetnet {
namespace sim {

namespace {

constexpr double kLn2 = 0.6931471805599453;

// Sub-stream tags; frame / supersymbol / user indices are appended after.
enum Stream : std::uint64_t {
    kPayload = 1,
    kNoise = 2,
    kFading = 3,
    kRates = 4,
};

std::vector<std::uint8_t> draw_bits(Xoshiro256pp& rng, int n) {
    std::vector<std::uint8_t> bits(n);
    for (auto& b : bits) b = static_cast<std::uint8_t>(rng.bit());
    return bits;
}

long long count_bit_errors(const std::vector<std::uint8_t>& sent,
                           const std::vector<std::uint8_t>& decoded) {
    long long e = 0;
    for (std::size_t i = 0; i < sent.size(); ++i) e += sent[i] != decoded[i];
    return e;
}

Vector draw_noise(Xoshiro256pp& rng, int dim) {
    Vector z(dim);
    for (int i = 0; i < dim; ++i) z(i) = rng.cgaussian();
    return z;
}

struct UserLayout {
    std::vector<std::string> labels;
    int K = 0, L = 0;
    int total = 0;
    int macro_row(int k) const { return k; }
    int femto_row(int k, int l) const { return K + k * L + l; }
};

UserLayout layout_for(const Topology& topo) {
    UserLayout u;
    u.K = topo.K;
    u.L = topo.L;
    u.total = topo.K + topo.K * topo.L;
    for (int k = 0; k < topo.K; ++k) u.labels.push_back("a" + std::to_string(k + 1));
    for (int k = 0; k < topo.K; ++k) {
        for (int l = 0; l < topo.L; ++l) {
            u.labels.push_back(topo.L == 1
                                   ? "f" + std::to_string(k + 1)
                                   : "f" + std::to_string(k + 1) + std::to_string(l + 1));
        }
    }
    return u;
}

using Tally = std::vector<std::vector<long long>>; // [user][snr]

Tally zero_tally(int users, int snr_points) {
    return Tally(users, std::vector<long long>(snr_points, 0));
}

double logdet_rate(const Matrix& heff, double noise_var, int T) {
    const Matrix gram =
        Matrix::Identity(heff.rows(), heff.rows()) + heff * heff.adjoint() / noise_var;
    return linalg::log_det_hermitian(gram) / T;
}

// ---------------------------------------------------------------- hybrid --

void hybrid_ber_frame(const SimConfig& cfg, const hybrid::PrecodingBasis& basis,
                      const hybrid::NomaPowerAllocation& alloc,
                      const std::vector<double>& sigma, int frame, Tally& errors) {
    const Topology& topo = cfg.topology;
    const int K = topo.K, L = topo.L, N = topo.N, T = topo.hybrid_slots();
    const UserLayout users = layout_for(topo);
    const int bits_per_user_ss = 2 * N;
    const int network_bits = bits_per_user_ss * users.total;
    const int n_ss = (cfg.bits_per_frame + network_bits - 1) / network_bits;

    Xoshiro256pp bits_rng(derive_seed(cfg.seed, {kPayload, static_cast<std::uint64_t>(frame)}));
    Xoshiro256pp noise_rng(derive_seed(cfg.seed, {kNoise, static_cast<std::uint64_t>(frame)}));

    for (int ss = 0; ss < n_ss; ++ss) {
        const ChannelSet ch = draw_channels(
            topo, derive_seed(cfg.seed, {kFading, static_cast<std::uint64_t>(frame),
                                         static_cast<std::uint64_t>(ss)}));

        std::vector<std::vector<std::uint8_t>> macro_bits(K);
        std::vector<Vector> macro_syms(K);
        for (int k = 0; k < K; ++k) {
            macro_bits[k] = draw_bits(bits_rng, bits_per_user_ss);
            macro_syms[k] = qpsk::modulate(macro_bits[k]);
        }
        std::vector<std::vector<std::vector<std::uint8_t>>> femto_bits(K);
        std::vector<std::vector<Vector>> femto_syms(K);
        for (int k = 0; k < K; ++k) {
            femto_bits[k].resize(L);
            femto_syms[k].resize(L);
            for (int l = 0; l < L; ++l) {
                femto_bits[k][l] = draw_bits(bits_rng, bits_per_user_ss);
                femto_syms[k][l] = qpsk::modulate(femto_bits[k][l]);
            }
        }

        const auto tx = hybrid::hybrid_transmit(basis, alloc, macro_syms, femto_syms);

        // Clean signals and unit-variance noise, shared by all SNR points.
        std::vector<Vector> macro_clean(K), macro_noise(K);
        std::vector<Matrix> own_h(K);
        std::vector<double> own_gamma(K);
        for (int k = 0; k < K; ++k) {
            const Link& direct = ch.macro_direct[k];
            Vector y = lift_channel(direct.h, direct.gamma, T) * tx.x_macro;
            for (int l = 0; l < L; ++l) {
                const Link& f = ch.femto_to_macro[k][l];
                y += lift_channel(f.h, f.gamma, T) * tx.x_femto[k][l];
            }
            macro_clean[k] = y;
            macro_noise[k] = draw_noise(noise_rng, T * N);
            own_h[k] = direct.h;
            own_gamma[k] = direct.gamma;
        }
        std::vector<std::vector<Vector>> femto_clean(K, std::vector<Vector>(L));
        std::vector<std::vector<Vector>> femto_noise(K, std::vector<Vector>(L));
        for (int k = 0; k < K; ++k) {
            for (int l = 0; l < L; ++l) {
                const Link& direct = ch.femto_direct[k][l];
                Vector y = lift_channel(direct.h, direct.gamma, T) * tx.x_femto[k][l];
                const Link& down = ch.macro_to_femto[k][l];
                y += lift_channel(down.h, down.gamma, T) * tx.x_macro;
                for (int j = 0; j < L; ++j) {
                    if (j == l) continue;
                    const Link& cross = ch.femto_cross[k][l][j];
                    y += lift_channel(cross.h, cross.gamma, T) * tx.x_femto[k][j];
                }
                femto_clean[k][l] = y;
                femto_noise[k][l] = draw_noise(noise_rng, T * N);
            }
        }

        for (std::size_t s = 0; s < sigma.size(); ++s) {
            std::vector<Vector> projected(K);
            for (int k = 0; k < K; ++k) {
                projected[k] = hybrid::macro_receive_project(
                    macro_clean[k] + sigma[s] * macro_noise[k], basis, N);
            }
            const auto sic = hybrid::sic_decode_macro(projected, alloc, own_h, own_gamma);
            for (int k = 0; k < K; ++k) {
                errors[users.macro_row(k)][s] += count_bit_errors(
                    macro_bits[k], qpsk::demodulate(sic.estimates[k][k]));
            }
            for (int k = 0; k < K; ++k) {
                for (int l = 0; l < L; ++l) {
                    const Vector proj = hybrid::femto_receive_project(
                        femto_clean[k][l] + sigma[s] * femto_noise[k][l], basis, l + 1, N);
                    const Link& direct = ch.femto_direct[k][l];
                    const Matrix coeff =
                        std::sqrt(direct.gamma * alloc.femto_power) * direct.h;
                    const Vector est = qpsk::ml_detect(proj, coeff);
                    errors[users.femto_row(k, l)][s] +=
                        count_bit_errors(femto_bits[k][l], qpsk::demodulate(est));
                }
            }
        }
    }
}

// ------------------------------------------------------------ blind IA ---

// One beamformer per femtocell, [k][l] (L=1 collapses to [k][0]).
std::vector<std::vector<blindia::FemtoBeamformer>> blind_femto_beamformers(
    const Topology& topo, double d, double femto_watts) {
    if (topo.L == 1) {
        auto flat = blindia::build_femto_beamformers_L1(topo, d, femto_watts);
        std::vector<std::vector<blindia::FemtoBeamformer>> out(topo.K);
        for (int k = 0; k < topo.K; ++k) out[k] = {flat[k]};
        return out;
    }
    return blindia::build_femto_beamformers_general(topo, d, femto_watts);
}

void blind_ber_frame(const SimConfig& cfg,
                     const std::vector<blindia::MacroBeamformer>& beams,
                     const std::vector<std::vector<blindia::FemtoBeamformer>>& fbeams,
                     const std::vector<blindia::FemtoProjection>& l1_proj,
                     const std::vector<double>& sigma, int frame, Tally& errors) {
    const Topology& topo = cfg.topology;
    const int K = topo.K, L = topo.L, N = topo.N, T = topo.blind_slots();
    const UserLayout users = layout_for(topo);
    int network_bits = K * 2 * N;
    for (int k = 0; k < K; ++k)
        for (int l = 0; l < L; ++l) network_bits += 2 * fbeams[k][l].messages;
    const int n_ss = (cfg.bits_per_frame + network_bits - 1) / network_bits;

    Xoshiro256pp bits_rng(derive_seed(cfg.seed, {kPayload, static_cast<std::uint64_t>(frame)}));
    Xoshiro256pp noise_rng(derive_seed(cfg.seed, {kNoise, static_cast<std::uint64_t>(frame)}));

    for (int ss = 0; ss < n_ss; ++ss) {
        const ChannelSet ch = draw_channels(
            topo, derive_seed(cfg.seed, {kFading, static_cast<std::uint64_t>(frame),
                                         static_cast<std::uint64_t>(ss)}));

        std::vector<std::vector<std::uint8_t>> macro_bits(K);
        std::vector<Vector> macro_syms(K);
        for (int k = 0; k < K; ++k) {
            macro_bits[k] = draw_bits(bits_rng, 2 * N);
            macro_syms[k] = qpsk::modulate(macro_bits[k]);
        }
        std::vector<std::vector<std::vector<std::uint8_t>>> femto_bits(K);
        std::vector<std::vector<Vector>> femto_syms(K);
        for (int k = 0; k < K; ++k) {
            femto_bits[k].resize(L);
            femto_syms[k].resize(L);
            for (int l = 0; l < L; ++l) {
                femto_bits[k][l] = draw_bits(bits_rng, 2 * fbeams[k][l].messages);
                femto_syms[k][l] = qpsk::modulate(femto_bits[k][l]);
            }
        }

        Vector x_macro = Vector::Zero(T * N);
        for (int k = 0; k < K; ++k) x_macro += beams[k].matrix * macro_syms[k];
        std::vector<std::vector<Vector>> x_femto(K, std::vector<Vector>(L));
        for (int k = 0; k < K; ++k)
            for (int l = 0; l < L; ++l) x_femto[k][l] = fbeams[k][l].matrix * femto_syms[k][l];

        // Receiver-side quantities: projections and effective channels depend
        // on the channel draw but not on the noise level.
        std::vector<Vector> macro_clean(K), macro_noise(K);
        std::vector<Matrix> macro_P(K), macro_eff(K);
        for (int k = 0; k < K; ++k) {
            const Link& direct = ch.macro_direct[k];
            Vector y = lift_channel(direct.h, direct.gamma, T) * x_macro;
            for (int l = 0; l < L; ++l) {
                const Link& f = ch.femto_to_macro[k][l];
                y += lift_channel(f.h, f.gamma, T) * x_femto[k][l];
            }
            macro_clean[k] = y;
            macro_noise[k] = draw_noise(noise_rng, T * N);
            const auto proj = blindia::build_macro_projection(topo, cfg.blind_c, k, ch);
            macro_P[k] = proj.P;
            macro_eff[k] = blindia::macro_effective_channel(proj, beams[k], direct, T).matrix;
        }

        std::vector<std::vector<Vector>> femto_clean(K, std::vector<Vector>(L));
        std::vector<std::vector<Vector>> femto_noise(K, std::vector<Vector>(L));
        std::vector<std::vector<Matrix>> femto_P(K, std::vector<Matrix>(L));
        std::vector<std::vector<Matrix>> femto_eff(K, std::vector<Matrix>(L));
        for (int k = 0; k < K; ++k) {
            for (int l = 0; l < L; ++l) {
                const Link& direct = ch.femto_direct[k][l];
                Vector y = lift_channel(direct.h, direct.gamma, T) * x_femto[k][l];
                const Link& down = ch.macro_to_femto[k][l];
                y += lift_channel(down.h, down.gamma, T) * x_macro;
                if (L > 1) {
                    // Group 1 receivers (l != 1) hear the exclusive-slot
                    // femto; the exclusive-slot receiver hears every group-1
                    // femto. Other cross links sit below noise.
                    for (int j = 0; j < L; ++j) {
                        if (j == l) continue;
                        const bool modeled = (l != 1 && j == 1) || (l == 1 && j != 1);
                        if (!modeled) continue;
                        const Link& cross = ch.femto_cross[k][l][j];
                        y += lift_channel(cross.h, cross.gamma, T) * x_femto[k][j];
                    }
                }
                femto_clean[k][l] = y;
                femto_noise[k][l] = draw_noise(noise_rng, T * topo.M_r);
                const blindia::FemtoProjection proj =
                    topo.L == 1
                        ? l1_proj[k]
                        : blindia::build_femto_projection_general(topo, cfg.blind_c, k, l, ch);
                femto_P[k][l] = proj.P;
                femto_eff[k][l] =
                    blindia::femto_effective_channel(topo, proj, fbeams[k][l], direct).matrix;
            }
        }

        for (std::size_t s = 0; s < sigma.size(); ++s) {
            for (int k = 0; k < K; ++k) {
                const Vector y = macro_P[k] * (macro_clean[k] + sigma[s] * macro_noise[k]);
                const Vector est = qpsk::ml_detect(y, macro_eff[k]);
                errors[users.macro_row(k)][s] +=
                    count_bit_errors(macro_bits[k], qpsk::demodulate(est));
            }
            for (int k = 0; k < K; ++k) {
                for (int l = 0; l < L; ++l) {
                    const Vector y =
                        femto_P[k][l] * (femto_clean[k][l] + sigma[s] * femto_noise[k][l]);
                    const Vector est = qpsk::ml_detect(y, femto_eff[k][l]);
                    errors[users.femto_row(k, l)][s] +=
                        count_bit_errors(femto_bits[k][l], qpsk::demodulate(est));
                }
            }
        }
    }
}

// ---------------------------------------------------------------- TDMA ---

void tdma_ber_frame(const SimConfig& cfg, const std::vector<double>& sigma, int frame,
                    Tally& errors) {
    const Topology& topo = cfg.topology;
    const int K = topo.K, L = topo.L, N = topo.N;
    const int T = cfg.tdma_context == TdmaContext::kHybrid ? topo.hybrid_slots()
                                                           : topo.blind_slots();
    const UserLayout users = layout_for(topo);
    const int bits_user = (cfg.bits_per_frame + users.total - 1) / users.total;
    const int bits_per_ss = 2 * N * T;
    const int n_ss = (bits_user + bits_per_ss - 1) / bits_per_ss;

    Xoshiro256pp bits_rng(derive_seed(cfg.seed, {kPayload, static_cast<std::uint64_t>(frame)}));
    Xoshiro256pp noise_rng(derive_seed(cfg.seed, {kNoise, static_cast<std::uint64_t>(frame)}));

    for (int row = 0; row < users.total; ++row) {
        const bool is_macro = row < K;
        const int k = is_macro ? row : (row - K) / L;
        const int l = is_macro ? 0 : (row - K) % L;
        const double tx_power = is_macro ? cfg.power.macrocell_watts : cfg.power.femtocell_watts;
        const double amp = std::sqrt(tx_power / N);
        const int rx_dim = is_macro ? N : topo.M_r;

        for (int ss = 0; ss < n_ss; ++ss) {
            const ChannelSet ch = draw_channels(
                topo, derive_seed(cfg.seed, {kFading, static_cast<std::uint64_t>(frame),
                                             static_cast<std::uint64_t>(ss),
                                             static_cast<std::uint64_t>(row)}));
            const Link& link = is_macro ? ch.macro_direct[k] : ch.femto_direct[k][l];
            const Matrix coeff = std::sqrt(link.gamma) * amp * link.h;

            const auto bits = draw_bits(bits_rng, bits_per_ss);
            const Vector syms = qpsk::modulate(bits);
            std::vector<Vector> noise(T);
            for (int t = 0; t < T; ++t) noise[t] = draw_noise(noise_rng, rx_dim);

            for (std::size_t s = 0; s < sigma.size(); ++s) {
                std::vector<std::uint8_t> decoded;
                decoded.reserve(bits_per_ss);
                for (int t = 0; t < T; ++t) {
                    const Vector u = syms.segment(t * N, N);
                    const Vector y = coeff * u + sigma[s] * noise[t];
                    const auto est = qpsk::demodulate(qpsk::ml_detect(y, coeff));
                    decoded.insert(decoded.end(), est.begin(), est.end());
                }
                errors[row][s] += count_bit_errors(bits, decoded);
            }
        }
    }
}

// -------------------------------------------------------------- drivers --

int worker_count(const SimConfig& cfg) {
    int n = cfg.workers > 0 ? cfg.workers
                            : static_cast<int>(std::thread::hardware_concurrency());
    n = std::max(n, 1);
    return std::min(n, cfg.frames);
}

template <typename FrameFn>
Tally run_frames(const SimConfig& cfg, int users, FrameFn&& frame_fn) {
    const int n_workers = worker_count(cfg);
    std::vector<Tally> partial(n_workers, zero_tally(users, static_cast<int>(cfg.snr_db.size())));
    auto chunk = [&](int w, Tally& tally) {
        const int lo = static_cast<int>(static_cast<long long>(cfg.frames) * w / n_workers);
        const int hi = static_cast<int>(static_cast<long long>(cfg.frames) * (w + 1) / n_workers);
        for (int f = lo; f < hi; ++f) frame_fn(f, tally);
    };
    if (n_workers == 1) {
        chunk(0, partial[0]);
    } else {
        std::vector<std::thread> threads;
        threads.reserve(n_workers);
        for (int w = 0; w < n_workers; ++w)
            threads.emplace_back(chunk, w, std::ref(partial[w]));
        for (auto& t : threads) t.join();
    }
    Tally total = zero_tally(users, static_cast<int>(cfg.snr_db.size()));
    for (const auto& tally : partial)
        for (std::size_t u = 0; u < tally.size(); ++u)
            for (std::size_t s = 0; s < tally[u].size(); ++s) total[u][s] += tally[u][s];
    return total;
}

void check_config(const SimConfig& cfg) {
    cfg.topology.validate();
    if (cfg.snr_db.empty()) throw InvalidParameterError("SNR grid is empty");
    if (cfg.frames < 1) throw InvalidParameterError("frames must be >= 1");
    if (cfg.bits_per_frame < 1) throw InvalidParameterError("bits_per_frame must be >= 1");
}

std::vector<double> sigma_grid(const SimConfig& cfg) {
    std::vector<double> sigma;
    sigma.reserve(cfg.snr_db.size());
    for (double snr : cfg.snr_db)
        sigma.push_back(std::sqrt(noise_variance_for_snr_db(cfg.power, cfg.topology, snr)));
    return sigma;
}

SimResult result_skeleton(const SimConfig& cfg, const UserLayout& users) {
    SimResult r;
    r.scheme = scheme_name(cfg.scheme, cfg.tdma_context);
    r.users = users.labels;
    r.snr_db = cfg.snr_db;
    r.seed = cfg.seed;
    r.frames = cfg.frames;
    r.bits_per_frame = cfg.bits_per_frame;
    return r;
}

} // namespace

std::string scheme_name(Scheme s, TdmaContext ctx) {
    switch (s) {
        case Scheme::kHybrid: return "hybrid";
        case Scheme::kBlindIA: return "blind-ia";
        case Scheme::kTdma:
            return ctx == TdmaContext::kHybrid ? "tdma-hybrid" : "tdma-blind";
    }
    throw InvalidParameterError("unknown scheme");
}

SimResult run_ber_sweep(const SimConfig& cfg) {
    check_config(cfg);
    const Topology& topo = cfg.topology;
    const UserLayout users = layout_for(topo);
    const std::vector<double> sigma = sigma_grid(cfg);
    SimResult result = result_skeleton(cfg, users);

    Tally errors;
    std::vector<long long> bits_per_frame_user(users.total, 0);

    if (cfg.scheme == Scheme::kHybrid) {
        if (topo.M_r != topo.N) {
            throw UnsupportedTopologyError(
                "hybrid scheme assumes femto receivers with N antennas");
        }
        const auto basis = hybrid::build_precoding_basis(topo.hybrid_slots());
        const auto alloc = hybrid::allocate_noma_powers(topo, cfg.power);
        const int network_bits = 2 * topo.N * users.total;
        const int n_ss = (cfg.bits_per_frame + network_bits - 1) / network_bits;
        for (int u = 0; u < users.total; ++u)
            bits_per_frame_user[u] = static_cast<long long>(2 * topo.N) * n_ss;
        errors = run_frames(cfg, users.total, [&](int f, Tally& tally) {
            hybrid_ber_frame(cfg, basis, alloc, sigma, f, tally);
        });
    } else if (cfg.scheme == Scheme::kBlindIA) {
        const auto beams =
            blindia::build_macro_beamformers(topo, cfg.blind_c, cfg.power.macrocell_watts);
        const auto fbeams =
            blind_femto_beamformers(topo, cfg.blind_d, cfg.power.femtocell_watts);
        std::vector<blindia::FemtoProjection> l1_proj;
        if (topo.L == 1) {
            for (int k = 0; k < topo.K; ++k)
                l1_proj.push_back(blindia::build_femto_projection_L1(topo, cfg.blind_c, k));
        }
        int network_bits = topo.K * 2 * topo.N;
        for (int k = 0; k < topo.K; ++k)
            for (int l = 0; l < topo.L; ++l) network_bits += 2 * fbeams[k][l].messages;
        const int n_ss = (cfg.bits_per_frame + network_bits - 1) / network_bits;
        for (int k = 0; k < topo.K; ++k) {
            bits_per_frame_user[users.macro_row(k)] =
                static_cast<long long>(2 * topo.N) * n_ss;
            for (int l = 0; l < topo.L; ++l)
                bits_per_frame_user[users.femto_row(k, l)] =
                    static_cast<long long>(2 * fbeams[k][l].messages) * n_ss;
        }
        errors = run_frames(cfg, users.total, [&](int f, Tally& tally) {
            blind_ber_frame(cfg, beams, fbeams, l1_proj, sigma, f, tally);
        });
    } else {
        const int T = cfg.tdma_context == TdmaContext::kHybrid ? topo.hybrid_slots()
                                                               : topo.blind_slots();
        const int bits_user = (cfg.bits_per_frame + users.total - 1) / users.total;
        const int bits_per_ss = 2 * topo.N * T;
        const int n_ss = (bits_user + bits_per_ss - 1) / bits_per_ss;
        for (int u = 0; u < users.total; ++u)
            bits_per_frame_user[u] = static_cast<long long>(bits_per_ss) * n_ss;
        errors = run_frames(cfg, users.total, [&](int f, Tally& tally) {
            tdma_ber_frame(cfg, sigma, f, tally);
        });
    }

    result.bit_errors = errors;
    result.bits_sent.resize(users.total);
    result.ber.assign(users.total, std::vector<double>(cfg.snr_db.size(), 0.0));
    for (int u = 0; u < users.total; ++u) {
        result.bits_sent[u] = bits_per_frame_user[u] * cfg.frames;
        for (std::size_t s = 0; s < cfg.snr_db.size(); ++s)
            result.ber[u][s] =
                static_cast<double>(errors[u][s]) / static_cast<double>(result.bits_sent[u]);
    }
    return result;
}

SimResult run_rate_sweep(const SimConfig& cfg) {
    check_config(cfg);
    if (cfg.scheme == Scheme::kTdma) return tdma_baseline_rates(cfg);

    const Topology& topo = cfg.topology;
    const UserLayout users = layout_for(topo);
    SimResult result = result_skeleton(cfg, users);
    result.rate.assign(users.total, std::vector<double>(cfg.snr_db.size(), 0.0));
    result.sum_rate.assign(cfg.snr_db.size(), 0.0);

    // Same derived seed at every SNR point: common channel draws make the
    // sweep a deterministic function of the noise level alone.
    const std::uint64_t mc_seed = derive_seed(cfg.seed, {kRates});
    for (std::size_t s = 0; s < cfg.snr_db.size(); ++s) {
        const double noise_var = noise_variance_for_snr_db(cfg.power, topo, cfg.snr_db[s]);
        if (cfg.scheme == Scheme::kHybrid) {
            const auto rates =
                hybrid::hybrid_rate(topo, cfg.power, noise_var, cfg.frames, mc_seed);
            for (int k = 0; k < topo.K; ++k)
                result.rate[users.macro_row(k)][s] = rates.macro[k] / kLn2;
            for (int k = 0; k < topo.K; ++k)
                for (int l = 0; l < topo.L; ++l)
                    result.rate[users.femto_row(k, l)][s] = rates.femto[k][l] / kLn2;
        } else {
            const auto rates = blindia::blind_ia_rate(topo, cfg.power, cfg.blind_c,
                                                      cfg.blind_d, noise_var, cfg.frames,
                                                      mc_seed);
            for (int k = 0; k < topo.K; ++k)
                result.rate[users.macro_row(k)][s] = rates.macro[k] / kLn2;
            for (int k = 0; k < topo.K; ++k)
                for (int l = 0; l < topo.L; ++l)
                    result.rate[users.femto_row(k, l)][s] = rates.femto[k][l] / kLn2;
        }
        for (int u = 0; u < users.total; ++u) result.sum_rate[s] += result.rate[u][s];
    }
    return result;
}

SimResult tdma_baseline_rates(const SimConfig& cfg) {
    check_config(cfg);
    const Topology& topo = cfg.topology;
    const UserLayout users = layout_for(topo);
    SimConfig named = cfg;
    named.scheme = Scheme::kTdma;
    SimResult result = result_skeleton(named, users);
    result.rate.assign(users.total, std::vector<double>(cfg.snr_db.size(), 0.0));
    result.sum_rate.assign(cfg.snr_db.size(), 0.0);

    const std::uint64_t mc_seed = derive_seed(cfg.seed, {kRates});
    const bool blind_ctx = cfg.tdma_context == TdmaContext::kBlindIA;
    const int T = blind_ctx ? topo.blind_slots() : topo.hybrid_slots();

    // Solo blind users keep the supersymbol structure; the macro beamformer
    // carries the whole budget instead of a 1/K share.
    std::vector<blindia::MacroBeamformer> beams;
    std::vector<std::vector<blindia::FemtoBeamformer>> fbeams;
    std::vector<blindia::FemtoProjection> l1_proj;
    if (blind_ctx) {
        beams = blindia::build_macro_beamformers(topo, cfg.blind_c,
                                                 cfg.power.macrocell_watts * topo.K);
        fbeams = blind_femto_beamformers(topo, cfg.blind_d, cfg.power.femtocell_watts);
        if (topo.L == 1) {
            for (int k = 0; k < topo.K; ++k)
                l1_proj.push_back(blindia::build_femto_projection_L1(topo, cfg.blind_c, k));
        }
    }

    for (std::size_t s = 0; s < cfg.snr_db.size(); ++s) {
        const double noise_var = noise_variance_for_snr_db(cfg.power, topo, cfg.snr_db[s]);
        std::vector<double> acc(users.total, 0.0);
        for (int i = 0; i < cfg.frames; ++i) {
            const ChannelSet ch = draw_channels(
                topo, derive_seed(mc_seed, {static_cast<std::uint64_t>(i)}));
            if (!blind_ctx) {
                for (int k = 0; k < topo.K; ++k) {
                    const Link& link = ch.macro_direct[k];
                    const double coef =
                        cfg.power.macrocell_watts * link.gamma / (topo.N * noise_var);
                    const Matrix gram = Matrix::Identity(topo.N, topo.N) +
                                        coef * link.h * link.h.adjoint();
                    acc[users.macro_row(k)] += linalg::log_det_hermitian(gram) / T;
                }
                for (int k = 0; k < topo.K; ++k) {
                    for (int l = 0; l < topo.L; ++l) {
                        const Link& link = ch.femto_direct[k][l];
                        const double coef =
                            cfg.power.femtocell_watts * link.gamma / (topo.N * noise_var);
                        const Matrix gram = Matrix::Identity(topo.M_r, topo.M_r) +
                                            coef * link.h * link.h.adjoint();
                        acc[users.femto_row(k, l)] += linalg::log_det_hermitian(gram) / T;
                    }
                }
            } else {
                for (int k = 0; k < topo.K; ++k) {
                    const auto proj = blindia::build_macro_projection(topo, cfg.blind_c, k, ch);
                    const auto eff = blindia::macro_effective_channel(proj, beams[k],
                                                                      ch.macro_direct[k], T);
                    acc[users.macro_row(k)] += logdet_rate(eff.matrix, noise_var, T);
                }
                for (int k = 0; k < topo.K; ++k) {
                    for (int l = 0; l < topo.L; ++l) {
                        const blindia::FemtoProjection proj =
                            topo.L == 1 ? l1_proj[k]
                                        : blindia::build_femto_projection_general(
                                              topo, cfg.blind_c, k, l, ch);
                        const auto eff = blindia::femto_effective_channel(
                            topo, proj, fbeams[k][l], ch.femto_direct[k][l]);
                        acc[users.femto_row(k, l)] += logdet_rate(eff.matrix, noise_var, T);
                    }
                }
            }
        }
        for (int u = 0; u < users.total; ++u) {
            result.rate[u][s] = acc[u] / cfg.frames / kLn2;
            result.sum_rate[s] += result.rate[u][s] / users.total;
        }
    }
    return result;
}

std::vector<double> median3(const std::vector<double>& series) {
    if (series.size() < 3) return series;
    std::vector<double> out(series.size());
    out.front() = series.front();
    out.back() = series.back();
    for (std::size_t i = 1; i + 1 < series.size(); ++i) {
        double a = series[i - 1], b = series[i], c = series[i + 1];
        out[i] = std::max(std::min(a, b), std::min(std::max(a, b), c));
    }
    return out;
}

bool monotone_within_noise(const std::vector<double>& ber, long long bits_per_point,
                           double n_sigmas) {
    if (bits_per_point < 1) throw InvalidParameterError("bits_per_point must be >= 1");
    const std::vector<double> smooth = median3(ber);
    const double n = static_cast<double>(bits_per_point);
    for (std::size_t i = 0; i + 1 < smooth.size(); ++i) {
        const double p = std::max(smooth[i], 1.0 / n);
        const double sd = std::sqrt(p * (1.0 - std::min(p, 0.5)) / n);
        if (smooth[i + 1] > smooth[i] + n_sigmas * sd) return false;
    }
    return true;
}

} // namespace sim
} // namespace hetnet

#ifndef HETNET_HYBRID_HPP
#define HETNET_HYBRID_HPP

#include "hetnet/channel.hpp"
#include "hetnet/linalg.hpp"
#include "hetnet/topology.hpp"

#include <cstdint>
#include <vector>

// Hybrid scheme: orthonormal supersymbol precoding separates the macrocell
// from the femtocell groups (interference management with no CSIT), while
// the macrocell superimposes its K users in the power domain and relies on
// successive interference cancellation at the receivers.
//
// A supersymbol spans T = L+1 slots. The macrocell precodes every user's
// block onto v_0; femtocell group l (1-based) precodes onto v_l. Orthonormal
// v's mean a receiver that projects onto its own vector wipes out every other
// group exactly, with no noise enhancement.

namespace hetnet {
namespace hybrid {

struct PrecodingBasis {
    int T = 0;
    std::vector<RealVector> v; // v[0] for the macrocell, v[l] for group l
};

// T=1 -> [[1]]. T=2 -> the fixed pair v0=[1/2, sqrt(3)/2],
// v1=[-sqrt(3)/2, 1/2]. T>2 -> v0 = all-ones/sqrt(T) completed to an
// orthonormal basis (deterministic).
PrecodingBasis build_precoding_basis(int T);

struct NomaPowerAllocation {
    double a = 0.0;                  // sqrt of macrocell budget
    double b = 0.0;                  // sqrt of femtocell budget
    std::vector<double> macro_power; // per-symbol power of macro user k
    double femto_power = 0.0;        // per-symbol power of any femto message
};

// Distance-proportional NOMA split: P_{a_k} = (P_mac/N) d_k^2 / sum_j d_j^2,
// so farther users get more power and sum_k N*P_{a_k} = P_mac. Femtocells
// spread their own budget uniformly: P_f = P_fem/N.
NomaPowerAllocation allocate_noma_powers(const Topology& topo,
                                         const PowerConfig& power);

struct HybridTxFrame {
    Vector x_macro;                           // TN x 1
    std::vector<std::vector<Vector>> x_femto; // [k][l], each TN x 1
};

// macro_symbols[k] and femto_symbols[k][l] are N-vectors of unit-power
// constellation symbols.
HybridTxFrame hybrid_transmit(
    const PrecodingBasis& basis, const NomaPowerAllocation& alloc,
    const std::vector<Vector>& macro_symbols,
    const std::vector<std::vector<Vector>>& femto_symbols);

// (v_0^T kron I_N) * y : collapses a TN-vector to the macro group's N dims.
Vector macro_receive_project(const Vector& y, const PrecodingBasis& basis,
                             int N);

// (v_l^T kron I_N) * y for femtocell group l in 1..T-1.
Vector femto_receive_project(const Vector& y, const PrecodingBasis& basis,
                             int group, int N);

struct SicResult {
    // estimates[k][j]: receiver a_k's ML estimate of macro user j's block.
    // Populated for every j that receiver k decodes on its way to its own
    // message (its SIC chain); empty vectors elsewhere.
    std::vector<std::vector<Vector>> estimates;
};

// Successive interference cancellation across the macro users.
// projected[k] is the post-projection N-vector at a_k, own_channel[k] the
// N x N fading matrix of TxA->a_k, gamma[k] its path gain. Receivers decode
// higher-power (farther) users first, subtract sqrt(gamma_k P_j) h_k u_hat_j,
// and finish with their own block. The farthest user decodes directly.
SicResult sic_decode_macro(const std::vector<Vector>& projected,
                           const NomaPowerAllocation& alloc,
                           const std::vector<Matrix>& own_channel,
                           const std::vector<double>& gamma);

// Residual interference-plus-noise power that user k sees when decoding its
// own block after SIC: noise plus every closer (lower-power) user's signal
// power through a_k's own channel, gamma_k * ||h_k||_F^2 / N per unit power.
double interference_plus_noise(int k, const NomaPowerAllocation& alloc,
                               const std::vector<double>& gamma,
                               const Matrix& h_k, double noise_var);

struct HybridRates {
    std::vector<double> macro;              // nats per slot
    std::vector<std::vector<double>> femto; // [k][l], nats per slot
};

// Ergodic rates by Monte-Carlo expectation over `draws` channel draws.
// Macro user k: (1/T) E[log det(I_N + (P_k gamma_k / S_k) h h^H)] with S_k
// from interference_plus_noise. Femto: (1/T) E[log det(I_N +
// (P_f gamma_f / sigma^2) h h^H)] - post-projection these links are clean.
HybridRates hybrid_rate(const Topology& topo, const PowerConfig& power,
                        double noise_var, int draws, std::uint64_t seed);

} // namespace hybrid
} // namespace hetnet

#endif

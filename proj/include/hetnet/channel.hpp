#ifndef HETNET_CHANNEL_HPP
#define HETNET_CHANNEL_HPP

#include "hetnet/linalg.hpp"
#include "hetnet/topology.hpp"

#include <cstdint>
#include <vector>

// Rayleigh block-fading channel draws for one supersymbol, plus the lift of a
// per-slot channel onto a whole supersymbol. Entries are i.i.d. CN(0,1); path
// loss enters separately as sqrt(gamma) so tests can reason about the two
// factors independently.

namespace hetnet {

struct Link {
    Matrix h;     // rx_antennas x tx_antennas, CN(0,1) entries
    double gamma; // path gain 1/d^n
};

struct ChannelSet {
    // Indexing: k = macro user (0-based), l/j = femtocell within its cluster.
    std::vector<Link> macro_direct;                   // TxA -> a_k, N x N
    std::vector<std::vector<Link>> femto_direct;      // Txf_kl -> f_kl, M_r x N
    std::vector<std::vector<Link>> macro_to_femto;    // TxA -> f_kl, M_r x N
    std::vector<std::vector<Link>> femto_to_macro;    // Txf_kl -> a_k, N x N
    // femto_cross[k][l][j]: Txf_kj -> f_kl (j != l), M_r x N
    std::vector<std::vector<std::vector<Link>>> femto_cross;
};

// Draw every link of the topology for one supersymbol. Each link gets its own
// derived sub-stream, so the result is independent of evaluation order and
// identical for identical (topology, seed).
ChannelSet draw_channels(const Topology& topo, std::uint64_t seed);

// Lift a per-slot channel h onto a T-slot supersymbol: sqrt(gamma)*(I_T kron h).
// The channel is constant across the supersymbol; the lift is what the
// supersymbol-level beamformers multiply against.
Matrix lift_channel(const Matrix& h, double gamma, int T);

} // namespace hetnet

#endif

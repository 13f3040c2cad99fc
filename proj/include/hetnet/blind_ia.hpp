#ifndef HETNET_BLIND_IA_HPP
#define HETNET_BLIND_IA_HPP

#include "hetnet/channel.hpp"
#include "hetnet/linalg.hpp"
#include "hetnet/topology.hpp"

#include <cstdint>
#include <vector>

// Blind interference alignment over a T = K+1 slot supersymbol. Transmitters
// know no channel coefficients; all structure lives in fixed slot-schedule
// vectors. Slot 0 is the broadcast slot (every macro user scheduled), slot
// k+1 is macro user k's exclusive slot. Femtocells fill the slots their
// paired macro user leaves exploitable, and receivers project with matrices
// built from their own received channels (receiver-side CSI only).
//
// Every projection*lift*beamformer chain collapses, through the Kronecker
// mixed-product rule, to a small factored matrix: scale * D * K for the
// macrocell (D diagonal, schedule-only; K = h_tilde * h), and scale * K * D
// for the femtocells. The builders compute both the direct product and the
// factored form and refuse to hand back anything that disagrees.

namespace hetnet {
namespace blindia {

struct MacroBeamformer {
    RealVector schedule; // v^{a_k}: c at slot 0, sqrt(1-c^2) at slot k+1
    Matrix matrix;       // (a/sqrt(N)) (schedule kron I_N), TN x N
    double amplitude;    // a = sqrt(P_macro/(K*N))
};

// Throws InvalidParameterError unless 0 < |c| < 1.
std::vector<MacroBeamformer> build_macro_beamformers(const Topology& topo,
                                                     double c,
                                                     double macro_watts);

struct FemtoPiece {
    RealVector xi;   // length-T slot schedule of this piece
    RealMatrix ant;  // N x m: transmit antennas carrying it
    RealMatrix rows; // m x messages: which message rows it carries
};

struct FemtoBeamformer {
    Matrix matrix; // TN x messages
    std::vector<FemtoPiece> pieces;
    int messages = 0;  // per-supersymbol message count of this femto
    int group = 1;     // 1 or 2; L=1 femtos behave like a fused group
    double amplitude = 0.0; // b_i = sqrt(N*P_fem/messages)
};

// One femtocell per macro user, receivers with M_r in {N-1, N} antennas.
// Messages ride d-weighted pieces on every slot except the paired user's
// exclusive slot, plus one beta-weighted piece on that slot through the last
// antenna. Excluded d values (InvalidParameterError): 0 and the beta root
// 1/sqrt((T-1)(M_r-1)).
std::vector<FemtoBeamformer> build_femto_beamformers_L1(const Topology& topo,
                                                        double d,
                                                        double femto_watts);

// 2 <= L <= min(3, N) femtocells per macro user (UnsupportedTopologyError
// otherwise). Femto l=1 (0-based) forms the exclusive-slot group G2; the
// rest spread d-weighted pieces over the first N-L+1 antennas with a
// beta-weighted duplicate on the broadcast slot. Excluded d values: 0 and
// 1/sqrt((T-2)(N-L+1)); also requires (T-2)d^2 < 1 so beta stays real.
std::vector<std::vector<FemtoBeamformer>> build_femto_beamformers_general(
    const Topology& topo, double d, double femto_watts);

struct MacroProjection {
    Matrix P;          // N x TN, orthonormal rows
    RealVector w1, w2; // slot combiners; w2 = exclusive-slot indicator
    Matrix h_tilde;    // N x N receive-shaping matrix, unit rows
};

// Receiver matrix of macro user k. Row N of h_tilde is bilinear-orthogonal
// to the columns its cluster's wideband femto pieces arrive on; rows 1..N-1
// to the exclusive-slot piece's column. w1 avoids the exclusive slot and the
// other users' schedules; w2 is the exclusive-slot indicator.
MacroProjection build_macro_projection(const Topology& topo, double c, int k,
                                       const ChannelSet& channels);

struct FemtoProjection {
    Matrix P;     // messages x T*M_r
    RealVector w; // length T, orthogonal to every macro schedule
    Matrix W;     // messages x M_r antenna combiner
};

// L=1 variant: W is the all-ones matrix (no channel knowledge needed beyond
// the schedule), so P depends only on the topology and c.
FemtoProjection build_femto_projection_L1(const Topology& topo, double c,
                                          int k);

// General-L variant: G1 receivers null the G2 femto's exclusive-slot column,
// G2 receivers null every G1 wideband column. Throws
// UnsupportedTopologyError when the antenna budget cannot host the required
// orthonormal rows, DegenerateChannelError when a drawn channel leaves no
// null space of the needed size.
FemtoProjection build_femto_projection_general(const Topology& topo, double c,
                                               int k, int l,
                                               const ChannelSet& channels);

struct EffectiveChannel {
    Matrix matrix; // factored effective channel, verified against the
                   // direct projection * lift * beamformer product
    Matrix D;      // schedule factor (diagonal for the macrocell)
    Matrix K;      // channel factor
    double scale;  // amplitude / sqrt(N)
};

// Verify ||P*H*V - factored|| <= tol * max(1, ||factored||) entrywise and
// return the factored matrix; throws FactorizationMismatchError otherwise.
Matrix check_factorization(const Matrix& p, const Matrix& lifted,
                           const Matrix& v, const Matrix& factored,
                           double tol = 1e-8);

EffectiveChannel macro_effective_channel(const MacroProjection& proj,
                                         const MacroBeamformer& beam,
                                         const Link& link, int T);

// Dispatches on beam.group / L=1 piece structure.
EffectiveChannel femto_effective_channel(const Topology& topo,
                                         const FemtoProjection& proj,
                                         const FemtoBeamformer& beam,
                                         const Link& link);

struct BlindRates {
    std::vector<double> macro;              // nats per slot
    std::vector<std::vector<double>> femto; // [k][l]
};

// Ergodic rates: (1/T) E[log det(I + Heff Heff^H / sigma^2)] with Heff the
// verified factored effective channel (its scale absorbs the per-scheme
// power coefficients exactly).
BlindRates blind_ia_rate(const Topology& topo, const PowerConfig& power,
                         double c, double d, double noise_var, int draws,
                         std::uint64_t seed);

struct ScheduleParams {
    double c = 0.0;
    double d = 0.0;
};

// Maximize det(D D^H) of the schedule factors over admissible c (macrocell)
// and then d (femtocells). D is channel-independent, so the expectation in
// the design objective is exact. 1e-3 grid plus golden-section refinement.
// L=1 topologies only.
ScheduleParams optimize_schedule_params(const Topology& topo);

} // namespace blindia
} // namespace hetnet

#endif

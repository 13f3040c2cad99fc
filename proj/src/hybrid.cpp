#include "hetnet/hybrid.hpp"

#include "hetnet/errors.hpp"
#include "hetnet/qpsk.hpp"
#include "hetnet/rng.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace hetnet {
namespace hybrid {

namespace {

// Expand a length-T slot vector to the (T*N) x N supersymbol precoder
// (v kron I_N), kept real until it multiplies symbols.
Matrix expander(const RealVector& v, int N) {
    return linalg::kron(RealMatrix(v), RealMatrix(RealMatrix::Identity(N, N)))
        .cast<Complex>();
}

// Receivers sorted by decreasing path gain; index 0 is the closest user and
// the last entry is the cell-edge user that decodes first.
std::vector<int> closeness_order(const std::vector<double>& gamma) {
    std::vector<int> order(gamma.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return gamma[a] > gamma[b]; });
    return order;
}

} // namespace

PrecodingBasis build_precoding_basis(int T) {
    if (T < 1) throw InvalidParameterError("precoding basis: T must be >= 1");
    PrecodingBasis basis;
    basis.T = T;
    if (T == 1) {
        basis.v = {RealVector::Ones(1)};
        return basis;
    }
    if (T == 2) {
        // The fixed pair used throughout the two-slot analysis.
        RealVector v0(2), v1(2);
        v0 << 0.5, std::sqrt(3.0) / 2.0;
        v1 << -std::sqrt(3.0) / 2.0, 0.5;
        basis.v = {v0, v1};
        return basis;
    }
    // General T: all-ones first vector (every slot carries macro energy),
    // completed deterministically to an orthonormal basis.
    RealVector v0 = RealVector::Constant(T, 1.0 / std::sqrt(double(T)));
    basis.v.push_back(v0);
    RealMatrix rest = linalg::orthonormal_complement(std::vector<RealVector>{v0}, T);
    for (Eigen::Index r = 0; r < rest.rows(); ++r)
        basis.v.push_back(rest.row(r).transpose());
    return basis;
}

NomaPowerAllocation allocate_noma_powers(const Topology& topo,
                                         const PowerConfig& power) {
    topo.validate();
    if (!(power.macrocell_watts > 0.0) || !(power.femtocell_watts > 0.0))
        throw InvalidParameterError("allocate: powers must be positive");

    NomaPowerAllocation alloc;
    alloc.a = std::sqrt(power.macrocell_watts);
    alloc.b = std::sqrt(power.femtocell_watts);

    double sum_sq = 0.0;
    for (double d : topo.macro_user_km) sum_sq += d * d;
    alloc.macro_power.resize(topo.K);
    for (int k = 0; k < topo.K; ++k) {
        const double d = topo.macro_user_km[k];
        alloc.macro_power[k] =
            power.macrocell_watts / topo.N * (d * d) / sum_sq;
    }
    alloc.femto_power = power.femtocell_watts / topo.N;
    return alloc;
}

HybridTxFrame hybrid_transmit(
    const PrecodingBasis& basis, const NomaPowerAllocation& alloc,
    const std::vector<Vector>& macro_symbols,
    const std::vector<std::vector<Vector>>& femto_symbols) {
    if (macro_symbols.empty())
        throw InvalidParameterError("transmit: no macro symbols");
    const int N = static_cast<int>(macro_symbols[0].size());
    const int K = static_cast<int>(macro_symbols.size());
    if (alloc.macro_power.size() != macro_symbols.size())
        throw DimensionMismatchError("transmit: allocation/user mismatch");
    for (const auto& u : macro_symbols)
        if (u.size() != N)
            throw DimensionMismatchError("transmit: macro block size");

    const Matrix e0 = expander(basis.v[0], N);
    Vector sum = Vector::Zero(N);
    for (int k = 0; k < K; ++k)
        sum += std::sqrt(alloc.macro_power[k]) * macro_symbols[k];

    HybridTxFrame frame;
    frame.x_macro = e0 * sum;
    frame.x_femto.resize(femto_symbols.size());
    for (std::size_t k = 0; k < femto_symbols.size(); ++k) {
        const int L = static_cast<int>(femto_symbols[k].size());
        if (L + 1 > basis.T)
            throw DimensionMismatchError("transmit: more groups than basis");
        for (int l = 0; l < L; ++l) {
            const Vector& u = femto_symbols[k][l];
            if (u.size() != N)
                throw DimensionMismatchError("transmit: femto block size");
            frame.x_femto[k].push_back(std::sqrt(alloc.femto_power) *
                                       (expander(basis.v[l + 1], N) * u));
        }
    }
    return frame;
}

Vector macro_receive_project(const Vector& y, const PrecodingBasis& basis,
                             int N) {
    return femto_receive_project(y, basis, 0, N);
}

Vector femto_receive_project(const Vector& y, const PrecodingBasis& basis,
                             int group, int N) {
    if (group < 0 || group >= basis.T)
        throw InvalidParameterError("project: group outside basis");
    if (y.size() != static_cast<Eigen::Index>(basis.T) * N)
        throw DimensionMismatchError("project: y is not a T*N supersymbol");
    const Matrix p = expander(basis.v[group], N).transpose();
    return p * y;
}

SicResult sic_decode_macro(const std::vector<Vector>& projected,
                           const NomaPowerAllocation& alloc,
                           const std::vector<Matrix>& own_channel,
                           const std::vector<double>& gamma) {
    const int K = static_cast<int>(projected.size());
    if (own_channel.size() != projected.size() ||
        gamma.size() != projected.size() ||
        alloc.macro_power.size() != projected.size())
        throw DimensionMismatchError("sic: per-user array mismatch");

    const std::vector<int> order = closeness_order(gamma);
    // position[k]: 0 = closest. Receiver k cancels exactly the users behind
    // it in this ordering (they carry more power).
    std::vector<int> position(K);
    for (int p = 0; p < K; ++p) position[order[p]] = p;

    SicResult res;
    res.estimates.assign(K, std::vector<Vector>(K));
    for (int k = 0; k < K; ++k) {
        Vector residual = projected[k];
        const double g = std::sqrt(gamma[k]);
        // Farthest first, down to just behind ourselves.
        for (int p = K - 1; p > position[k]; --p) {
            const int j = order[p];
            const Matrix coeff =
                g * std::sqrt(alloc.macro_power[j]) * own_channel[k];
            const Vector est = qpsk::ml_detect(residual, coeff);
            res.estimates[k][j] = est;
            residual -= coeff * est;
        }
        const Matrix coeff =
            g * std::sqrt(alloc.macro_power[k]) * own_channel[k];
        res.estimates[k][k] = qpsk::ml_detect(residual, coeff);
    }
    return res;
}

double interference_plus_noise(int k, const NomaPowerAllocation& alloc,
                               const std::vector<double>& gamma,
                               const Matrix& h_k, double noise_var) {
    if (k < 0 || k >= static_cast<int>(gamma.size()))
        throw InvalidParameterError("interference_plus_noise: bad user index");
    const std::vector<int> order = closeness_order(gamma);
    std::vector<int> position(gamma.size());
    for (std::size_t p = 0; p < order.size(); ++p) position[order[p]] = int(p);

    // Per-unit-power gain of a co-channel signal through a_k's own receiver:
    // average over the N receive dimensions.
    const double mean_gain =
        gamma[k] * h_k.squaredNorm() / static_cast<double>(h_k.rows());
    double s = noise_var;
    for (std::size_t j = 0; j < gamma.size(); ++j)
        if (position[j] < position[k])
            s += alloc.macro_power[j] * mean_gain;
    return s;
}

HybridRates hybrid_rate(const Topology& topo, const PowerConfig& power,
                        double noise_var, int draws, std::uint64_t seed) {
    topo.validate();
    if (topo.M_r != topo.N)
        throw UnsupportedTopologyError(
            "hybrid: femto receivers must have N antennas");
    if (draws < 1) throw InvalidParameterError("hybrid_rate: draws >= 1");
    if (!(noise_var > 0.0))
        throw InvalidParameterError("hybrid_rate: noise variance > 0");

    const int T = topo.hybrid_slots();
    const NomaPowerAllocation alloc = allocate_noma_powers(topo, power);

    HybridRates rates;
    rates.macro.assign(topo.K, 0.0);
    rates.femto.assign(topo.K, std::vector<double>(topo.L, 0.0));

    std::vector<double> gammas(topo.K);
    const Matrix eye = Matrix::Identity(topo.N, topo.N);
    for (int i = 0; i < draws; ++i) {
        const ChannelSet cs =
            draw_channels(topo, derive_seed(seed, {static_cast<std::uint64_t>(i)}));
        for (int k = 0; k < topo.K; ++k) gammas[k] = cs.macro_direct[k].gamma;
        for (int k = 0; k < topo.K; ++k) {
            const Matrix& h = cs.macro_direct[k].h;
            const double s = interference_plus_noise(k, alloc, gammas, h,
                                                     noise_var);
            const double coef = alloc.macro_power[k] * gammas[k] / s;
            rates.macro[k] += linalg::log_det_hermitian(
                                  eye + coef * (h * h.adjoint())) /
                              T;
            for (int l = 0; l < topo.L; ++l) {
                const Link& f = cs.femto_direct[k][l];
                const double cf = alloc.femto_power * f.gamma / noise_var;
                rates.femto[k][l] +=
                    linalg::log_det_hermitian(eye +
                                              cf * (f.h * f.h.adjoint())) /
                    T;
            }
        }
    }
    for (double& r : rates.macro) r /= draws;
    for (auto& row : rates.femto)
        for (double& r : row) r /= draws;
    return rates;
}

} // namespace hybrid
} // namespace hetnet

#include "hetnet/channel.hpp"

#include "hetnet/errors.hpp"
#include "hetnet/rng.hpp"

namespace hetnet {

namespace {

// Stream tags keep the per-link sub-seeds distinct. Values are arbitrary but
// frozen: changing them changes every seeded result.
enum LinkTag : std::uint64_t {
    kMacroDirect = 1,
    kFemtoDirect = 2,
    kMacroToFemto = 3,
    kFemtoToMacro = 4,
    kFemtoCross = 5,
};

Matrix draw_matrix(int rows, int cols, std::uint64_t seed) {
    Xoshiro256pp rng(seed);
    Matrix h(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) h(i, j) = rng.cgaussian();
    return h;
}

} // namespace

ChannelSet draw_channels(const Topology& topo, std::uint64_t seed) {
    topo.validate();
    const int K = topo.K, L = topo.L, N = topo.N, M = topo.M_r;
    const double n = topo.path_loss_exponent;

    ChannelSet cs;
    cs.macro_direct.resize(K);
    cs.femto_direct.resize(K);
    cs.macro_to_femto.resize(K);
    cs.femto_to_macro.resize(K);
    cs.femto_cross.resize(K);

    for (int k = 0; k < K; ++k) {
        const auto uk = static_cast<std::uint64_t>(k);
        cs.macro_direct[k] = {
            draw_matrix(N, N, derive_seed(seed, {kMacroDirect, uk})),
            path_gain(topo.macro_user_km[k], n)};

        cs.femto_direct[k].resize(L);
        cs.macro_to_femto[k].resize(L);
        cs.femto_to_macro[k].resize(L);
        cs.femto_cross[k].resize(L);
        for (int l = 0; l < L; ++l) {
            const auto ul = static_cast<std::uint64_t>(l);
            cs.femto_direct[k][l] = {
                draw_matrix(M, N, derive_seed(seed, {kFemtoDirect, uk, ul})),
                path_gain(topo.femto_user_km[k][l], n)};
            cs.macro_to_femto[k][l] = {
                draw_matrix(M, N, derive_seed(seed, {kMacroToFemto, uk, ul})),
                path_gain(topo.macro_to_femto_km[k][l], n)};
            cs.femto_to_macro[k][l] = {
                draw_matrix(N, N, derive_seed(seed, {kFemtoToMacro, uk, ul})),
                path_gain(topo.femto_to_macro_km[k][l], n)};
            cs.femto_cross[k][l].resize(L);
            for (int j = 0; j < L; ++j) {
                if (j == l) continue;
                cs.femto_cross[k][l][j] = {
                    draw_matrix(
                        M, N,
                        derive_seed(seed, {kFemtoCross, uk, ul,
                                           static_cast<std::uint64_t>(j)})),
                    path_gain(topo.femto_cross_km, n)};
            }
        }
    }
    return cs;
}

Matrix lift_channel(const Matrix& h, double gamma, int T) {
    if (T < 1) throw InvalidParameterError("lift_channel: T must be >= 1");
    if (!(gamma > 0.0))
        throw InvalidParameterError("lift_channel: gamma must be positive");
    return std::sqrt(gamma) *
           linalg::kron(Matrix(Matrix::Identity(T, T)), h);
}

} // namespace hetnet

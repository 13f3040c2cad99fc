#include "hetnet/blind_ia.hpp"

#include "hetnet/errors.hpp"
#include "hetnet/rng.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>

namespace hetnet {
namespace blindia {

namespace {

constexpr double kGolden = 0.6180339887498949;

int exclusive_slot(int k) { return k + 1; }

// Flip sign so the last nonzero entry is positive; keeps the worked-example
// orientation of the slot combiners (schedule-space vectors are real).
RealVector orient(RealVector v) {
    for (Eigen::Index i = v.size(); i-- > 0;) {
        if (v(i) != 0.0) {
            if (v(i) < 0.0) v = -v;
            break;
        }
    }
    return v;
}

RealVector macro_schedule(int T, int k, double c) {
    RealVector v = RealVector::Zero(T);
    v(0) = c;
    v(exclusive_slot(k)) = std::sqrt(1.0 - c * c);
    return v;
}

void check_c(double c) {
    if (!(std::abs(c) > 0.0) || std::abs(c) >= 1.0)
        throw InvalidParameterError(
            "blind ia: schedule weight c must satisfy 0 < |c| < 1");
}

// Slot combiner of macro user k that ignores the exclusive slot and every
// other user's schedule: unique up to sign for T = K+1.
RealVector macro_w1(const Topology& topo, double c, int k) {
    const int T = topo.blind_slots();
    const int ex = exclusive_slot(k);
    std::vector<RealVector> others;
    for (int i = 0; i < topo.K; ++i) {
        if (i == k) continue;
        RealVector v = macro_schedule(T, i, c);
        RealVector reduced(T - 1);
        for (int t = 0, r = 0; t < T; ++t)
            if (t != ex) reduced(r++) = v(t);
        others.push_back(reduced);
    }
    RealMatrix comp = linalg::orthonormal_complement(others, T - 1);
    RealVector w = RealVector::Zero(T);
    for (int t = 0, r = 0; t < T; ++t)
        if (t != ex) w(t) = comp(0, r++);
    return orient(w);
}

// Combiner orthogonal to every macro schedule (femtocell side).
RealVector femto_w(const Topology& topo, double c) {
    const int T = topo.blind_slots();
    std::vector<RealVector> vs;
    for (int i = 0; i < topo.K; ++i) vs.push_back(macro_schedule(T, i, c));
    RealMatrix comp = linalg::orthonormal_complement(vs, T);
    return orient(comp.row(0).transpose());
}

// First `cols` columns of I_N.
RealMatrix eye_cols(int N, int cols) {
    return RealMatrix::Identity(N, N).leftCols(cols);
}

// Sum of the first `cols` columns of I_N, as a single column.
RealMatrix eye_colsum(int N, int cols) {
    RealMatrix r = RealMatrix::Zero(N, 1);
    for (int i = 0; i < cols; ++i) r(i, 0) = 1.0;
    return r;
}

RealMatrix last_col(int N) {
    RealMatrix r = RealMatrix::Zero(N, 1);
    r(N - 1, 0) = 1.0;
    return r;
}

// Rows [first, first+count) of the messages x messages identity.
RealMatrix id_rows(int messages, int first, int count) {
    return RealMatrix::Identity(messages, messages).middleRows(first, count);
}

Matrix assemble_beamformer(const std::vector<FemtoPiece>& pieces, int T, int N,
                           double scale) {
    if (pieces.empty()) throw InvalidParameterError("beamformer: no pieces");
    const Eigen::Index msgs = pieces[0].rows.cols();
    Matrix v = Matrix::Zero(static_cast<Eigen::Index>(T) * N, msgs);
    for (const auto& p : pieces) {
        const RealMatrix block = p.ant * p.rows; // N x msgs
        for (int t = 0; t < T; ++t)
            if (p.xi(t) != 0.0)
                v.block(static_cast<Eigen::Index>(t) * N, 0, N, msgs) +=
                    (p.xi(t) * block).cast<Complex>();
    }
    return scale * v;
}

// D = sum_i (w . xi_i) * rows_i, the schedule factor of a femto effective
// channel whose pieces share one antenna matrix.
RealMatrix schedule_factor_shared_antenna(const FemtoBeamformer& beam,
                                          const RealVector& w) {
    RealMatrix d = RealMatrix::Zero(beam.pieces[0].rows.rows(),
                                    beam.pieces[0].rows.cols());
    for (const auto& p : beam.pieces) d += w.dot(p.xi) * p.rows;
    return d;
}

// D = sum_i (w . xi_i) * ant_i * rows_i for L=1, where the last piece rides
// a different antenna column.
RealMatrix schedule_factor_L1(const FemtoBeamformer& beam,
                              const RealVector& w) {
    const int N = static_cast<int>(beam.pieces[0].ant.rows());
    RealMatrix d = RealMatrix::Zero(N, beam.messages);
    for (const auto& p : beam.pieces) d += w.dot(p.xi) * (p.ant * p.rows);
    return d;
}

double golden_refine(double lo, double hi,
                     const std::function<double(double)>& f) {
    double a = lo, b = hi;
    double x1 = b - kGolden * (b - a);
    double x2 = a + kGolden * (b - a);
    double f1 = f(x1), f2 = f(x2);
    for (int it = 0; it < 80; ++it) {
        if (f1 < f2) {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + kGolden * (b - a);
            f2 = f(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - kGolden * (b - a);
            f1 = f(x1);
        }
    }
    return 0.5 * (a + b);
}

} // namespace

std::vector<MacroBeamformer> build_macro_beamformers(const Topology& topo,
                                                     double c,
                                                     double macro_watts) {
    topo.validate();
    check_c(c);
    if (!(macro_watts > 0.0))
        throw InvalidParameterError("blind ia: macro power must be positive");
    const int T = topo.blind_slots();
    const double a = std::sqrt(macro_watts / (topo.K * topo.N));

    std::vector<MacroBeamformer> out;
    out.reserve(topo.K);
    for (int k = 0; k < topo.K; ++k) {
        MacroBeamformer mb;
        mb.schedule = macro_schedule(T, k, c);
        mb.amplitude = a;
        mb.matrix =
            (a / std::sqrt(double(topo.N))) *
            linalg::kron(RealMatrix(mb.schedule),
                         RealMatrix(RealMatrix::Identity(topo.N, topo.N)))
                .cast<Complex>();
        out.push_back(std::move(mb));
    }
    return out;
}

std::vector<FemtoBeamformer> build_femto_beamformers_L1(const Topology& topo,
                                                        double d,
                                                        double femto_watts) {
    topo.validate();
    if (topo.L != 1)
        throw InvalidParameterError("femto L1 beamformers: topology has L != 1");
    if (topo.M_r != topo.N && topo.M_r != topo.N - 1)
        throw UnsupportedTopologyError(
            "femto L1 beamformers: M_r must be N or N-1");
    const int T = topo.blind_slots();
    const int N = topo.N;
    // Messages per wideband slot: one per receive dimension kept free.
    const int per_slot = topo.M_r == topo.N ? topo.N - 1 : 1;
    const int messages = (topo.K - 1) * per_slot + 1;

    const double excl = (T - 1) * (topo.M_r - 1);
    if (d == 0.0 ||
        (excl > 0.0 && std::abs(std::abs(d) - 1.0 / std::sqrt(excl)) < 1e-12))
        throw InvalidParameterError("femto L1 beamformers: excluded d value");
    const double beta_sq = 1.0 - excl * d * d;
    if (!(beta_sq > 0.0))
        throw InvalidParameterError(
            "femto L1 beamformers: (T-1)(M_r-1)d^2 must stay below 1");
    const double beta = std::sqrt(beta_sq);

    const RealMatrix wide_ant =
        topo.M_r == topo.N ? eye_cols(N, N - 1) : eye_colsum(N, topo.M_r);
    const double b = std::sqrt(double(N) * femto_watts / messages);

    std::vector<FemtoBeamformer> out;
    out.reserve(topo.K);
    for (int k = 0; k < topo.K; ++k) {
        FemtoBeamformer fb;
        fb.group = 1;
        fb.messages = messages;
        fb.amplitude = b;
        const int ex = exclusive_slot(k);
        // Wideband pieces: every slot but the exclusive one. Non-broadcast
        // slots carry fresh message blocks in slot order; the broadcast slot
        // repeats the first block (the repetition is what the receiver's
        // combiner w needs to collapse the macro broadcast).
        int block = 0;
        for (int t = 0; t < T; ++t) {
            if (t == ex) continue;
            FemtoPiece p;
            p.xi = RealVector::Zero(T);
            p.xi(t) = d;
            p.ant = wide_ant;
            const int use = t == 0 ? 0 : block++;
            p.rows = id_rows(messages, use * per_slot, per_slot);
            fb.pieces.push_back(std::move(p));
        }
        // Exclusive-slot piece: last antenna, last message row, weight beta.
        FemtoPiece last;
        last.xi = RealVector::Zero(T);
        last.xi(ex) = beta;
        last.ant = last_col(N);
        last.rows = id_rows(messages, messages - 1, 1);
        fb.pieces.push_back(std::move(last));

        fb.matrix = assemble_beamformer(fb.pieces, T, N,
                                        b / std::sqrt(double(N)));
        out.push_back(std::move(fb));
    }
    return out;
}

std::vector<std::vector<FemtoBeamformer>> build_femto_beamformers_general(
    const Topology& topo, double d, double femto_watts) {
    topo.validate();
    if (topo.L < 2 || topo.L > 3 || topo.L > topo.N)
        throw UnsupportedTopologyError(
            "femto beamformers: need 2 <= L <= 3 and L <= N");
    if (topo.M_r != topo.N)
        throw UnsupportedTopologyError(
            "femto beamformers: general-L receivers use N antennas");
    const int T = topo.blind_slots();
    const int N = topo.N;
    const int wide = N - topo.L + 1; // antennas driven by a wideband femto
    const int m1 = (topo.K - 1) * wide;

    if (d == 0.0 ||
        std::abs(std::abs(d) - 1.0 / std::sqrt(double((T - 2) * wide))) < 1e-12)
        throw InvalidParameterError("femto beamformers: excluded d value");
    const double beta_sq = 1.0 - (T - 2) * d * d;
    if (!(beta_sq > 0.0))
        throw InvalidParameterError(
            "femto beamformers: (T-2)d^2 must stay below 1");
    const double beta = std::sqrt(beta_sq);

    const double b1 = std::sqrt(double(N) * femto_watts / m1);
    const double b2 = std::sqrt(double(N) * femto_watts);

    std::vector<std::vector<FemtoBeamformer>> out(topo.K);
    for (int k = 0; k < topo.K; ++k) {
        const int ex = exclusive_slot(k);
        for (int l = 0; l < topo.L; ++l) {
            FemtoBeamformer fb;
            if (l == 1) {
                // Exclusive-slot group: one message on the last antenna in
                // the paired user's exclusive slot.
                fb.group = 2;
                fb.messages = 1;
                fb.amplitude = b2;
                FemtoPiece p;
                p.xi = RealVector::Zero(T);
                p.xi(ex) = 1.0;
                p.ant = last_col(N);
                p.rows = RealMatrix::Identity(1, 1);
                fb.pieces.push_back(std::move(p));
            } else {
                // Wideband group: first N-L+1 antennas, silent on the
                // exclusive slot, beta-weighted duplicate on the broadcast.
                fb.group = 1;
                fb.messages = m1;
                fb.amplitude = b1;
                int block = 0;
                for (int t = 0; t < T; ++t) {
                    if (t == ex) continue;
                    FemtoPiece p;
                    p.xi = RealVector::Zero(T);
                    p.xi(t) = t == 0 ? beta : d;
                    p.ant = eye_cols(N, wide);
                    const int use = t == 0 ? 0 : block++;
                    p.rows = id_rows(m1, use * wide, wide);
                    fb.pieces.push_back(std::move(p));
                }
            }
            fb.matrix = assemble_beamformer(
                fb.pieces, T, N, fb.amplitude / std::sqrt(double(N)));
            out[k].push_back(std::move(fb));
        }
    }
    return out;
}

MacroProjection build_macro_projection(const Topology& topo, double c, int k,
                                       const ChannelSet& channels) {
    topo.validate();
    check_c(c);
    if (k < 0 || k >= topo.K)
        throw InvalidParameterError("macro projection: bad user index");
    const int T = topo.blind_slots();
    const int N = topo.N;

    // Columns the wideband femto pieces of this cluster arrive on (killed by
    // row N of h_tilde) and the exclusive-slot columns (killed by the rest).
    std::vector<Vector> wide_cols, excl_cols;
    if (topo.L == 1) {
        const Matrix& h = channels.femto_to_macro[k][0].h;
        const RealMatrix wide_ant = topo.M_r == topo.N
                                        ? eye_cols(N, N - 1)
                                        : eye_colsum(N, topo.M_r);
        const Matrix img = h * wide_ant.cast<Complex>();
        for (Eigen::Index cidx = 0; cidx < img.cols(); ++cidx)
            wide_cols.push_back(img.col(cidx).transpose());
        excl_cols.push_back(
            (h * last_col(N).cast<Complex>()).col(0).transpose());
    } else {
        const int wide = N - topo.L + 1;
        for (int l = 0; l < topo.L; ++l) {
            const Matrix& h = channels.femto_to_macro[k][l].h;
            if (l == 1) {
                excl_cols.push_back(
                    (h * last_col(N).cast<Complex>()).col(0).transpose());
            } else {
                const Matrix img = h * eye_cols(N, wide).cast<Complex>();
                for (Eigen::Index cidx = 0; cidx < img.cols(); ++cidx)
                    wide_cols.push_back(img.col(cidx).transpose());
            }
        }
    }
    if (static_cast<int>(wide_cols.size()) > N - 1)
        throw UnsupportedTopologyError(
            "macro projection: wideband femto columns exceed the null space");

    MacroProjection proj;
    proj.w2 = RealVector::Zero(T);
    proj.w2(exclusive_slot(k)) = 1.0;
    proj.w1 = macro_w1(topo, c, k);

    proj.h_tilde = Matrix(N, N);
    Matrix top = linalg::orthonormal_complement(excl_cols, N);
    if (top.rows() < N - 1)
        throw DegenerateChannelError(
            "macro projection: exclusive-slot column fills the space");
    proj.h_tilde.topRows(N - 1) = top.topRows(N - 1);
    Matrix bottom = linalg::orthonormal_complement(wide_cols, N);
    proj.h_tilde.row(N - 1) = bottom.row(0);

    // P = w1 kron (row-N selector * h_tilde) + w2 kron (top-rows selector).
    Matrix d1h = Matrix::Zero(N, N), d2h = Matrix::Zero(N, N);
    d1h.row(N - 1) = proj.h_tilde.row(N - 1);
    d2h.topRows(N - 1) = proj.h_tilde.topRows(N - 1);
    proj.P = linalg::kron(RealMatrix(proj.w1.transpose()).cast<Complex>(), d1h) +
             linalg::kron(RealMatrix(proj.w2.transpose()).cast<Complex>(), d2h);
    return proj;
}

FemtoProjection build_femto_projection_L1(const Topology& topo, double c,
                                          int k) {
    topo.validate();
    check_c(c);
    if (topo.L != 1)
        throw InvalidParameterError("femto L1 projection: topology has L != 1");
    if (k < 0 || k >= topo.K)
        throw InvalidParameterError("femto L1 projection: bad user index");
    const int per_slot = topo.M_r == topo.N ? topo.N - 1 : 1;
    const int messages = (topo.K - 1) * per_slot + 1;

    FemtoProjection proj;
    proj.w = femto_w(topo, c);
    proj.W = Matrix::Constant(messages, topo.M_r, Complex(1.0, 0.0));
    proj.P = linalg::kron(RealMatrix(proj.w.transpose()).cast<Complex>(),
                          proj.W);
    return proj;
}

FemtoProjection build_femto_projection_general(const Topology& topo, double c,
                                               int k, int l,
                                               const ChannelSet& channels) {
    topo.validate();
    check_c(c);
    if (topo.L < 2 || topo.L > 3 || topo.L > topo.N)
        throw UnsupportedTopologyError(
            "femto projection: need 2 <= L <= 3 and L <= N");
    if (k < 0 || k >= topo.K || l < 0 || l >= topo.L)
        throw InvalidParameterError("femto projection: bad indices");
    const int N = topo.N;
    const int wide = N - topo.L + 1;
    const int m1 = (topo.K - 1) * wide;

    FemtoProjection proj;
    proj.w = femto_w(topo, c);

    if (l != 1) {
        // Wideband receiver: null the exclusive-slot femto's column.
        if (m1 > N - 1)
            throw UnsupportedTopologyError(
                "femto projection: message count exceeds the null space");
        const Matrix& h = channels.femto_cross[k][l][1].h;
        std::vector<Vector> cols = {
            (h * last_col(N).cast<Complex>()).col(0).transpose()};
        Matrix comp = linalg::orthonormal_complement(cols, N);
        if (comp.rows() < m1)
            throw DegenerateChannelError(
                "femto projection: drawn channel leaves too small a null space");
        proj.W = comp.topRows(m1);
    } else {
        // Exclusive-slot receiver: null every wideband femto's columns.
        std::vector<Vector> cols;
        for (int j = 0; j < topo.L; ++j) {
            if (j == 1) continue;
            const Matrix img = channels.femto_cross[k][l][j].h *
                               eye_cols(N, wide).cast<Complex>();
            for (Eigen::Index cidx = 0; cidx < img.cols(); ++cidx)
                cols.push_back(img.col(cidx).transpose());
        }
        if (static_cast<int>(cols.size()) > N - 1)
            throw UnsupportedTopologyError(
                "femto projection: wideband columns exceed the null space");
        Matrix comp = linalg::orthonormal_complement(cols, N);
        proj.W = comp.topRows(1);
    }
    proj.P = linalg::kron(RealMatrix(proj.w.transpose()).cast<Complex>(),
                          proj.W);
    return proj;
}

Matrix check_factorization(const Matrix& p, const Matrix& lifted,
                           const Matrix& v, const Matrix& factored,
                           double tol) {
    const Matrix direct = p * lifted * v;
    if (direct.rows() != factored.rows() || direct.cols() != factored.cols())
        throw DimensionMismatchError("effective channel: factored shape");
    const double err = linalg::max_abs(direct - factored);
    if (err > tol * std::max(1.0, linalg::max_abs(factored)))
        throw FactorizationMismatchError(
            "effective channel: direct product and factored form disagree (" +
            std::to_string(err) + ")");
    return factored;
}

EffectiveChannel macro_effective_channel(const MacroProjection& proj,
                                         const MacroBeamformer& beam,
                                         const Link& link, int T) {
    const int N = static_cast<int>(link.h.rows());
    EffectiveChannel eff;
    eff.scale = beam.amplitude / std::sqrt(double(N));

    // Diagonal schedule factor: top rows pair with w2, row N with w1.
    RealVector diag = RealVector::Zero(N);
    const double top = proj.w2.dot(beam.schedule);
    for (int i = 0; i < N - 1; ++i) diag(i) = top;
    diag(N - 1) = proj.w1.dot(beam.schedule);
    eff.D = diag.cast<Complex>().asDiagonal();

    eff.K = std::sqrt(link.gamma) * (proj.h_tilde * link.h);
    eff.matrix = check_factorization(
        proj.P, lift_channel(link.h, link.gamma, T), beam.matrix,
        eff.scale * (eff.D * eff.K));
    return eff;
}

EffectiveChannel femto_effective_channel(const Topology& topo,
                                         const FemtoProjection& proj,
                                         const FemtoBeamformer& beam,
                                         const Link& link) {
    const int T = topo.blind_slots();
    EffectiveChannel eff;
    eff.scale = beam.amplitude / std::sqrt(double(topo.N));

    if (topo.L == 1) {
        // Pieces ride different antennas: fold antennas into the schedule
        // factor, keep K = W h.
        eff.K = std::sqrt(link.gamma) * (proj.W * link.h);
        eff.D = schedule_factor_L1(beam, proj.w).cast<Complex>();
        eff.matrix = check_factorization(
            proj.P, lift_channel(link.h, link.gamma, T), beam.matrix,
            eff.scale * (eff.K * eff.D));
    } else if (beam.group == 1) {
        const Matrix ant = beam.pieces[0].ant.cast<Complex>();
        eff.K = std::sqrt(link.gamma) * (proj.W * link.h * ant);
        eff.D = schedule_factor_shared_antenna(beam, proj.w).cast<Complex>();
        eff.matrix = check_factorization(
            proj.P, lift_channel(link.h, link.gamma, T), beam.matrix,
            eff.scale * (eff.K * eff.D));
    } else {
        const Matrix ant = beam.pieces[0].ant.cast<Complex>();
        eff.K = std::sqrt(link.gamma) * (proj.W * link.h * ant); // 1 x 1
        const double delta = proj.w.dot(beam.pieces[0].xi);
        eff.D = Complex(delta, 0.0) * Matrix::Identity(1, 1);
        eff.matrix = check_factorization(
            proj.P, lift_channel(link.h, link.gamma, T), beam.matrix,
            eff.scale * delta * eff.K);
    }
    return eff;
}

BlindRates blind_ia_rate(const Topology& topo, const PowerConfig& power,
                         double c, double d, double noise_var, int draws,
                         std::uint64_t seed) {
    topo.validate();
    if (draws < 1) throw InvalidParameterError("blind_ia_rate: draws >= 1");
    if (!(noise_var > 0.0))
        throw InvalidParameterError("blind_ia_rate: noise variance > 0");
    const int T = topo.blind_slots();

    const auto macros =
        build_macro_beamformers(topo, c, power.macrocell_watts);
    std::vector<std::vector<FemtoBeamformer>> femtos;
    if (topo.L == 1) {
        auto flat = build_femto_beamformers_L1(topo, d, power.femtocell_watts);
        femtos.resize(topo.K);
        for (int k = 0; k < topo.K; ++k) femtos[k] = {flat[k]};
    } else {
        femtos = build_femto_beamformers_general(topo, d,
                                                 power.femtocell_watts);
    }

    BlindRates rates;
    rates.macro.assign(topo.K, 0.0);
    rates.femto.assign(topo.K, std::vector<double>(topo.L, 0.0));

    for (int i = 0; i < draws; ++i) {
        const ChannelSet cs = draw_channels(
            topo, derive_seed(seed, {static_cast<std::uint64_t>(i)}));
        for (int k = 0; k < topo.K; ++k) {
            const auto mp = build_macro_projection(topo, c, k, cs);
            const auto meff = macro_effective_channel(mp, macros[k],
                                                      cs.macro_direct[k], T);
            const Matrix gram =
                Matrix::Identity(topo.N, topo.N) +
                (meff.matrix * meff.matrix.adjoint()) / noise_var;
            rates.macro[k] += linalg::log_det_hermitian(gram) / T;

            for (int l = 0; l < topo.L; ++l) {
                const FemtoProjection fp =
                    topo.L == 1
                        ? build_femto_projection_L1(topo, c, k)
                        : build_femto_projection_general(topo, c, k, l, cs);
                const auto feff = femto_effective_channel(
                    topo, fp, femtos[k][l], cs.femto_direct[k][l]);
                const Eigen::Index m = feff.matrix.rows();
                const Matrix g = Matrix::Identity(m, m) +
                                 (feff.matrix * feff.matrix.adjoint()) /
                                     noise_var;
                rates.femto[k][l] += linalg::log_det_hermitian(g) / T;
            }
        }
    }
    for (double& r : rates.macro) r /= draws;
    for (auto& row : rates.femto)
        for (double& r : row) r /= draws;
    return rates;
}

ScheduleParams optimize_schedule_params(const Topology& topo) {
    topo.validate();
    if (topo.L != 1)
        throw InvalidParameterError(
            "optimize_schedule_params: L=1 topologies only");
    const int T = topo.blind_slots();
    const int N = topo.N;

    // det(D D^H) of the macro schedule factor, averaged over users.
    auto macro_objective = [&](double c) -> double {
        if (!(c > 0.0) || c >= 1.0) return -1.0;
        double acc = 0.0;
        for (int k = 0; k < topo.K; ++k) {
            const RealVector v = macro_schedule(T, k, c);
            const RealVector w1 = macro_w1(topo, c, k);
            RealVector w2 = RealVector::Zero(T);
            w2(exclusive_slot(k)) = 1.0;
            double det = 1.0;
            const double top = w2.dot(v);
            for (int i = 0; i < N - 1; ++i) det *= top * top;
            const double bot = w1.dot(v);
            det *= bot * bot;
            acc += det;
        }
        return acc / topo.K;
    };

    const double excl = (T - 1) * (topo.M_r - 1);
    const double d_hi = excl > 0.0 ? 1.0 / std::sqrt(excl) : 1.0;

    double best_c = 0.5, best_cv = -1.0;
    for (int i = 1; i < 1000; ++i) {
        const double c = i * 1e-3;
        const double val = macro_objective(c);
        if (val > best_cv) {
            best_cv = val;
            best_c = c;
        }
    }
    const double c_star = golden_refine(std::max(1e-6, best_c - 1e-3),
                                        std::min(1.0 - 1e-6, best_c + 1e-3),
                                        macro_objective);

    auto femto_objective = [&](double d) -> double {
        if (!(d > 0.0) || d >= d_hi) return -1.0;
        if (excl > 0.0 &&
            std::abs(std::abs(d) - 1.0 / std::sqrt(excl)) < 1e-12)
            return -1.0;
        const auto beams = build_femto_beamformers_L1(topo, d, 1.0);
        double acc = 0.0;
        for (int k = 0; k < topo.K; ++k) {
            const auto fp = build_femto_projection_L1(topo, c_star, k);
            const RealMatrix dm = schedule_factor_L1(beams[k], fp.w);
            acc += (dm * dm.transpose()).determinant();
        }
        return acc / topo.K;
    };

    double best_d = 0.5 * d_hi, best_dv = -1.0;
    for (int i = 1; i < 1000; ++i) {
        const double d = i * 1e-3 * d_hi;
        const double val = femto_objective(d);
        if (val > best_dv) {
            best_dv = val;
            best_d = d;
        }
    }
    const double d_star =
        golden_refine(std::max(1e-6, best_d - 1e-3 * d_hi),
                      std::min(d_hi - 1e-6, best_d + 1e-3 * d_hi),
                      femto_objective);

    ScheduleParams out;
    out.c = c_star;
    out.d = d_star;
    return out;
}

} // namespace blindia
} // namespace hetnet

#include "hetnet/linalg.hpp"

#include "hetnet/errors.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <cmath>

namespace hetnet {
namespace linalg {

Matrix kron(const Matrix& a, const Matrix& b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) =
                a(i, j) * b;
    return out;
}

RealMatrix kron(const RealMatrix& a, const RealMatrix& b) {
    RealMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) =
                a(i, j) * b;
    return out;
}

Vector canonical_phase(const Vector& v) {
    Eigen::Index imax = 0;
    double best = 0.0;
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        const double m = std::abs(v(i));
        if (m > best) {
            best = m;
            imax = i;
        }
    }
    if (best == 0.0) return v;
    const Complex phase = std::abs(v(imax)) / v(imax);
    return phase * v;
}

Matrix orthonormal_complement(const std::vector<Vector>& vectors,
                              Eigen::Index dim, double rank_tol) {
    if (dim <= 0) throw InvalidParameterError("complement: dim must be >= 1");
    Matrix a(static_cast<Eigen::Index>(vectors.size()), dim);
    for (std::size_t r = 0; r < vectors.size(); ++r) {
        if (vectors[r].size() != dim)
            throw DimensionMismatchError(
                "complement: input vector length != dim");
        a.row(static_cast<Eigen::Index>(r)) = vectors[r].transpose();
    }

    if (vectors.empty()) return Matrix::Identity(dim, dim);

    // Null space of a: right singular vectors for (numerically) zero singular
    // values satisfy a*z = 0 exactly in the bilinear sense we need, and the
    // SVD hands them back Hermitian-orthonormal.
    Eigen::JacobiSVD<Matrix> svd(a, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    const double scale = sv.size() > 0 ? sv(0) : 0.0;
    const double cut = rank_tol * std::max(1.0, scale);
    Eigen::Index rank = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i)
        if (sv(i) > cut) ++rank;

    if (rank >= dim)
        throw FullRankError("complement: input vectors span the full space");

    Matrix out(dim - rank, dim);
    for (Eigen::Index i = rank; i < dim; ++i) {
        // Row = z^T (not z^H): preserves a*z = 0 as row*v = 0 for each input.
        Vector z = svd.matrixV().col(i);
        out.row(i - rank) = canonical_phase(z).transpose();
    }
    return out;
}

RealMatrix orthonormal_complement(const std::vector<RealVector>& vectors,
                                  Eigen::Index dim, double rank_tol) {
    std::vector<Vector> cv;
    cv.reserve(vectors.size());
    for (const auto& v : vectors) cv.push_back(v.cast<Complex>());
    Matrix c = orthonormal_complement(cv, dim, rank_tol);
    // A real input matrix has a real null space; the canonical phase of a
    // real-direction complex vector is +-1, so the imaginary part is zero.
    return c.real();
}

double log_det_hermitian(const Matrix& m, double hermitian_tol) {
    if (m.rows() != m.cols())
        throw DimensionMismatchError("log_det_hermitian: matrix not square");
    const double scale = std::max(1.0, max_abs(m));
    if (max_abs(m - m.adjoint()) > hermitian_tol * scale)
        throw NotPositiveDefiniteError("log_det_hermitian: not Hermitian");

    Eigen::LLT<Matrix> llt(m);
    if (llt.info() != Eigen::Success)
        throw NotPositiveDefiniteError(
            "log_det_hermitian: Cholesky failed, matrix not positive definite");

    double acc = 0.0;
    const auto& l = llt.matrixLLT();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        const double d = l(i, i).real();
        if (!(d > 0.0))
            throw NotPositiveDefiniteError(
                "log_det_hermitian: nonpositive pivot");
        acc += std::log(d);
    }
    return 2.0 * acc;
}

double max_abs(const Matrix& m) {
    if (m.size() == 0) return 0.0;
    return m.cwiseAbs().maxCoeff();
}

} // namespace linalg
} // namespace hetnet

#ifndef HETNET_LINALG_HPP
#define HETNET_LINALG_HPP

#include <Eigen/Dense>
#include <complex>
#include <vector>

// Small dense complex linear-algebra layer. Everything downstream (precoders,
// projections, rate evaluation) is phrased in terms of these few operations.
// Eigen does the decompositions; the contracts here pin down the conventions
// the interference-alignment constructions rely on.

namespace hetnet {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

namespace linalg {

// Kronecker product, row-major block convention: result block (i,j) = a(i,j)*b.
Matrix kron(const Matrix& a, const Matrix& b);
RealMatrix kron(const RealMatrix& a, const RealMatrix& b);

// Orthonormal complement of a set of row vectors.
//
// Returns an (dim - rank) x dim matrix X whose rows satisfy
//   (1) X * v = 0 for every input vector v  -- plain bilinear product,
//       no conjugation, because the nulling identities downstream are
//       bilinear matrix products;
//   (2) X * X^H = I (rows orthonormal in the Hermitian sense).
//
// Rows are phase-canonicalized (entry of largest magnitude made positive
// real) so repeated runs produce identical matrices. Rank decisions use
// rank_tol. Throws FullRankError when the inputs already span the space.
Matrix orthonormal_complement(const std::vector<Vector>& vectors,
                              Eigen::Index dim, double rank_tol = 1e-10);

// Real-input convenience overload; the result is real (null space of a real
// matrix), returned as a real matrix.
RealMatrix orthonormal_complement(const std::vector<RealVector>& vectors,
                                  Eigen::Index dim, double rank_tol = 1e-10);

// log(det(m)) for Hermitian positive definite m, via Cholesky.
// Throws NotPositiveDefiniteError otherwise (includes non-Hermitian input).
double log_det_hermitian(const Matrix& m, double hermitian_tol = 1e-10);

// Scale a vector by a unit phase so its largest-magnitude entry is positive
// real. Identity for the zero vector.
Vector canonical_phase(const Vector& v);

// Largest |entry| of a matrix; zero-sized matrices give 0.
double max_abs(const Matrix& m);

} // namespace linalg
} // namespace hetnet

#endif

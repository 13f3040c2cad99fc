#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hetnet/errors.hpp"
#include "hetnet/linalg.hpp"
#include "hetnet/rng.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <vector>

using namespace hetnet;

namespace {

Matrix random_matrix(Xoshiro256pp& rng, int rows, int cols) {
    Matrix m(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) m(i, j) = rng.cgaussian();
    return m;
}

RealMatrix random_real_matrix(Xoshiro256pp& rng, int rows, int cols) {
    RealMatrix m(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) m(i, j) = rng.gaussian();
    return m;
}

Vector random_vector(Xoshiro256pp& rng, int n) {
    Vector v(n);
    for (int i = 0; i < n; ++i) v(i) = rng.cgaussian();
    return v;
}

} // namespace

TEST_CASE("kron matches the entrywise definition") {
    Xoshiro256pp rng(11);
    const Matrix a = random_matrix(rng, 3, 2);
    const Matrix b = random_matrix(rng, 2, 4);
    const Matrix k = linalg::kron(a, b);
    REQUIRE(k.rows() == 6);
    REQUIRE(k.cols() == 8);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 2; ++j)
            for (int p = 0; p < 2; ++p)
                for (int q = 0; q < 4; ++q)
                    CHECK(std::abs(k(i * 2 + p, j * 4 + q) - a(i, j) * b(p, q)) == 0.0);

    const RealMatrix ra = random_real_matrix(rng, 2, 3);
    const RealMatrix rb = random_real_matrix(rng, 3, 2);
    const RealMatrix rk = linalg::kron(ra, rb);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 3; ++j)
            for (int p = 0; p < 3; ++p)
                for (int q = 0; q < 2; ++q)
                    CHECK(rk(i * 3 + p, j * 2 + q) == ra(i, j) * rb(p, q));
}

TEST_CASE("kron mixed-product identity") {
    Xoshiro256pp rng(12);
    const Matrix a = random_matrix(rng, 3, 3);
    const Matrix b = random_matrix(rng, 2, 2);
    const Matrix c = random_matrix(rng, 3, 2);
    const Matrix d = random_matrix(rng, 2, 4);
    const Matrix lhs = linalg::kron(a, b) * linalg::kron(c, d);
    const Matrix rhs = linalg::kron(Matrix(a * c), Matrix(b * d));
    CHECK(linalg::max_abs(lhs - rhs) < 1e-12);
}

TEST_CASE("orthonormal complement: bilinear nulling and Hermitian orthonormal rows") {
    Xoshiro256pp rng(13);
    for (int trial = 0; trial < 50; ++trial) {
        const int dim = 2 + static_cast<int>(rng.next() % 5); // 2..6
        const int n_vec = 1 + static_cast<int>(rng.next() % (dim - 1));
        std::vector<Vector> vs;
        for (int i = 0; i < n_vec; ++i) vs.push_back(random_vector(rng, dim));

        const Matrix x = linalg::orthonormal_complement(vs, dim);
        REQUIRE(x.rows() == dim - n_vec); // random vectors are independent a.s.
        REQUIRE(x.cols() == dim);

        // Plain (unconjugated) product with every input vanishes.
        for (const auto& v : vs) CHECK(linalg::max_abs(x * v) < 1e-10);
        // Rows are orthonormal in the Hermitian sense.
        const Matrix gram = x * x.adjoint();
        CHECK(linalg::max_abs(gram - Matrix::Identity(x.rows(), x.rows())) < 1e-10);
        // Phase canonicalization: the largest entry of each row is positive real.
        for (int r = 0; r < x.rows(); ++r) {
            int imax = 0;
            for (int c = 1; c < dim; ++c)
                if (std::abs(x(r, c)) > std::abs(x(r, imax))) imax = c;
            CHECK(x(r, imax).imag() == doctest::Approx(0.0).epsilon(1e-12));
            CHECK(x(r, imax).real() > 0.0);
        }
    }
}

TEST_CASE("orthonormal complement: determinism and empty input") {
    Xoshiro256pp rng(14);
    std::vector<Vector> vs{random_vector(rng, 4), random_vector(rng, 4)};
    const Matrix x1 = linalg::orthonormal_complement(vs, 4);
    const Matrix x2 = linalg::orthonormal_complement(vs, 4);
    CHECK(linalg::max_abs(x1 - x2) == 0.0);

    const Matrix full = linalg::orthonormal_complement(std::vector<Vector>{}, 3);
    CHECK(linalg::max_abs(full - Matrix::Identity(3, 3)) == 0.0);
}

TEST_CASE("orthonormal complement: full-span input throws") {
    Xoshiro256pp rng(15);
    std::vector<Vector> vs{random_vector(rng, 2), random_vector(rng, 2)};
    CHECK_THROWS_AS(linalg::orthonormal_complement(vs, 2), FullRankError);

    // Dependent vectors do not inflate the rank.
    std::vector<Vector> dep{vs[0], Vector(2.0 * vs[0])};
    const Matrix x = linalg::orthonormal_complement(dep, 2);
    CHECK(x.rows() == 1);
    CHECK(linalg::max_abs(x * vs[0]) < 1e-10);
}

TEST_CASE("orthonormal complement: dimension mismatch throws") {
    Xoshiro256pp rng(16);
    std::vector<Vector> vs{random_vector(rng, 3)};
    CHECK_THROWS_AS(linalg::orthonormal_complement(vs, 4), DimensionMismatchError);
}

TEST_CASE("real orthonormal complement stays real and nulls inputs") {
    Xoshiro256pp rng(17);
    for (int trial = 0; trial < 20; ++trial) {
        const int dim = 3 + static_cast<int>(rng.next() % 3);
        std::vector<RealVector> vs;
        for (int i = 0; i < dim - 1; ++i) {
            RealVector v(dim);
            for (int j = 0; j < dim; ++j) v(j) = rng.gaussian();
            vs.push_back(v);
        }
        const RealMatrix x = linalg::orthonormal_complement(vs, dim);
        REQUIRE(x.rows() == 1);
        for (const auto& v : vs) CHECK(std::abs((x * v)(0)) < 1e-10);
        CHECK(std::abs((x * x.transpose())(0, 0) - 1.0) < 1e-10);
    }
}

TEST_CASE("log_det_hermitian matches eigenvalue sum") {
    Xoshiro256pp rng(18);
    for (int trial = 0; trial < 20; ++trial) {
        const int n = 2 + static_cast<int>(rng.next() % 4);
        const Matrix a = random_matrix(rng, n, n);
        const Matrix m = Matrix::Identity(n, n) + a * a.adjoint();
        const double ld = linalg::log_det_hermitian(m);
        Eigen::SelfAdjointEigenSolver<Matrix> es(m);
        double ref = 0.0;
        for (int i = 0; i < n; ++i) ref += std::log(es.eigenvalues()(i));
        CHECK(ld == doctest::Approx(ref).epsilon(1e-10));
    }
}

TEST_CASE("log_det_hermitian rejects bad inputs") {
    Xoshiro256pp rng(19);
    const Matrix a = random_matrix(rng, 3, 3);
    CHECK_THROWS_AS(linalg::log_det_hermitian(a + Matrix::Identity(3, 3) * 50.0),
                    NotPositiveDefiniteError); // not Hermitian
    CHECK_THROWS_AS(linalg::log_det_hermitian(Matrix(-Matrix::Identity(3, 3))),
                    NotPositiveDefiniteError); // negative definite
    CHECK_THROWS_AS(linalg::log_det_hermitian(random_matrix(rng, 2, 3)),
                    DimensionMismatchError);
    // Scalar sanity: det of [[e]] is e.
    Matrix one(1, 1);
    one(0, 0) = std::exp(1.0);
    CHECK(linalg::log_det_hermitian(one) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("max_abs") {
    Matrix m(2, 2);
    m << Complex(3.0, 4.0), Complex(0, 0), Complex(1, 0), Complex(0, -2);
    CHECK(linalg::max_abs(m) == doctest::Approx(5.0));
    CHECK(linalg::max_abs(Matrix(0, 0)) == 0.0);
}

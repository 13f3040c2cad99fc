#include "hetnet/qpsk.hpp"

#include "hetnet/errors.hpp"

#include <cmath>

namespace hetnet {
namespace qpsk {

namespace {
constexpr double kInvSqrt2 = 0.70710678118654752440;
}

Complex map_bits(int b0, int b1) {
    return {(1 - 2 * b0) * kInvSqrt2, (1 - 2 * b1) * kInvSqrt2};
}

const std::array<Complex, 4>& constellation() {
    static const std::array<Complex, 4> pts = {
        map_bits(0, 0), map_bits(0, 1), map_bits(1, 0), map_bits(1, 1)};
    return pts;
}

void demap(Complex symbol, int& b0, int& b1) {
    b0 = symbol.real() < 0.0 ? 1 : 0;
    b1 = symbol.imag() < 0.0 ? 1 : 0;
}

Vector modulate(const std::vector<std::uint8_t>& bits) {
    if (bits.size() % 2 != 0)
        throw InvalidParameterError("modulate: odd number of bits");
    Vector out(static_cast<Eigen::Index>(bits.size() / 2));
    for (std::size_t i = 0; i < bits.size(); i += 2)
        out(static_cast<Eigen::Index>(i / 2)) = map_bits(bits[i], bits[i + 1]);
    return out;
}

std::vector<std::uint8_t> demodulate(const Vector& symbols) {
    std::vector<std::uint8_t> bits;
    bits.reserve(2 * static_cast<std::size_t>(symbols.size()));
    for (Eigen::Index i = 0; i < symbols.size(); ++i) {
        int b0, b1;
        demap(symbols(i), b0, b1);
        bits.push_back(static_cast<std::uint8_t>(b0));
        bits.push_back(static_cast<std::uint8_t>(b1));
    }
    return bits;
}

Vector ml_detect(const Vector& y, const Matrix& ch) {
    const Eigen::Index m = ch.cols();
    if (y.size() != ch.rows())
        throw DimensionMismatchError("ml_detect: y/ch dimension mismatch");
    if (m < 1 || m > 8)
        throw InvalidParameterError("ml_detect: unsupported message length");

    const auto& pts = constellation();
    // Precompute ch columns scaled by each constellation point: the candidate
    // sum is assembled incrementally as the digit counter advances.
    const std::size_t total = std::size_t{1} << (2 * m); // 4^m
    Vector best(m);
    double best_metric = -1.0;
    Vector cand(m);
    for (std::size_t idx = 0; idx < total; ++idx) {
        std::size_t digits = idx;
        for (Eigen::Index j = 0; j < m; ++j) {
            cand(j) = pts[digits & 3];
            digits >>= 2;
        }
        const double metric = (y - ch * cand).squaredNorm();
        if (best_metric < 0.0 || metric < best_metric) {
            best_metric = metric;
            best = cand;
        }
    }
    return best;
}

} // namespace qpsk
} // namespace hetnet

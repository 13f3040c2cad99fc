#ifndef HETNET_QPSK_HPP
#define HETNET_QPSK_HPP

#include "hetnet/linalg.hpp"

#include <array>
#include <cstdint>
#include <vector>

// Gray-mapped unit-energy QPSK and brute-force ML detection. Message vectors
// are short (at most 4 entries anywhere in the schemes), so exhaustive
// enumeration over constellation^m is both the definition of the detector and
// fast enough to be the implementation.

namespace hetnet {
namespace qpsk {

// Bit pair (b0,b1) -> ((1-2*b0) + 1i*(1-2*b1))/sqrt(2). Adjacent
// constellation points differ in exactly one bit.
Complex map_bits(int b0, int b1);

// The four constellation points, indexed by (b0<<1)|b1.
const std::array<Complex, 4>& constellation();

// Hard demap by quadrant; exact inverse of map_bits for noiseless symbols.
void demap(Complex symbol, int& b0, int& b1);

// bits.size() must be even; two bits per symbol in order.
Vector modulate(const std::vector<std::uint8_t>& bits);

std::vector<std::uint8_t> demodulate(const Vector& symbols);

// argmin over u in constellation^m of ||y - ch*u||^2, m = ch.cols().
// Ties broken toward the lower enumeration index so results are
// deterministic. Throws InvalidParameterError for m > 8 (4^m blows up).
Vector ml_detect(const Vector& y, const Matrix& ch);

} // namespace qpsk
} // namespace hetnet

#endif

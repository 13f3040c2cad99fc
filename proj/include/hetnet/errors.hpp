#ifndef HETNET_ERRORS_HPP
#define HETNET_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace hetnet {

// Base class so callers can catch anything thrown by this library in one go.
struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// orthonormal_complement: the input vectors already span the full space.
struct FullRankError : Error {
    explicit FullRankError(const std::string& what) : Error(what) {}
};

// log_det_hermitian: matrix is not Hermitian positive definite.
struct NotPositiveDefiniteError : Error {
    explicit NotPositiveDefiniteError(const std::string& what) : Error(what) {}
};

struct DimensionMismatchError : Error {
    explicit DimensionMismatchError(const std::string& what) : Error(what) {}
};

struct InvalidParameterError : Error {
    explicit InvalidParameterError(const std::string& what) : Error(what) {}
};

// Topology outside the range a construction supports (e.g. more than three
// femtocells per macro user, or more femtocells than transmit antennas).
struct UnsupportedTopologyError : Error {
    explicit UnsupportedTopologyError(const std::string& what) : Error(what) {}
};

// A channel draw (or topology) leaves a receiver without enough dimensions
// to null the interference it must null.
struct DegenerateChannelError : Error {
    explicit DegenerateChannelError(const std::string& what) : Error(what) {}
};

// The closed-form factorization of an effective channel disagrees with the
// direct projection*lifted-channel*beamformer product.
struct FactorizationMismatchError : Error {
    explicit FactorizationMismatchError(const std::string& what) : Error(what) {}
};

struct ConfigError : Error {
    explicit ConfigError(const std::string& what) : Error(what) {}
};

} // namespace hetnet

#endif

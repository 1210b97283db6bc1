#pragma once

#include <stdexcept>
#include <string>

namespace gcs {

struct NonSquare : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct NotSymmetric : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct NotHurwitz : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Raised by the game-ARE solver when the Hamiltonian has imaginary-axis
/// eigenvalues, the subspace basis is singular, or the candidate fails the
/// residual / closed-loop checks. Downstream this means "multiplier point
/// infeasible", not a programming error.
struct NoStabilizingSolution : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DimensionMismatch : std::invalid_argument {
    DimensionMismatch(const std::string& field, const std::string& expected,
                      const std::string& got)
        : std::invalid_argument(field + ": expected " + expected + ", got " + got),
          field(field) {}
    std::string field;
};

struct NotPositiveDefinite : std::invalid_argument {
    explicit NotPositiveDefinite(const std::string& field)
        : std::invalid_argument(field + ": not positive definite"), field(field) {}
    std::string field;
};

struct ConstantTermInPsi : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct AllZeroMultiplier : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct Infeasible : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SingularT11 : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct D11TooLarge : std::runtime_error {
    D11TooLarge(int channel, double margin)
        : std::runtime_error("channel " + std::to_string(channel) +
                             ": I - D11'D11 margin " + std::to_string(margin) +
                             " <= 1e-9"),
          channel(channel),
          margin(margin) {}
    int channel;
    double margin;
};

struct GtauSingular : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct XNotPSD : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct EmptySearchSpace : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

}  // namespace gcs

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace qsc {

enum class ErrorKind {
    // input validation
    NonSquare,
    NonHermitian,
    NotPSD,
    DimensionMismatch,
    NotNormalized,
    NotBipartite,
    NotQubitSide,
    NotQubits,
    IndexOutOfRange,
    BadPartition,
    RangeError,
    InvalidStateFile,
    MixedGlobalState,
    TooLarge,
    // parameter windows
    UnsupportedRegime,
    ParamsOutsideTheorem2,
    ParamsOutsideTheorem3,
    ParamsOutsideTheorem4,
    ParamsOutsideTheorem5,
    ParamsOutsideLemma3,
    NoApplicableBound,
    // numerics
    NonFinite,
};

std::string_view to_string(ErrorKind kind);

/// True for the kinds that reject a (q,s) pair rather than a state.
bool is_parameter_error(ErrorKind kind);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

} // namespace qsc

#include "qsconc/error.hpp"

namespace qsc {

std::string_view to_string(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::NonSquare: return "NonSquare";
    case ErrorKind::NonHermitian: return "NonHermitian";
    case ErrorKind::NotPSD: return "NotPSD";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::NotNormalized: return "NotNormalized";
    case ErrorKind::NotBipartite: return "NotBipartite";
    case ErrorKind::NotQubitSide: return "NotQubitSide";
    case ErrorKind::NotQubits: return "NotQubits";
    case ErrorKind::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorKind::BadPartition: return "BadPartition";
    case ErrorKind::RangeError: return "RangeError";
    case ErrorKind::InvalidStateFile: return "InvalidStateFile";
    case ErrorKind::MixedGlobalState: return "MixedGlobalState";
    case ErrorKind::TooLarge: return "TooLarge";
    case ErrorKind::UnsupportedRegime: return "UnsupportedRegime";
    case ErrorKind::ParamsOutsideTheorem2: return "ParamsOutsideTheorem2";
    case ErrorKind::ParamsOutsideTheorem3: return "ParamsOutsideTheorem3";
    case ErrorKind::ParamsOutsideTheorem4: return "ParamsOutsideTheorem4";
    case ErrorKind::ParamsOutsideTheorem5: return "ParamsOutsideTheorem5";
    case ErrorKind::ParamsOutsideLemma3: return "ParamsOutsideLemma3";
    case ErrorKind::NoApplicableBound: return "NoApplicableBound";
    case ErrorKind::NonFinite: return "NonFinite";
    }
    return "Unknown";
}

bool is_parameter_error(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::UnsupportedRegime:
    case ErrorKind::ParamsOutsideTheorem2:
    case ErrorKind::ParamsOutsideTheorem3:
    case ErrorKind::ParamsOutsideTheorem4:
    case ErrorKind::ParamsOutsideTheorem5:
    case ErrorKind::ParamsOutsideLemma3:
    case ErrorKind::NoApplicableBound:
        return true;
    default:
        return false;
    }
}

} // namespace qsc

#pragma once

#include "qsconc/states.hpp"

#include <filesystem>
#include <string>
#include <variant>

namespace qsc {

using AnyState = std::variant<PureState, DensityMatrix>;

/// Parses the JSON state format
///   {"kind": "pure" | "density", "dims": [d1, ...], "data": [[re, im], ...]}
/// with "data" flattened row-major. Schema problems raise InvalidStateFile;
/// physical problems raise the kind of the first violated invariant.
AnyState parse_state_json(const std::string& text);
AnyState load_state_file(const std::filesystem::path& path);

std::string to_json(const PureState& psi);
std::string to_json(const DensityMatrix& rho);

/// The density operator of either alternative.
DensityMatrix as_density(const AnyState& state);

} // namespace qsc

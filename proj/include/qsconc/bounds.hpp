#pragma once

#include "qsconc/measures.hpp"

#include <optional>
#include <string_view>

namespace qsc {

enum class Detection { None, PPT, Realignment, Both };
enum class BoundTheorem { None, RegimeA, RegimeB };

std::string_view to_string(Detection detection);

/// Trace norms of the partial transpose and the realigned matrix, which
/// criterion fired, and (once computed) the analytical lower bound.
struct BoundReport {
    double ppt_norm = 1.0;
    double realign_norm = 1.0;
    Detection detected_by = Detection::None;
    std::optional<double> lower_bound;
    int m = 0; // min(dA, dB)
    BoundTheorem theorem = BoundTheorem::None;

    double max_norm() const { return ppt_norm > realign_norm ? ppt_norm : realign_norm; }
};

inline constexpr double kDetectionTol = 1e-9;

BoundReport detect(const DensityMatrix& rho);

/// (q >= 2 and s >= 1.1391) or (s >= 1 and q >= 2.4721).
bool in_theorem2_window(const ParamPair& p);
/// 0 < q < 1, 0 < s < 0.9066 and 0 < qs < 0.9066.
bool in_theorem3_window(const ParamPair& p);

/// Regime-A bound as a function of the larger trace norm:
///   (1 - m^{s(1-q)}) / (1 - m^{-s}) * [1 - (1 - (N - 1)^2 / (m (m - 1)))^s]
double regimeA_bound_from_norm(double max_norm, int m, const ParamPair& p);
/// Regime-B bound: (m^{s(1-q)} - 1) / (m^s - 1) * (N^s - 1).
double regimeB_bound_from_norm(double max_norm, int m, const ParamPair& p);

BoundReport lower_bound_regimeA(const DensityMatrix& rho, const ParamPair& p);
BoundReport lower_bound_regimeB(const DensityMatrix& rho, const ParamPair& p);
/// Dispatches on the window that contains (q, s); NoApplicableBound otherwise.
BoundReport bound_auto(const DensityMatrix& rho, const ParamPair& p);

} // namespace qsc

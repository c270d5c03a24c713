#pragma once

#include "qsconc/measures.hpp"
#include "qsconc/state_io.hpp"

#include <vector>

namespace qsc {

struct PolygonReport {
    std::vector<double> marginals; // C^{j|rest} per subsystem
    std::vector<int> violations;   // j with C^{j|rest} > sum of the others + tol
    // group check only: C^{A|B} and the sum of the A_i marginals
    double group_lhs = 0.0;
    double group_rhs = 0.0;
};

/// One-to-rest measure of subsystem j: the unified functional of rho_j (RegimeA).
double marginal_cqs(const PureState& psi, int j, const ParamPair& p);

/// Checks C^{j|rest} <= sum_{k != j} C^{k|rest} + tol for every j (n >= 3).
PolygonReport polygon_check(const PureState& psi, const ParamPair& p, double tol = 1e-9);

/// Checks C^{A|B} <= sum_{i in A} C^{A_i|rest} + tol for the group A given by
/// subsystem indices; B is the complement. Violation list holds -1 on failure.
PolygonReport polygon_group_check(const PureState& psi, const Cut& groupA, const ParamPair& p,
                                  double tol = 1e-9);

struct MonogamyReport {
    double K = 0.0;              // normalized A1 | A2...An
    std::vector<double> K_parts; // normalized A1 | Ai, i = 2..n
    double tau = 0.0;            // K - sum K_parts
    bool in_window = true;
};

/// Enforce raises ParamsOutsideTheorem5 outside {q >= 2, 0 <= s <= 1, 1 <= qs <= 3};
/// Extrapolate evaluates the same formulas anyway and flags in_window = false.
enum class WindowPolicy { Enforce, Extrapolate };

bool in_theorem5_window(const ParamPair& p);

MonogamyReport monogamy_residual_qubits(const PureState& psi, const ParamPair& p,
                                        WindowPolicy policy = WindowPolicy::Enforce);
/// Accepts a rank-one density operator; anything else raises MixedGlobalState.
MonogamyReport monogamy_residual_qubits(const AnyState& state, const ParamPair& p,
                                        WindowPolicy policy = WindowPolicy::Enforce);

/// Closed-form residual of the three-qubit generalized Schmidt state:
///   C(A|BC) = sqrt(4 l0^2 (1 - l0^2 - l1^2)),  C(A|B) = 2 l0 l2,  C(A|C) = 2 l0 l3.
MonogamyReport monogamy_residual_gen3(const GenSchmidt3& params, const ParamPair& p,
                                      WindowPolicy policy = WindowPolicy::Enforce);

} // namespace qsc

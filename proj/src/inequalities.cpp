#include "qsconc/inequalities.hpp"

#include "qsconc/error.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace qsc {

namespace {

constexpr double kWindowTol = 1e-12;

void require_regimeA(const ParamPair& p) {
    if (p.regime != Regime::A) {
        throw Error(ErrorKind::UnsupportedRegime, "polygon inequalities need q >= 1 and qs >= 1");
    }
}

void check_window(const ParamPair& p, WindowPolicy policy, MonogamyReport& report) {
    report.in_window = in_theorem5_window(p);
    if (!report.in_window && policy == WindowPolicy::Enforce) {
        throw Error(ErrorKind::ParamsOutsideTheorem5,
                    "monogamy needs q >= 2, 0 <= s <= 1 and 1 <= qs <= 3, got (q,s) = (" +
                        std::to_string(p.q) + ", " + std::to_string(p.s) + ")");
    }
    if (!p.supported() && (!(p.q > 0.0) || std::abs(p.q - 1.0) < 1e-12 || p.s == 0.0)) {
        throw Error(ErrorKind::UnsupportedRegime, "(q,s) lies in neither regime");
    }
}

// The sign cancels in the normalized ratio, so extrapolated pairs outside
// both regimes still have a well-defined h.
double h_any(double x, const ParamPair& p) {
    if (p.supported()) return h_qs(x, p);
    x = std::clamp(x, 0.0, 1.0);
    const double root = std::sqrt(std::max(0.0, 1.0 - x * x));
    const double sum = std::pow((1.0 + root) / 2.0, p.q) + std::pow((1.0 - root) / 2.0, p.q);
    return (1.0 - std::pow(sum, p.s)) / (1.0 - std::pow(2.0, p.s * (1.0 - p.q)));
}

void finish(MonogamyReport& report) {
    report.tau = report.K - std::accumulate(report.K_parts.begin(), report.K_parts.end(), 0.0);
}

} // namespace

double marginal_cqs(const PureState& psi, int j, const ParamPair& p) {
    require_regimeA(p);
    if (j < 0 || j >= psi.parties()) {
        throw Error(ErrorKind::IndexOutOfRange, "subsystem " + std::to_string(j) + " out of range");
    }
    return unified_functional(reduced_state(psi, Cut{j}), p);
}

PolygonReport polygon_check(const PureState& psi, const ParamPair& p, double tol) {
    require_regimeA(p);
    const int n = psi.parties();
    if (n < 3) throw Error(ErrorKind::BadPartition, "polygon inequalities need at least 3 subsystems");
    PolygonReport report;
    for (int j = 0; j < n; ++j) report.marginals.push_back(marginal_cqs(psi, j, p));
    const double total = std::accumulate(report.marginals.begin(), report.marginals.end(), 0.0);
    for (int j = 0; j < n; ++j) {
        const double mj = report.marginals[static_cast<std::size_t>(j)];
        if (mj > total - mj + tol) report.violations.push_back(j);
    }
    return report;
}

PolygonReport polygon_group_check(const PureState& psi, const Cut& groupA, const ParamPair& p, double tol) {
    require_regimeA(p);
    const int n = psi.parties();
    Cut sorted = groupA;
    std::sort(sorted.begin(), sorted.end());
    if (sorted.empty() || static_cast<int>(sorted.size()) >= n ||
        std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end() || sorted.front() < 0 ||
        sorted.back() >= n) {
        throw Error(ErrorKind::BadPartition, "group A must be a nonempty proper subset of distinct subsystems");
    }
    PolygonReport report;
    for (int j = 0; j < n; ++j) report.marginals.push_back(marginal_cqs(psi, j, p));
    report.group_lhs = unified_functional(reduced_state(psi, sorted), p);
    for (int k : sorted) report.group_rhs += report.marginals[static_cast<std::size_t>(k)];
    if (report.group_lhs > report.group_rhs + tol) report.violations.push_back(-1);
    return report;
}

bool in_theorem5_window(const ParamPair& p) {
    const double qs = p.q * p.s;
    return p.q >= 2.0 - kWindowTol && p.s >= 0.0 && p.s <= 1.0 + kWindowTol && qs >= 1.0 - kWindowTol &&
           qs <= 3.0 + kWindowTol;
}

MonogamyReport monogamy_residual_qubits(const PureState& psi, const ParamPair& p, WindowPolicy policy) {
    MonogamyReport report;
    check_window(p, policy, report);
    for (int d : psi.dims) {
        if (d != 2) throw Error(ErrorKind::NotQubits, "monogamy needs every subsystem to be a qubit");
    }
    if (psi.parties() < 3) throw Error(ErrorKind::NotQubits, "monogamy needs at least 3 qubits");

    report.K = h_any(concurrence_pure(psi, Cut{0}), p);
    for (int i = 1; i < psi.parties(); ++i) {
        const ComplexMatrix factor = coefficient_matrix(psi, Cut{0, i});
        report.K_parts.push_back(h_any(std::min(1.0, wootters_concurrence_factor(factor)), p));
    }
    finish(report);
    return report;
}

MonogamyReport monogamy_residual_qubits(const AnyState& state, const ParamPair& p, WindowPolicy policy) {
    if (const auto* psi = std::get_if<PureState>(&state)) return monogamy_residual_qubits(*psi, p, policy);
    const auto& rho = std::get<DensityMatrix>(state);
    const HermitianEigen eig = hermitian_eigen(rho.matrix);
    if (eig.values.size() > 1 && eig.values[1] > kNormTol) {
        throw Error(ErrorKind::MixedGlobalState,
                    "one-to-rest term of a mixed global state is a convex roof; pass a pure state");
    }
    ComplexVector v = eig.vectors.col(0);
    v.normalize();
    return monogamy_residual_qubits(PureState::make(rho.dims, v), p, policy);
}

MonogamyReport monogamy_residual_gen3(const GenSchmidt3& params, const ParamPair& p, WindowPolicy policy) {
    MonogamyReport report;
    check_window(p, policy, report);
    gen_schmidt3(params); // validation only
    const auto& l = params.lambda;
    const double one_to_rest = std::sqrt(std::max(0.0, 4.0 * l[0] * l[0] * (1.0 - l[0] * l[0] - l[1] * l[1])));
    report.K = h_any(std::min(1.0, one_to_rest), p);
    // A|B sees l0|00> + l3|11> in the C = 0 branch, A|C sees l0|00> + l2|11>
    report.K_parts = {h_any(std::min(1.0, 2.0 * l[0] * l[3]), p), h_any(std::min(1.0, 2.0 * l[0] * l[2]), p)};
    finish(report);
    return report;
}

} // namespace qsc

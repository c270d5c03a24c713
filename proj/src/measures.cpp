#include "qsconc/measures.hpp"

#include "qsconc/error.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace qsc {

namespace {

constexpr double kWindowTol = 1e-12;

void require_supported(const ParamPair& p) {
    if (!p.supported()) {
        throw Error(ErrorKind::UnsupportedRegime,
                    "(q,s) = (" + std::to_string(p.q) + ", " + std::to_string(p.s) +
                        ") lies in neither regime: need q >= 1 and qs >= 1, or 0 < q < 1 and 0 < qs < 1");
    }
}

void require_theorem4(const ParamPair& p) {
    if (!in_theorem4_window(p)) {
        throw Error(ErrorKind::ParamsOutsideTheorem4,
                    "need q >= 1, 0 <= s <= 1 and 1 <= qs <= 3, got (q,s) = (" + std::to_string(p.q) +
                        ", " + std::to_string(p.s) + ")");
    }
}

} // namespace

std::string_view to_string(Regime regime) {
    switch (regime) {
    case Regime::A: return "A";
    case Regime::B: return "B";
    case Regime::Unsupported: return "Unsupported";
    }
    return "Unsupported";
}

ParamPair classify(double q, double s) {
    if (!(q > 0.0) || !(s > 0.0) || !std::isfinite(q) || !std::isfinite(s)) {
        throw Error(ErrorKind::RangeError, "q and s must be finite and > 0");
    }
    const double qs = q * s;
    if (q >= 1.0 && qs >= 1.0) return {q, s, Regime::A, 1};
    if (q < 1.0 && qs < 1.0) return {q, s, Regime::B, -1};
    return {q, s, Regime::Unsupported, 0};
}

double unified_functional(const std::vector<double>& spectrum, const ParamPair& p) {
    require_supported(p);
    return p.epsilon * (1.0 - std::pow(power_trace(spectrum, p.q), p.s));
}

double unified_functional(const ComplexMatrix& rho, const ParamPair& p) {
    return unified_functional(hermitian_eigenvalues(rho), p);
}

MeasureValue cqs_from_spectrum(const SchmidtSpectrum& spectrum, const ParamPair& p) {
    const double value = unified_functional(spectrum.values, p);
    return {std::max(0.0, value), false, p};
}

MeasureValue cqs_pure(const PureState& psi, const Cut& sideA, const ParamPair& p) {
    require_supported(p);
    return cqs_from_spectrum(schmidt(psi, sideA), p);
}

MeasureValue cqs_pure(const PureState& psi, const ParamPair& p) {
    return cqs_pure(psi, Cut{0}, p);
}

double max_cqs(int m, const ParamPair& p) {
    require_supported(p);
    return p.epsilon * (1.0 - std::pow(static_cast<double>(m), p.s * (1.0 - p.q)));
}

double normalization_factor(const ParamPair& p) {
    require_supported(p);
    if (std::abs(p.q - 1.0) < 1e-12) {
        throw Error(ErrorKind::RangeError, "normalization 1 - 2^{s(1-q)} vanishes at q = 1");
    }
    return max_cqs(2, p);
}

MeasureValue normalized_cqs_pure(const PureState& psi, const ParamPair& p, const Cut& sideA) {
    int dA = 1;
    for (int k : sideA) {
        if (k < 0 || k >= psi.parties()) throw Error(ErrorKind::NotBipartite, "subsystem index out of range");
        dA *= psi.dims[static_cast<std::size_t>(k)];
    }
    if (dA != 2) throw Error(ErrorKind::NotQubitSide, "side A has dimension " + std::to_string(dA) + ", expected 2");
    const double norm = normalization_factor(p);
    const double value = cqs_pure(psi, sideA, p).value / norm;
    return {std::clamp(value, 0.0, 1.0), true, p};
}

double concurrence_pure(const PureState& psi, const Cut& sideA) {
    const auto spectrum = schmidt(psi, sideA);
    const double purity = power_trace(spectrum.values, 2.0);
    return std::sqrt(std::max(0.0, 2.0 * (1.0 - purity)));
}

double h_qs(double x, const ParamPair& p) {
    if (!(x >= -kWindowTol && x <= 1.0 + kWindowTol)) {
        throw Error(ErrorKind::RangeError, "h_qs needs x in [0,1], got " + std::to_string(x));
    }
    x = std::clamp(x, 0.0, 1.0);
    const double norm = normalization_factor(p);
    const double root = std::sqrt(std::max(0.0, 1.0 - x * x));
    const double sum = std::pow((1.0 + root) / 2.0, p.q) + std::pow((1.0 - root) / 2.0, p.q);
    return p.epsilon * (1.0 - std::pow(sum, p.s)) / norm;
}

double wootters_concurrence_factor(const ComplexMatrix& factor) {
    if (factor.rows() != 4) {
        throw Error(ErrorKind::DimensionMismatch, "Wootters concurrence needs a two-qubit factor with 4 rows");
    }
    ComplexMatrix sysy = ComplexMatrix::Zero(4, 4);
    sysy(0, 3) = -1.0;
    sysy(1, 2) = 1.0;
    sysy(2, 1) = 1.0;
    sysy(3, 0) = -1.0;
    // nonzero eigenvalues of rho rho~ are those of T T^dag, T = B^T (sy x sy) B
    const ComplexMatrix t = factor.transpose() * sysy * factor;
    std::vector<double> mu = singular_values(t);
    mu.resize(std::max<std::size_t>(mu.size(), 4), 0.0);
    return std::max(0.0, mu[0] - mu[1] - mu[2] - mu[3]);
}

double wootters_concurrence(const ComplexMatrix& rho) {
    if (rho.rows() != 4 || rho.cols() != 4) {
        throw Error(ErrorKind::DimensionMismatch, "Wootters concurrence needs a 4x4 two-qubit state");
    }
    const HermitianEigen eig = hermitian_eigen(rho);
    Eigen::VectorXd roots(4);
    for (int k = 0; k < 4; ++k) roots(k) = std::sqrt(std::max(0.0, eig.values[static_cast<std::size_t>(k)]));
    return wootters_concurrence_factor(eig.vectors * roots.asDiagonal());
}

double wootters_concurrence(const DensityMatrix& rho) {
    if (rho.dims.size() != 2 || rho.dims[0] != 2 || rho.dims[1] != 2) {
        throw Error(ErrorKind::DimensionMismatch, "Wootters concurrence needs a 2x2 (two-qubit) state");
    }
    return wootters_concurrence(rho.matrix);
}

bool in_theorem4_window(const ParamPair& p) {
    const double qs = p.q * p.s;
    return p.q >= 1.0 - kWindowTol && p.s >= 0.0 && p.s <= 1.0 + kWindowTol &&
           qs >= 1.0 - kWindowTol && qs <= 3.0 + kWindowTol;
}

MeasureValue cqs_mixed_two_qubit(const DensityMatrix& rho, const ParamPair& p) {
    require_theorem4(p);
    const double c = wootters_concurrence(rho);
    return {h_qs(c, p), true, p};
}

MeasureValue normalized_from_concurrence(double concurrence, const ParamPair& p) {
    require_theorem4(p);
    return {h_qs(concurrence, p), true, p};
}

} // namespace qsc

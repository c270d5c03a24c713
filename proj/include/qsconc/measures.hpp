#pragma once

#include "qsconc/states.hpp"

#include <string_view>

namespace qsc {

/// A: q >= 1 and qs >= 1 (epsilon = +1).  B: 0 < q < 1 and 0 < qs < 1 (epsilon = -1).
enum class Regime { A, B, Unsupported };

std::string_view to_string(Regime regime);

/// Exponent pair (q, s) with its regime and sign factor. Build with classify().
struct ParamPair {
    double q = 2.0;
    double s = 1.0;
    Regime regime = Regime::A;
    int epsilon = 1; // 0 when unsupported

    bool supported() const { return regime != Regime::Unsupported; }
};

ParamPair classify(double q, double s);

struct MeasureValue {
    double value = 0.0;
    bool normalized = false;
    ParamPair params;
};

/// epsilon * (1 - (sum lambda_i^q)^s) over a probability spectrum (0^q taken as 0).
double unified_functional(const std::vector<double>& spectrum, const ParamPair& p);
double unified_functional(const ComplexMatrix& rho, const ParamPair& p);

MeasureValue cqs_from_spectrum(const SchmidtSpectrum& spectrum, const ParamPair& p);
MeasureValue cqs_pure(const PureState& psi, const Cut& sideA, const ParamPair& p);
MeasureValue cqs_pure(const PureState& psi, const ParamPair& p);

/// Largest pure-state value on an m x m system, epsilon * (1 - m^{s(1-q)}).
double max_cqs(int m, const ParamPair& p);

/// epsilon * (1 - 2^{s(1-q)}); singular at q = 1.
double normalization_factor(const ParamPair& p);

/// C_{q,s} / (epsilon (1 - 2^{s(1-q)})) for a state whose side A is a qubit.
MeasureValue normalized_cqs_pure(const PureState& psi, const ParamPair& p, const Cut& sideA = {0});

/// sqrt(2 (1 - tr rho_A^2)).
double concurrence_pure(const PureState& psi, const Cut& sideA = {0});

/// Normalized measure of a qubit-side pure state as a function of its concurrence x.
double h_qs(double x, const ParamPair& p);

/// max(0, mu1 - mu2 - mu3 - mu4) with mu the descending square roots of the
/// eigenvalues of rho (sy x sy) rho* (sy x sy).
double wootters_concurrence(const ComplexMatrix& rho);
/// Same for rho = B B^dag given B (4 x k); exact when B is known, e.g. a
/// coefficient matrix of a pure state.
double wootters_concurrence_factor(const ComplexMatrix& factor);
double wootters_concurrence(const DensityMatrix& rho);

/// q >= 1, 0 <= s <= 1, 1 <= qs <= 3.
bool in_theorem4_window(const ParamPair& p);

/// Normalized measure of a two-qubit state, h_qs(C(rho)).
MeasureValue cqs_mixed_two_qubit(const DensityMatrix& rho, const ParamPair& p);

/// Normalized measure of a 2 x d state from an externally supplied concurrence.
MeasureValue normalized_from_concurrence(double concurrence, const ParamPair& p);

} // namespace qsc

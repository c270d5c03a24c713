#pragma once

#include <functional>

namespace qsc {

using Curve = std::function<double(double)>;

/// Minimal pure-state measure at isotropic fidelity F on C^d x C^d,
///   1 - (gamma^{2q} + (d-1) delta^{2q})^s,
/// valid for q > 1, qs >= 1 and F in [1/d, 1] (zero at F = 1/d).
double xi_isotropic(double fidelity, double q, double s, int d);

/// Werner counterpart with G = 2 sqrt(w(1-w)):
///   1 - [((1+G)/2)^q + ((1-G)/2)^q]^s,  w in [1/2, 1].
double xi_werner(double w, double q, double s);

/// Central-difference second derivative, step 1e-4.
double second_derivative(const Curve& curve, double x);

/// Largest x0 in (a, b) where the numerical second derivative changes sign,
/// refined by bisection to an interval of 1e-6. Returns b if there is none.
double find_breakpoint(const Curve& curve, double a, double b);

enum class EnvelopeMethod {
    InflectionChord, // straight segment from the inflection point to the right end
    TangentHull,     // supporting line through the right end, tangent to the curve
};

/// Piecewise convexification of a curve on [sep_threshold, right]:
/// zero up to the separability threshold, the analytic curve up to `junction`,
/// then the line slope * x + intercept.
struct EnvelopeCurve {
    double sep_threshold = 0.0;
    double right = 1.0;
    double breakpoint = 1.0; // inflection point of the analytic curve
    double junction = 1.0;   // where the linear tail starts
    double slope = 0.0;
    double intercept = 0.0;
    EnvelopeMethod method = EnvelopeMethod::InflectionChord;
    Curve analytic;

    double operator()(double x) const;
};

EnvelopeCurve envelope(const Curve& curve, double sep_threshold, double right,
                       EnvelopeMethod method = EnvelopeMethod::InflectionChord);

EnvelopeCurve isotropic_envelope(double q, double s, int d,
                                 EnvelopeMethod method = EnvelopeMethod::InflectionChord);
EnvelopeCurve werner_envelope(double q, double s,
                              EnvelopeMethod method = EnvelopeMethod::InflectionChord);

/// Exact measure of the isotropic state over the full range F in [0, 1].
double cqs_isotropic(double fidelity, double q, double s, int d,
                     EnvelopeMethod method = EnvelopeMethod::InflectionChord);
/// Exact measure of the Werner state over the full range w in [0, 1].
double cqs_werner(double w, double q, double s,
                  EnvelopeMethod method = EnvelopeMethod::InflectionChord);

/// Candidate Schmidt vector with n entries gamma^2 and m entries delta^2.
struct IsotropicExtremum {
    int n = 1;
    int m_count = 0;
    double gamma = 1.0;
    double delta = 0.0;
    double value = 0.0;
};

/// Brute-force minimum of 1 - (n gamma^{2q} + m delta^{2q})^s over all integer
/// pairs with 1 <= n <= Fd and Fd <= n + m <= d, using the closed-form roots
/// gamma+_{nm}, delta+_{nm}. Ties keep the smallest n, then the largest m.
IsotropicExtremum appendixA_grid_oracle(double fidelity, double q, double s, int d);

/// q-concurrence (q = 2) of the d = 3 isotropic state:
///   0 (F <= 1/3), 1 - gamma^4 - 2 delta^4 (F <= 8/9), 3F/2 - 5/6 beyond.
double reference_q_concurrence_isotropic(double fidelity);
/// C_3^t of the two-qubit Werner state: (2w - 1)^2 for w > 1/2, else 0.
double reference_c3t_werner(double w);

} // namespace qsc

#include "qsconc/closed_forms.hpp"

#include "qsconc/error.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace qsc {

namespace {

constexpr double kDiffStep = 1e-4;
constexpr double kDomainTol = 1e-12;
constexpr int kScanPoints = 4000;

void require_lemma3(double q, double s) {
    if (!(q > 1.0 && q * s >= 1.0)) {
        throw Error(ErrorKind::ParamsOutsideLemma3,
                    "closed forms need q > 1 and qs >= 1, got (q,s) = (" + std::to_string(q) + ", " +
                        std::to_string(s) + ")");
    }
}

double checked(const Curve& curve, double x) {
    const double y = curve(x);
    if (!std::isfinite(y)) {
        throw Error(ErrorKind::NonFinite, "curve is not finite at x = " + std::to_string(x));
    }
    return y;
}

double first_derivative(const Curve& curve, double x) {
    return (checked(curve, x + kDiffStep) - checked(curve, x - kDiffStep)) / (2.0 * kDiffStep);
}

} // namespace

double xi_isotropic(double fidelity, double q, double s, int d) {
    require_lemma3(q, s);
    if (d < 2) throw Error(ErrorKind::RangeError, "d must be >= 2");
    const double threshold = 1.0 / d;
    if (!(fidelity >= threshold - kDomainTol && fidelity <= 1.0 + kDomainTol)) {
        throw Error(ErrorKind::RangeError,
                    "F = " + std::to_string(fidelity) + " outside [1/d, 1] for d = " + std::to_string(d));
    }
    const double f = std::clamp(fidelity, threshold, 1.0);
    const double dd = d;
    const double gamma = (std::sqrt(f) + std::sqrt((dd - 1.0) * (1.0 - f))) / std::sqrt(dd);
    const double delta = std::max(0.0, (std::sqrt(f) - std::sqrt((1.0 - f) / (dd - 1.0))) / std::sqrt(dd));
    const double sum = std::pow(gamma, 2.0 * q) + (dd - 1.0) * std::pow(delta, 2.0 * q);
    return 1.0 - std::pow(sum, s);
}

double xi_werner(double w, double q, double s) {
    require_lemma3(q, s);
    if (!(w >= 0.5 - kDomainTol && w <= 1.0 + kDomainTol)) {
        throw Error(ErrorKind::RangeError, "w = " + std::to_string(w) + " outside [1/2, 1]");
    }
    const double x = std::clamp(w, 0.5, 1.0);
    const double g = std::min(1.0, 2.0 * std::sqrt(x * (1.0 - x)));
    const double sum = std::pow((1.0 + g) / 2.0, q) + std::pow((1.0 - g) / 2.0, q);
    return 1.0 - std::pow(sum, s);
}

double second_derivative(const Curve& curve, double x) {
    const double h = kDiffStep;
    return (checked(curve, x + h) - 2.0 * checked(curve, x) + checked(curve, x - h)) / (h * h);
}

double find_breakpoint(const Curve& curve, double a, double b) {
    if (!(b > a)) throw Error(ErrorKind::RangeError, "breakpoint search needs a < b");
    const double lo = a + 2.0 * kDiffStep;
    const double hi = b - 2.0 * kDiffStep;
    if (!(hi > lo)) return b;

    auto convex = [&](double x) { return second_derivative(curve, x) >= 0.0; };
    const double step = (hi - lo) / kScanPoints;
    bool right_sign = convex(hi);
    for (int i = kScanPoints - 1; i >= 0; --i) {
        double left = lo + i * step;
        const bool left_sign = convex(left);
        if (left_sign != right_sign) {
            double right = left + step;
            while (right - left > 1e-6) {
                const double mid = 0.5 * (left + right);
                if (convex(mid) == left_sign) left = mid;
                else right = mid;
            }
            return 0.5 * (left + right);
        }
        right_sign = left_sign;
    }
    return b;
}

double EnvelopeCurve::operator()(double x) const {
    if (x <= sep_threshold) return 0.0;
    if (x <= junction) return analytic(x);
    return slope * x + intercept;
}

EnvelopeCurve envelope(const Curve& curve, double sep_threshold, double right, EnvelopeMethod method) {
    EnvelopeCurve env;
    env.sep_threshold = sep_threshold;
    env.right = right;
    env.method = method;
    env.analytic = curve;
    env.breakpoint = find_breakpoint(curve, sep_threshold, right);

    const double f_right = checked(curve, right);
    if (env.breakpoint >= right) {
        env.junction = right;
        env.slope = 0.0;
        env.intercept = f_right;
        return env;
    }

    double junction = env.breakpoint;
    if (method == EnvelopeMethod::TangentHull) {
        // Tangency: f'(x) (right - x) = f(right) - f(x), searched left of the inflection point.
        auto gap = [&](double x) {
            return first_derivative(curve, x) * (right - x) - (f_right - checked(curve, x));
        };
        double lo = sep_threshold + 2.0 * kDiffStep;
        double hi = env.breakpoint;
        if (gap(lo) >= 0.0) {
            junction = sep_threshold;
        } else {
            while (hi - lo > 1e-10) {
                const double mid = 0.5 * (lo + hi);
                if (gap(mid) < 0.0) lo = mid;
                else hi = mid;
            }
            junction = 0.5 * (lo + hi);
        }
    }
    env.junction = junction;
    const double f_junction = junction <= sep_threshold ? 0.0 : checked(curve, junction);
    env.slope = (f_right - f_junction) / (right - junction);
    env.intercept = f_right - env.slope * right;
    return env;
}

EnvelopeCurve isotropic_envelope(double q, double s, int d, EnvelopeMethod method) {
    require_lemma3(q, s);
    if (d < 2) throw Error(ErrorKind::RangeError, "d must be >= 2");
    Curve xi = [q, s, d](double f) { return xi_isotropic(f, q, s, d); };
    return envelope(xi, 1.0 / d, 1.0, method);
}

EnvelopeCurve werner_envelope(double q, double s, EnvelopeMethod method) {
    require_lemma3(q, s);
    Curve xi = [q, s](double w) { return xi_werner(w, q, s); };
    return envelope(xi, 0.5, 1.0, method);
}

double cqs_isotropic(double fidelity, double q, double s, int d, EnvelopeMethod method) {
    if (!(fidelity >= 0.0 && fidelity <= 1.0)) throw Error(ErrorKind::RangeError, "F must lie in [0,1]");
    return isotropic_envelope(q, s, d, method)(fidelity);
}

double cqs_werner(double w, double q, double s, EnvelopeMethod method) {
    if (!(w >= 0.0 && w <= 1.0)) throw Error(ErrorKind::RangeError, "w must lie in [0,1]");
    return werner_envelope(q, s, method)(w);
}

IsotropicExtremum appendixA_grid_oracle(double fidelity, double q, double s, int d) {
    require_lemma3(q, s);
    if (d < 2) throw Error(ErrorKind::RangeError, "d must be >= 2");
    if (!(fidelity >= 1.0 / d - kDomainTol && fidelity <= 1.0 + kDomainTol)) {
        throw Error(ErrorKind::RangeError, "F outside (1/d, 1]");
    }
    const double fd = fidelity * d;
    const double root_fd = std::sqrt(fd);
    constexpr double kFeasTol = 1e-12;

    IsotropicExtremum best;
    bool found = false;
    for (int n = 1; n <= d; ++n) {
        if (n > fd + kFeasTol) break;
        for (int m = d - n; m >= 0; --m) {
            if (n + m < fd - kFeasTol) break;
            IsotropicExtremum cand;
            cand.n = n;
            cand.m_count = m;
            if (m == 0) {
                if (std::abs(fd - n) > kFeasTol) continue;
                cand.gamma = 1.0 / std::sqrt(static_cast<double>(n));
                cand.delta = 0.0;
            } else {
                const double nm = static_cast<double>(n) * m;
                const double disc = std::sqrt(std::max(0.0, nm * (n + m - fd)));
                cand.gamma = (n * root_fd + disc) / (n * static_cast<double>(n + m));
                cand.delta = std::max(0.0, (m * root_fd - disc) / (m * static_cast<double>(n + m)));
            }
            const double sum = n * std::pow(cand.gamma, 2.0 * q) + m * std::pow(cand.delta, 2.0 * q);
            cand.value = 1.0 - std::pow(sum, s);
            if (!found || cand.value < best.value - 1e-14) {
                best = cand;
                found = true;
            }
        }
    }
    if (!found) throw Error(ErrorKind::RangeError, "no feasible (n, m) pair");
    return best;
}

double reference_q_concurrence_isotropic(double fidelity) {
    if (!(fidelity >= 0.0 && fidelity <= 1.0)) throw Error(ErrorKind::RangeError, "F must lie in [0,1]");
    if (fidelity <= 1.0 / 3.0) return 0.0;
    if (fidelity <= 8.0 / 9.0) return xi_isotropic(fidelity, 2.0, 1.0, 3);
    return 1.5 * fidelity - 5.0 / 6.0;
}

double reference_c3t_werner(double w) {
    if (!(w >= 0.0 && w <= 1.0)) throw Error(ErrorKind::RangeError, "w must lie in [0,1]");
    if (w <= 0.5) return 0.0;
    const double x = 2.0 * w - 1.0;
    return x * x;
}

} // namespace qsc

#include "qsconc/bounds.hpp"

#include "qsconc/error.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace qsc {

namespace {

std::string pair_text(const ParamPair& p) {
    return "(q,s) = (" + std::to_string(p.q) + ", " + std::to_string(p.s) + ")";
}

void require_bipartite(const DensityMatrix& rho) {
    if (rho.dims.size() != 2) {
        throw Error(ErrorKind::DimensionMismatch,
                    "criteria need a bipartite state, got " + std::to_string(rho.dims.size()) + " subsystems");
    }
}

void require_m(int m) {
    if (m < 2) throw Error(ErrorKind::RangeError, "bounds need m = min(dA,dB) >= 2");
}

} // namespace

std::string_view to_string(Detection detection) {
    switch (detection) {
    case Detection::None: return "None";
    case Detection::PPT: return "PPT";
    case Detection::Realignment: return "Realignment";
    case Detection::Both: return "Both";
    }
    return "None";
}

BoundReport detect(const DensityMatrix& rho) {
    require_bipartite(rho);
    const DimPair dims{rho.dims[0], rho.dims[1]};
    BoundReport report;
    report.ppt_norm = trace_norm(partial_transpose(rho.matrix, dims));
    report.realign_norm = trace_norm(realign(rho.matrix, dims));
    report.m = dims.min();
    const bool ppt = report.ppt_norm > 1.0 + kDetectionTol;
    const bool ccnr = report.realign_norm > 1.0 + kDetectionTol;
    report.detected_by = ppt && ccnr ? Detection::Both
                         : ppt       ? Detection::PPT
                         : ccnr      ? Detection::Realignment
                                     : Detection::None;
    return report;
}

bool in_theorem2_window(const ParamPair& p) {
    return (p.q >= 2.0 && p.s >= 1.1391) || (p.s >= 1.0 && p.q >= 2.4721);
}

bool in_theorem3_window(const ParamPair& p) {
    return p.q > 0.0 && p.q < 1.0 && p.s > 0.0 && p.s < 0.9066 && p.q * p.s < 0.9066;
}

double regimeA_bound_from_norm(double max_norm, int m, const ParamPair& p) {
    require_m(m);
    if (max_norm <= 1.0) return 0.0;
    const double md = m;
    const double prefactor = (1.0 - std::pow(md, p.s * (1.0 - p.q))) / (1.0 - std::pow(md, -p.s));
    const double excess = max_norm - 1.0;
    const double inner = std::max(0.0, 1.0 - excess * excess / (md * (md - 1.0)));
    return std::max(0.0, prefactor * (1.0 - std::pow(inner, p.s)));
}

double regimeB_bound_from_norm(double max_norm, int m, const ParamPair& p) {
    require_m(m);
    if (max_norm <= 1.0) return 0.0;
    const double md = m;
    const double prefactor = (std::pow(md, p.s * (1.0 - p.q)) - 1.0) / (std::pow(md, p.s) - 1.0);
    return std::max(0.0, prefactor * (std::pow(max_norm, p.s) - 1.0));
}

BoundReport lower_bound_regimeA(const DensityMatrix& rho, const ParamPair& p) {
    if (!in_theorem2_window(p)) {
        throw Error(ErrorKind::ParamsOutsideTheorem2,
                    pair_text(p) + " is outside both windows {q >= 2, s >= 1.1391} and {s >= 1, q >= 2.4721}");
    }
    BoundReport report = detect(rho);
    report.theorem = BoundTheorem::RegimeA;
    report.lower_bound = regimeA_bound_from_norm(report.max_norm(), report.m, p);
    return report;
}

BoundReport lower_bound_regimeB(const DensityMatrix& rho, const ParamPair& p) {
    if (!(p.q > 0.0 && p.q < 1.0)) {
        throw Error(ErrorKind::ParamsOutsideTheorem3, pair_text(p) + ": need 0 < q < 1");
    }
    if (!(p.s > 0.0 && p.s < 0.9066)) {
        throw Error(ErrorKind::ParamsOutsideTheorem3, pair_text(p) + ": need 0 < s < 0.9066");
    }
    if (!(p.q * p.s < 0.9066)) {
        throw Error(ErrorKind::ParamsOutsideTheorem3, pair_text(p) + ": need 0 < qs < 0.9066");
    }
    BoundReport report = detect(rho);
    report.theorem = BoundTheorem::RegimeB;
    report.lower_bound = regimeB_bound_from_norm(report.max_norm(), report.m, p);
    return report;
}

BoundReport bound_auto(const DensityMatrix& rho, const ParamPair& p) {
    if (!p.supported()) {
        throw Error(ErrorKind::UnsupportedRegime, pair_text(p) + " lies in neither regime");
    }
    if (p.regime == Regime::A && in_theorem2_window(p)) return lower_bound_regimeA(rho, p);
    if (p.regime == Regime::B && in_theorem3_window(p)) return lower_bound_regimeB(rho, p);
    throw Error(ErrorKind::NoApplicableBound, pair_text(p) + " is inside no lower-bound window");
}

} // namespace qsc

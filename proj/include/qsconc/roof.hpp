#pragma once

#include "qsconc/measures.hpp"

#include <cstdint>
#include <vector>

namespace qsc {

struct RoofConfig {
    int decomposition_length = 0; // 0: twice the rank
    int restarts = 32;
    int iterations = 2000;        // cap on full sweeps per restart
    double initial_step = 0.5;    // rotation angle
    double step_decay = 0.5;      // applied after a sweep without improvement
    double min_step = 1e-9;
    std::uint64_t seed = 0;
    double tolerance = 1e-6;
    int threads = 0; // 0: hardware concurrency
};

struct RoofResult {
    double estimate = 0.0; // upper estimate of the convex roof
    std::vector<double> best_weights;
    std::vector<PureState> best_states;
    bool converged = false;
    double residual = 0.0; // max entrywise |sum p_i psi_i psi_i^dag - rho|
};

/// Minimizes sum p_i C_{q,s}(psi_i) over decompositions
///   sqrt(p_i) psi_i = sum_j U_ij sqrt(mu_j) e_j,  U an L x rank isometry,
/// by Givens-rotation pattern search from seeded restarts. Bipartition is
/// subsystem 0 versus the rest. Product of dims must be <= 16.
RoofResult roof_estimate(const DensityMatrix& rho, const ParamPair& p, const RoofConfig& cfg = {});

struct SandwichReport {
    double lower = 0.0;
    double upper = 0.0;
    bool consistent = false;
};

/// bound_auto below, roof_estimate above.
SandwichReport sandwich_check(const DensityMatrix& rho, const ParamPair& p, const RoofConfig& cfg = {});

} // namespace qsc

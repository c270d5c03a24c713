#include "qsconc/roof.hpp"

#include "qsconc/bounds.hpp"
#include "qsconc/error.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <random>
#include <string>
#include <thread>

namespace qsc {

namespace {

constexpr double kRankTol = 1e-12;
constexpr double kWeightFloor = 1e-15;

struct Problem {
    DimPair dims;
    ParamPair p;
    ComplexMatrix base; // columns sqrt(mu_j) e_j
};

double spectrum_value(const ParamPair& p, double sum) {
    return std::max(0.0, p.epsilon * (1.0 - std::pow(sum, p.s)));
}

double power_or_zero(double lambda, double q) { return lambda > 0.0 ? std::pow(lambda, q) : 0.0; }

// C_{q,s} of v / |v|, weighted by |v|^2. The Gram matrix is taken on the
// smaller side; 2 x 2 Gram matrices use the closed-form eigenvalues.
double weighted_cost(const Problem& pr, const Eigen::Ref<const ComplexVector>& v) {
    const double weight = v.squaredNorm();
    if (weight < kWeightFloor) return 0.0;
    using RowMat = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
    const Eigen::Map<const RowMat> m(v.data(), pr.dims.dA, pr.dims.dB);
    const bool rows_small = pr.dims.dA <= pr.dims.dB;
    const int side = rows_small ? pr.dims.dA : pr.dims.dB;
    if (side == 2) {
        const double a = (rows_small ? m.row(0).squaredNorm() : m.col(0).squaredNorm()) / weight;
        const double c = 1.0 - a;
        const Complex b = (rows_small ? m.row(0).dot(m.row(1)) : m.col(0).dot(m.col(1))) / weight;
        const double half = 0.5 * (a - c);
        const double r = std::sqrt(half * half + std::norm(b));
        const double sum = power_or_zero(0.5 + r, pr.p.q) + power_or_zero(0.5 - r, pr.p.q);
        return weight * spectrum_value(pr.p, sum);
    }
    const ComplexMatrix gram = rows_small ? ComplexMatrix(m * m.adjoint() / weight)
                                          : ComplexMatrix(m.adjoint() * m / weight);
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(gram, Eigen::EigenvaluesOnly);
    double sum = 0.0;
    for (Eigen::Index k = 0; k < solver.eigenvalues().size(); ++k) {
        sum += power_or_zero(solver.eigenvalues()(k), pr.p.q);
    }
    return weight * spectrum_value(pr.p, sum);
}

struct RestartResult {
    double cost = 0.0;
    ComplexMatrix vectors;
    bool converged = false;
};

std::uint64_t restart_seed(std::uint64_t seed, int restart) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(restart)};
    std::uint32_t out[2];
    seq.generate(out, out + 2);
    return (static_cast<std::uint64_t>(out[0]) << 32) | out[1];
}

RestartResult run_restart(const Problem& pr, int length, int restart, const RoofConfig& cfg) {
    const int rank = static_cast<int>(pr.base.cols());
    const int n = static_cast<int>(pr.base.rows());

    // Restart 0 starts from the eigen-ensemble, the rest from Haar isometries.
    ComplexMatrix iso = ComplexMatrix::Zero(length, rank);
    if (restart == 0) {
        iso.topRows(rank) = ComplexMatrix::Identity(rank, rank);
    } else {
        iso = haar_random_unitary(length, restart_seed(cfg.seed, restart)).leftCols(rank);
    }
    ComplexMatrix vecs(n, length); // column i is sqrt(p_i) psi_i
    vecs.noalias() = pr.base * iso.transpose();

    std::vector<double> costs(static_cast<std::size_t>(length));
    double total = 0.0;
    for (int i = 0; i < length; ++i) {
        costs[static_cast<std::size_t>(i)] = weighted_cost(pr, vecs.col(i));
        total += costs[static_cast<std::size_t>(i)];
    }

    const Complex phases[2] = {Complex(1.0, 0.0), Complex(0.0, 1.0)};
    double step = cfg.initial_step;
    bool converged = false;
    ComplexVector vi(n), vj(n);
    for (int sweep = 0; sweep < cfg.iterations; ++sweep) {
        bool improved = false;
        for (int i = 0; i < length; ++i) {
            for (int j = i + 1; j < length; ++j) {
                const auto ui = static_cast<std::size_t>(i);
                const auto uj = static_cast<std::size_t>(j);
                for (const Complex& phase : phases) {
                    for (double theta : {step, -step}) {
                        const double c = std::cos(theta);
                        const double s = std::sin(theta);
                        vi = c * vecs.col(i) + phase * s * vecs.col(j);
                        vj = -std::conj(phase) * s * vecs.col(i) + c * vecs.col(j);
                        const double ci = weighted_cost(pr, vi);
                        const double cj = weighted_cost(pr, vj);
                        const double delta = ci + cj - costs[ui] - costs[uj];
                        if (delta < -1e-15) {
                            vecs.col(i) = vi;
                            vecs.col(j) = vj;
                            costs[ui] = ci;
                            costs[uj] = cj;
                            total += delta;
                            improved = true;
                        }
                    }
                }
            }
        }
        if (!improved) {
            step *= cfg.step_decay;
            if (step < cfg.min_step) {
                converged = true;
                break;
            }
        }
    }
    // fresh sum, free of accumulated rounding
    total = 0.0;
    for (double c : costs) total += c;
    return {total, std::move(vecs), converged};
}

} // namespace

RoofResult roof_estimate(const DensityMatrix& rho, const ParamPair& p, const RoofConfig& cfg) {
    if (!p.supported()) throw Error(ErrorKind::UnsupportedRegime, "(q,s) lies in neither regime");
    if (rho.dimension() > 16) {
        throw Error(ErrorKind::TooLarge, "roof search is limited to total dimension 16, got " +
                                             std::to_string(rho.dimension()));
    }
    if (cfg.restarts < 1 || cfg.iterations < 1 || !(cfg.initial_step > 0.0) || !(cfg.step_decay > 0.0) ||
        !(cfg.step_decay < 1.0)) {
        throw Error(ErrorKind::RangeError, "invalid roof configuration");
    }

    Problem pr;
    pr.dims = rho.bipartite();
    pr.p = p;
    const HermitianEigen eig = hermitian_eigen(rho.matrix);
    int rank = 0;
    for (double mu : eig.values) rank += mu > kRankTol ? 1 : 0;
    rank = std::max(rank, 1);
    pr.base.resize(rho.dimension(), rank);
    for (int j = 0; j < rank; ++j) {
        pr.base.col(j) = eig.vectors.col(j) * std::sqrt(std::max(0.0, eig.values[static_cast<std::size_t>(j)]));
    }

    const int length = cfg.decomposition_length > 0 ? cfg.decomposition_length : 2 * rank;
    if (length < rank) {
        throw Error(ErrorKind::RangeError, "decomposition length " + std::to_string(length) +
                                               " is below the rank " + std::to_string(rank));
    }

    std::vector<RestartResult> results(static_cast<std::size_t>(cfg.restarts));
    std::atomic<int> next{0};
    auto worker = [&] {
        for (int r = next++; r < cfg.restarts; r = next++) {
            results[static_cast<std::size_t>(r)] = run_restart(pr, length, r, cfg);
        }
    };
    int threads = cfg.threads > 0 ? cfg.threads : static_cast<int>(std::thread::hardware_concurrency());
    threads = std::clamp(threads, 1, cfg.restarts);
    std::vector<std::thread> pool;
    for (int t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();

    std::size_t best = 0;
    for (std::size_t r = 1; r < results.size(); ++r) {
        if (results[r].cost < results[best].cost) best = r;
    }
    const RestartResult& win = results[best];

    RoofResult out;
    out.estimate = std::max(0.0, win.cost);
    out.converged = win.converged;
    ComplexMatrix rebuilt = ComplexMatrix::Zero(rho.dimension(), rho.dimension());
    for (int i = 0; i < length; ++i) {
        const ComplexVector v = win.vectors.col(i);
        const double weight = v.squaredNorm();
        rebuilt += v * v.adjoint();
        if (weight < kWeightFloor) continue;
        out.best_weights.push_back(weight);
        out.best_states.push_back(PureState{rho.dims, v / std::sqrt(weight)});
    }
    out.residual = (rebuilt - rho.matrix).cwiseAbs().maxCoeff();
    return out;
}

SandwichReport sandwich_check(const DensityMatrix& rho, const ParamPair& p, const RoofConfig& cfg) {
    SandwichReport report;
    report.lower = bound_auto(rho, p).lower_bound.value_or(0.0);
    report.upper = roof_estimate(rho, p, cfg).estimate;
    report.consistent = report.lower <= report.upper + cfg.tolerance;
    return report;
}

} // namespace qsc

#include "qsconc/error.hpp"
#include "qsconc/inequalities.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace qsc;

namespace {

ErrorKind kind_of(auto&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.kind();
    }
    FAIL("no error thrown");
    return ErrorKind::NonFinite;
}

GenSchmidt3 reference_state() {
    GenSchmidt3 g;
    g.lambda = {std::sqrt(2.0 / 7), std::sqrt(1.0 / 7), std::sqrt(1.0 / 7), std::sqrt(3.0 / 7), 0.0};
    return g;
}

GenSchmidt3 random_gen3(std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> n(0.0, 1.0);
    std::uniform_real_distribution<double> u(0.0, 2.0 * M_PI);
    GenSchmidt3 g;
    double total = 0.0;
    for (double& l : g.lambda) total += (l = std::abs(n(rng))) * l;
    for (double& l : g.lambda) l /= std::sqrt(total);
    g.phi = u(rng);
    return g;
}

const std::vector<std::pair<double, double>> kRegimeA = {{2, 1}, {2, 2}, {3, 1}, {1.5, 1}, {1, 2}, {4, 0.5}};

} // namespace

TEST_CASE("marginals") {
    for (int j = 0; j < 3; ++j) {
        CHECK(marginal_cqs(basis_state({2, 2, 2}, {0, 1, 0}), j, classify(2, 1)) == doctest::Approx(0.0));
        CHECK(marginal_cqs(ghz_state(3), j, classify(2, 1)) == doctest::Approx(0.5));
        CHECK(marginal_cqs(w_state(3), j, classify(2, 1)) == doctest::Approx(4.0 / 9.0));
    }
    CHECK(kind_of([] { marginal_cqs(ghz_state(3), 3, classify(2, 1)); }) == ErrorKind::IndexOutOfRange);
    CHECK(kind_of([] { marginal_cqs(ghz_state(3), 0, classify(0.5, 0.5)); }) == ErrorKind::UnsupportedRegime);
}

TEST_CASE("polygon inequalities") {
    CHECK(polygon_check(ghz_state(3), classify(2, 1)).violations.empty());
    CHECK(polygon_check(basis_state({2, 3, 2}, {0, 0, 0}), classify(2, 1)).violations.empty());
    int total = 0;
    for (std::uint64_t seed = 0; seed < 500; ++seed) {
        std::mt19937_64 rng(seed);
        const int n = 3 + static_cast<int>(seed % 2);
        std::vector<int> dims;
        for (int i = 0; i < n; ++i) dims.push_back(2 + static_cast<int>(rng() % (n == 4 ? 2 : 3)));
        const PureState psi = haar_random_pure(dims, 9000 + seed);
        auto [q, s] = kRegimeA[seed % kRegimeA.size()];
        const auto report = polygon_check(psi, classify(q, s));
        CHECK(report.violations.empty());
        for (double m : report.marginals) CHECK(m >= -1e-12);
        ++total;
    }
    CHECK(total == 500);
    // a two-party state can sit on the boundary only; the check needs three
    CHECK(kind_of([] { polygon_check(max_entangled(2), classify(2, 1)); }) == ErrorKind::BadPartition);
}

TEST_CASE("group polygon inequalities") {
    const PureState psi = haar_random_pure({2, 3, 2}, 5);
    const auto single = polygon_group_check(psi, {1}, classify(2, 2));
    CHECK(single.group_lhs == doctest::Approx(single.group_rhs).epsilon(1e-12));

    const auto ghz = polygon_group_check(ghz_state(4), {0, 1}, classify(2, 1));
    CHECK(ghz.group_lhs == doctest::Approx(0.5));
    CHECK(ghz.group_rhs == doctest::Approx(1.0));
    CHECK(ghz.violations.empty());

    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        const std::vector<int> dims = {2, 2 + static_cast<int>(seed % 2), 2, 2 + static_cast<int>((seed / 2) % 2)};
        const PureState state = haar_random_pure(dims, 300 + seed);
        auto [q, s] = kRegimeA[seed % kRegimeA.size()];
        for (const Cut& a : {Cut{0, 1}, Cut{0, 2}, Cut{0, 3}}) {
            CHECK(polygon_group_check(state, a, classify(q, s)).violations.empty());
        }
    }
    CHECK(kind_of([&] { polygon_group_check(psi, {}, classify(2, 1)); }) == ErrorKind::BadPartition);
    CHECK(kind_of([&] { polygon_group_check(psi, {0, 1, 2}, classify(2, 1)); }) == ErrorKind::BadPartition);
    CHECK(kind_of([&] { polygon_group_check(psi, {0, 0}, classify(2, 1)); }) == ErrorKind::BadPartition);
}

TEST_CASE("monogamy residual examples") {
    const auto prod = monogamy_residual_qubits(basis_state({2, 2, 2}, {1, 0, 1}), classify(2, 1));
    CHECK(prod.K == doctest::Approx(0.0));
    CHECK(prod.tau == doctest::Approx(0.0));

    const auto ex = monogamy_residual_qubits(gen_schmidt3(reference_state()), classify(2, 1));
    CHECK(ex.K == doctest::Approx(32.0 / 49.0));
    // basis order puts C(A|B) = 2 l0 l3 first
    CHECK(ex.K_parts[0] == doctest::Approx(24.0 / 49.0));
    CHECK(ex.K_parts[1] == doctest::Approx(8.0 / 49.0));
    const auto closed = monogamy_residual_gen3(reference_state(), classify(2, 1));
    CHECK(closed.K_parts[0] == doctest::Approx(ex.K_parts[0]));
    CHECK(closed.K_parts[1] == doctest::Approx(ex.K_parts[1]));
    CHECK(std::abs(ex.tau) <= 1e-9);

    GenSchmidt3 ghz;
    ghz.lambda = {1.0 / std::sqrt(2.0), 0, 0, 0, 1.0 / std::sqrt(2.0)};
    const auto g = monogamy_residual_gen3(ghz, classify(2, 1));
    CHECK(g.tau == doctest::Approx(1.0));
    CHECK(g.K == doctest::Approx(1.0));

    CHECK(std::abs(monogamy_residual_gen3(reference_state(), classify(2, 1)).tau) <= 1e-9);
    CHECK(monogamy_residual_gen3(reference_state(), classify(4, 1), WindowPolicy::Extrapolate).tau < 0.0);
    CHECK(monogamy_residual_gen3(reference_state(), classify(8, 0.4), WindowPolicy::Extrapolate).tau >= 0.0);
}

TEST_CASE("monogamy errors") {
    CHECK(kind_of([] { monogamy_residual_gen3(reference_state(), classify(4, 1)); }) == ErrorKind::ParamsOutsideTheorem5);
    CHECK(kind_of([] { monogamy_residual_qubits(ghz_state(3), classify(1.5, 1)); }) ==
          ErrorKind::ParamsOutsideTheorem5);
    CHECK(kind_of([] { monogamy_residual_qubits(haar_random_pure({2, 3, 2}, 1), classify(2, 1)); }) ==
          ErrorKind::NotQubits);
    const AnyState mixed = random_mixed({2, 2, 2}, 2, 3);
    CHECK(kind_of([&] { monogamy_residual_qubits(mixed, classify(2, 1)); }) == ErrorKind::MixedGlobalState);
    const AnyState rank_one = DensityMatrix::from_pure(ghz_state(3));
    CHECK(monogamy_residual_qubits(rank_one, classify(2, 1)).tau == doctest::Approx(1.0));
    const auto out = monogamy_residual_gen3(reference_state(), classify(9, 0.4), WindowPolicy::Extrapolate);
    CHECK_FALSE(out.in_window);
}

TEST_CASE("closed form agrees with the matrix path") {
    const std::vector<std::pair<double, double>> grid = {{2, 1}, {3, 1}, {2, 0.5}, {3, 0.5}, {2.5, 0.8}, {6, 0.4}};
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        const GenSchmidt3 g = random_gen3(seed);
        auto [q, s] = grid[seed % grid.size()];
        const auto a = monogamy_residual_gen3(g, classify(q, s));
        const auto b = monogamy_residual_qubits(gen_schmidt3(g), classify(q, s));
        CHECK(std::abs(a.K - b.K) <= 1e-9);
        CHECK(std::abs(a.tau - b.tau) <= 1e-9);
    }
}

TEST_CASE("monogamy and CKW on random qubit states") {
    const std::vector<std::pair<double, double>> grid = {{2, 0.5}, {2, 1}, {2.5, 0.6}, {3, 1}, {4, 0.5}, {6, 0.5}};
    for (std::uint64_t seed = 0; seed < 300; ++seed) {
        const int n = 3 + static_cast<int>(seed % 2);
        const PureState psi = haar_random_pure(std::vector<int>(static_cast<std::size_t>(n), 2), 4000 + seed);
        for (auto [q, s] : grid) CHECK(monogamy_residual_qubits(psi, classify(q, s)).tau >= -1e-9);

        const double c = concurrence_pure(psi, Cut{0});
        double pairs = 0.0;
        for (int i = 1; i < n; ++i) {
            const double ci = wootters_concurrence_factor(coefficient_matrix(psi, Cut{0, i}));
            pairs += ci * ci;
        }
        CHECK(c * c - pairs >= -1e-9);
    }
}

TEST_CASE("reference three-qubit residual along q") {
    const GenSchmidt3 g = reference_state();
    auto tau = [&](double q, double s) { return monogamy_residual_gen3(g, classify(q, s), WindowPolicy::Extrapolate).tau; };
    CHECK(tau(3.0, 1.0) >= -1e-6);
    CHECK(tau(3.0 + 1e-3, 1.0) < 0.0);
    CHECK(tau(4.0, 1.0) < 0.0);
    for (int k = 0; k <= 616; ++k) CHECK(tau(2.0 + 0.01 * k, 0.4) >= -1e-9);
    // sign change sits at 8.1693, quoted as 8.17
    double lo = 8.0, hi = 9.0;
    while (hi - lo > 1e-9) ((tau(0.5 * (lo + hi), 0.4) >= 0.0) ? lo : hi) = 0.5 * (lo + hi);
    CHECK(lo == doctest::Approx(8.17).epsilon(0.005 / 8.17));
    CHECK(tau(9.0, 0.4) < 0.0);
}

#include "qsconc/error.hpp"
#include "qsconc/state_io.hpp"

#include <doctest.h>

#include <cstdio>
#include <fstream>

using namespace qsc;

namespace {

ErrorKind parse_error(const std::string& text) {
    try {
        parse_state_json(text);
    } catch (const Error& e) {
        return e.kind();
    }
    FAIL("no error thrown");
    return ErrorKind::NonFinite;
}

} // namespace

TEST_CASE("pure state file") {
    const auto state = parse_state_json(
        R"({"kind": "pure", "dims": [2, 2], "data": [[0.7071067811865476, 0], [0, 0], [0, 0], [0.7071067811865476, 0]]})");
    REQUIRE(std::holds_alternative<PureState>(state));
    const auto& psi = std::get<PureState>(state);
    CHECK(psi.dims == std::vector<int>{2, 2});
    CHECK(schmidt(psi).values[0] == doctest::Approx(0.5));
}

TEST_CASE("density file is read row-major") {
    const auto state = parse_state_json(
        R"({"kind": "density", "dims": [2], "data": [[0.6, 0], [0, 0.2], [0, -0.2], [0.4, 0]]})");
    REQUIRE(std::holds_alternative<DensityMatrix>(state));
    const auto& rho = std::get<DensityMatrix>(state);
    CHECK(rho.matrix(0, 1) == Complex(0.0, 0.2));
    CHECK(rho.matrix(1, 0) == Complex(0.0, -0.2));
}

TEST_CASE("round trip") {
    const PureState psi = haar_random_pure({2, 3}, 8);
    const auto back = std::get<PureState>(parse_state_json(to_json(psi)));
    CHECK(back.amplitudes.isApprox(psi.amplitudes, 1e-15));
    const DensityMatrix rho = random_mixed({2, 2}, 3, 8);
    const auto back_rho = std::get<DensityMatrix>(parse_state_json(to_json(rho)));
    CHECK(back_rho.matrix.isApprox(rho.matrix, 1e-15));
    CHECK(as_density(back).matrix.isApprox(psi.projector(), 1e-14));
}

TEST_CASE("schema errors") {
    CHECK(parse_error("not json") == ErrorKind::InvalidStateFile);
    CHECK(parse_error(R"({"dims": [2], "data": []})") == ErrorKind::InvalidStateFile);
    CHECK(parse_error(R"({"kind": "mixed", "dims": [2], "data": []})") == ErrorKind::InvalidStateFile);
    CHECK(parse_error(R"({"kind": "pure", "dims": [2], "data": [[1, 0], [0]]})") == ErrorKind::InvalidStateFile);
    CHECK(parse_error(R"({"kind": "pure", "dims": [2.5], "data": [[1, 0], [0, 0]]})") == ErrorKind::InvalidStateFile);
}

TEST_CASE("physical errors name the violated invariant") {
    CHECK(parse_error(R"({"kind": "pure", "dims": [2], "data": [[1, 0], [1, 0]]})") == ErrorKind::NotNormalized);
    CHECK(parse_error(R"({"kind": "pure", "dims": [2, 2], "data": [[1, 0], [0, 0]]})") ==
          ErrorKind::DimensionMismatch);
    CHECK(parse_error(R"({"kind": "density", "dims": [2], "data": [[0.5, 0], [0.3, 0], [0, 0], [0.5, 0]]})") ==
          ErrorKind::NonHermitian);
    CHECK(parse_error(R"({"kind": "density", "dims": [2], "data": [[1.2, 0], [0, 0], [0, 0], [-0.2, 0]]})") ==
          ErrorKind::NotPSD);
}

TEST_CASE("file loading") {
    const std::string path = "test_state_io_tmp.json";
    {
        std::ofstream f(path);
        f << to_json(max_entangled(3));
    }
    const auto state = load_state_file(path);
    CHECK(std::get<PureState>(state).dims == std::vector<int>{3, 3});
    std::remove(path.c_str());
    CHECK_THROWS_AS(load_state_file("no_such_file.json"), Error);
}

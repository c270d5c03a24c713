#include "qsconc/cli.hpp"
#include "qsconc/closed_forms.hpp"
#include "qsconc/state_io.hpp"

#include <doctest.h>

#include <cmath>
#include <fstream>
#include <iomanip>
#include <map>
#include <sstream>

using namespace qsc;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run_cli(std::vector<std::string> args) {
    args.insert(args.begin(), "qsconc");
    std::vector<char*> argv;
    for (auto& a : args) argv.push_back(a.data());
    std::ostringstream out, err;
    const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::string write_state(const std::string& name, const std::string& json) {
    std::ofstream(name) << json;
    return name;
}

std::map<std::string, std::string> records(const std::string& text) {
    std::map<std::string, std::string> out;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        const auto colon = line.find(": ");
        if (colon != std::string::npos) out[line.substr(0, colon)] = line.substr(colon + 2);
    }
    return out;
}

std::vector<std::vector<double>> csv_rows(const std::string& text) {
    std::vector<std::vector<double>> rows;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#' || std::isalpha(static_cast<unsigned char>(line[0]))) continue;
        std::vector<double> row;
        std::istringstream cells(line);
        std::string cell;
        while (std::getline(cells, cell, ',')) row.push_back(cell == "nan" ? NAN : std::stod(cell));
        rows.push_back(row);
    }
    return rows;
}

double num(const std::map<std::string, std::string>& r, const std::string& key) { return std::stod(r.at(key)); }

} // namespace

TEST_CASE("compute") {
    const auto bell = write_state("cli_bell.json", to_json(max_entangled(2)));
    auto r = run_cli({"compute", "--state", bell, "--q", "2", "--s", "1"});
    CHECK(r.code == 0);
    CHECK(num(records(r.out), "value") == doctest::Approx(0.5));
    CHECK(records(r.out)["regime"] == "A");

    const auto prod = write_state("cli_prod.json", to_json(basis_state({2, 2}, {0, 1})));
    r = run_cli({"compute", "--state", prod, "--q", "2", "--s", "1"});
    CHECK(num(records(r.out), "value") == doctest::Approx(0.0));

    r = run_cli({"compute", "--state", bell, "--q", "0.5", "--s", "3"});
    CHECK(r.code == 3);
    CHECK(r.err.find("regime") != std::string::npos);

    r = run_cli({"compute", "--state", bell, "--q", "3", "--s", "0.5", "--normalized"});
    CHECK(num(records(r.out), "value") == doctest::Approx(1.0));

    const auto w = write_state("cli_werner.json", to_json(werner(0.75, 2)));
    r = run_cli({"compute", "--state", w, "--q", "2", "--s", "1", "--normalized"});
    CHECK(num(records(r.out), "value") == doctest::Approx(0.25));

    const auto broken = write_state("cli_broken.json", R"({"kind": "pure", "dims": [2], "data": [[1, 0], [1, 0]]})");
    r = run_cli({"compute", "--state", broken, "--q", "2", "--s", "1"});
    CHECK(r.code == 2);
    CHECK(r.err.find("NotNormalized") != std::string::npos);

    CHECK(run_cli({"compute", "--q", "2"}).code == 2);
    CHECK(run_cli({"nonsense"}).code == 2);
}

TEST_CASE("bound") {
    const auto iso = write_state("cli_iso.json", to_json(isotropic(0.8, 3)));
    auto r = run_cli({"bound", "--state", iso, "--q", "2", "--s", "2"});
    CHECK(r.code == 0);
    auto rec = records(r.out);
    CHECK(num(rec, "ppt_norm") == doctest::Approx(2.4));
    CHECK(num(rec, "lower_bound") == doctest::Approx(0.546622).epsilon(1e-5));
    CHECK(rec["detected_by"] == "Both");

    const auto sep = write_state("cli_sep.json", to_json(isotropic(0.2, 3)));
    rec = records(run_cli({"bound", "--state", sep, "--q", "2", "--s", "2"}).out);
    CHECK(num(rec, "lower_bound") == 0.0);
    CHECK(rec["detected_by"] == "None");

    CHECK(run_cli({"bound", "--state", iso, "--q", "1.5", "--s", "1"}).code == 3);
}

TEST_CASE("closed-form isotropic sweep") {
    auto r = run_cli({"closed-form", "isotropic", "--d", "3", "--q", "2", "--s", "2", "--sweep", "0.34:1.0:0.002"});
    REQUIRE(r.code == 0);
    CHECK(r.out.rfind("# qsconc", 0) == 0);
    CHECK(r.out.find("x,xi,envelope,lower_bound,reference_curve\n") != std::string::npos);
    const auto rows = csv_rows(r.out);
    CHECK(rows.size() == 331);
    for (const auto& row : rows) {
        const double f = row[0];
        const double expected = f <= 0.724 ? xi_isotropic(f, 2, 2, 3) : 1.52 * f - 0.63;
        CHECK(std::abs(row[2] - expected) <= 0.01);
        CHECK(row[4] <= row[2] + 1e-9);
    }
    CHECK(run_cli({"closed-form", "isotropic", "--q", "2", "--s", "2", "--sweep", "0.34:1.0:0"}).code == 2);
    CHECK(run_cli({"closed-form", "isotropic", "--q", "2", "--s", "2", "--sweep", "0.34:1.0:-0.1"}).code == 2);
    CHECK(run_cli({"closed-form", "isotropic", "--q", "2", "--s", "0.4", "--sweep", "0.34:1.0:0.1"}).code == 3);
}

TEST_CASE("closed-form Werner sweep") {
    auto r = run_cli({"closed-form", "werner", "--q", "3", "--s", "2", "--sweep", "0.5:1.0:0.002"});
    REQUIRE(r.code == 0);
    const auto rows = csv_rows(r.out);
    CHECK(rows.size() == 251);
    for (const auto& row : rows) {
        CHECK(row[3] <= row[2] + 1e-9);
        CHECK(row[2] <= row[1] + 1e-9);
        if (row[0] <= 0.95) CHECK(row[2] >= row[4] - 1e-12);
    }
    CHECK(rows.back()[2] < rows.back()[4]);
}

TEST_CASE("CSV output is deterministic") {
    const std::vector<std::string> args = {"closed-form", "isotropic", "--q", "2", "--s", "2", "--sweep", "0.34:1:0.01",
                                           "--seed", "5", "--out"};
    auto a = args, b = args;
    a.push_back("cli_a.csv");
    b.push_back("cli_b.csv");
    REQUIRE(run_cli(a).code == 0);
    REQUIRE(run_cli(b).code == 0);
    auto slurp = [](const std::string& path) {
        std::ifstream f(path);
        std::stringstream ss;
        ss << f.rdbuf();
        std::string text = ss.str();
        return text.substr(text.find('\n'));  // header echoes the differing --out path
    };
    CHECK(slurp("cli_a.csv") == slurp("cli_b.csv"));
    std::ifstream f("cli_a.csv");
    std::string header;
    std::getline(f, header);
    CHECK(header.find("seed: 5") != std::string::npos);
}

TEST_CASE("monogamy") {
    std::ostringstream os;
    os << std::setprecision(17) << std::sqrt(2.0 / 7) << ',' << std::sqrt(1.0 / 7) << ',' << std::sqrt(1.0 / 7) << ','
       << std::sqrt(3.0 / 7) << ",0,0";
    const std::string ref3 = os.str();
    auto r = run_cli({"monogamy", "--gen3", ref3, "--s", "1", "--sweep", "2:10:0.5", "--extrapolate"});
    REQUIRE(r.code == 0);
    auto rows = csv_rows(r.out);
    for (const auto& row : rows) {
        if (row[0] > 2.0 && row[0] < 3.0) CHECK(row[4] > 0.0);
        if (row[0] >= 3.5) CHECK(row[4] < 0.0);
    }
    r = run_cli({"monogamy", "--gen3", ref3, "--s", "0.4", "--sweep", "2:8.1:0.1", "--extrapolate"});
    for (const auto& row : csv_rows(r.out)) CHECK(row[4] >= -1e-6);

    CHECK(run_cli({"monogamy", "--gen3", ref3, "--s", "1", "--q", "4"}).code == 3);

    const auto ghz = write_state("cli_ghz.json", to_json(ghz_state(3)));
    r = run_cli({"monogamy", "--state", ghz, "--q", "2", "--s", "1"});
    REQUIRE(r.code == 0);
    rows = csv_rows(r.out);
    REQUIRE(rows.size() == 1);
    CHECK(rows[0][4] == doctest::Approx(1.0));
}

TEST_CASE("polygon") {
    const auto ghz = write_state("cli_ghz3.json", to_json(ghz_state(3)));
    auto r = run_cli({"polygon", "--state", ghz, "--q", "2", "--s", "1"});
    CHECK(r.code == 0);
    CHECK(records(r.out)["violations"] == "none");
    const auto qutrits = write_state("cli_qutrits.json", to_json(haar_random_pure({3, 3, 3}, 21)));
    r = run_cli({"polygon", "--state", qutrits, "--q", "2", "--s", "2"});
    CHECK(records(r.out)["violations"] == "none");
    r = run_cli({"polygon", "--state", qutrits, "--q", "2", "--s", "2", "--group", "0,1"});
    CHECK(records(r.out)["violations"] == "none");
}

TEST_CASE("roof") {
    const auto w = write_state("cli_werner75.json", to_json(werner(0.75, 2)));
    auto r = run_cli({"roof", "--state", w, "--q", "2", "--s", "1", "--restarts", "4", "--seed", "3"});
    REQUIRE(r.code == 0);
    const auto rec = records(r.out);
    CHECK(std::abs(num(rec, "estimate_upper") - 0.125) <= 5e-3);
    CHECK(rec.at("note").find("upper estimate") != std::string::npos);
}

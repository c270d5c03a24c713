#include "qsconc/state_io.hpp"

#include "qsconc/error.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace qsc {

namespace {

using nlohmann::json;

[[noreturn]] void bad_file(const std::string& what) {
    throw Error(ErrorKind::InvalidStateFile, what);
}

std::vector<Complex> read_data(const json& data) {
    if (!data.is_array()) bad_file("\"data\" must be an array of [re, im] pairs");
    std::vector<Complex> out;
    out.reserve(data.size());
    for (std::size_t i = 0; i < data.size(); ++i) {
        const json& pair = data[i];
        if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number() || !pair[1].is_number()) {
            bad_file("\"data\"[" + std::to_string(i) + "] is not a [re, im] number pair");
        }
        out.emplace_back(pair[0].get<double>(), pair[1].get<double>());
    }
    return out;
}

json write_data(const Complex* values, Eigen::Index count) {
    json data = json::array();
    for (Eigen::Index i = 0; i < count; ++i) data.push_back({values[i].real(), values[i].imag()});
    return data;
}

} // namespace

AnyState parse_state_json(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        bad_file(std::string("malformed JSON: ") + e.what());
    }
    if (!doc.is_object()) bad_file("top level must be an object");
    for (const char* key : {"kind", "dims", "data"}) {
        if (!doc.contains(key)) bad_file(std::string("missing field \"") + key + "\"");
    }
    if (!doc["kind"].is_string()) bad_file("\"kind\" must be a string");
    const std::string kind = doc["kind"].get<std::string>();
    if (kind != "pure" && kind != "density") bad_file("\"kind\" must be \"pure\" or \"density\"");

    const json& jdims = doc["dims"];
    if (!jdims.is_array() || jdims.empty()) bad_file("\"dims\" must be a nonempty array");
    std::vector<int> dims;
    for (const json& d : jdims) {
        if (!d.is_number_integer()) bad_file("\"dims\" entries must be integers");
        dims.push_back(d.get<int>());
    }
    for (int d : dims) {
        if (d < 2) throw Error(ErrorKind::DimensionMismatch, "subsystem dimension " + std::to_string(d) + " < 2");
    }

    const std::vector<Complex> data = read_data(doc["data"]);
    const Eigen::Index n = total_dimension(dims);
    if (kind == "pure") {
        if (static_cast<Eigen::Index>(data.size()) != n) {
            throw Error(ErrorKind::DimensionMismatch,
                        "pure state needs " + std::to_string(n) + " amplitudes, got " +
                            std::to_string(data.size()));
        }
        ComplexVector amps = Eigen::Map<const ComplexVector>(data.data(), n);
        return PureState::make(std::move(dims), std::move(amps));
    }
    if (static_cast<Eigen::Index>(data.size()) != n * n) {
        throw Error(ErrorKind::DimensionMismatch,
                    "density matrix needs " + std::to_string(n * n) + " entries, got " +
                        std::to_string(data.size()));
    }
    ComplexMatrix m(n, n);
    for (Eigen::Index r = 0; r < n; ++r)
        for (Eigen::Index c = 0; c < n; ++c) m(r, c) = data[static_cast<std::size_t>(r * n + c)];
    return DensityMatrix::make(std::move(dims), std::move(m));
}

AnyState load_state_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) bad_file("cannot open " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_state_json(buf.str());
}

std::string to_json(const PureState& psi) {
    json doc;
    doc["kind"] = "pure";
    doc["dims"] = psi.dims;
    doc["data"] = write_data(psi.amplitudes.data(), psi.amplitudes.size());
    return doc.dump();
}

std::string to_json(const DensityMatrix& rho) {
    // Eigen is column-major by default; the file format is row-major.
    const Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> rm = rho.matrix;
    json doc;
    doc["kind"] = "density";
    doc["dims"] = rho.dims;
    doc["data"] = write_data(rm.data(), rm.size());
    return doc.dump();
}

DensityMatrix as_density(const AnyState& state) {
    if (const auto* psi = std::get_if<PureState>(&state)) return DensityMatrix::from_pure(*psi);
    return std::get<DensityMatrix>(state);
}

} // namespace qsc

#include "qsconc/cli.hpp"

#include "qsconc/bounds.hpp"
#include "qsconc/closed_forms.hpp"
#include "qsconc/error.hpp"
#include "qsconc/inequalities.hpp"
#include "qsconc/measures.hpp"
#include "qsconc/roof.hpp"
#include "qsconc/state_io.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <exception>
#include <fstream>
#include <functional>
#include <iomanip>
#include <limits>
#include <optional>
#include <sstream>
#include <thread>

namespace qsc::cli {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

ParamPair make_params(double q, double s) {
    try {
        return classify(q, s);
    } catch (const Error& e) {
        // q <= 0 or s <= 0 is outside both regimes, not a malformed file
        throw Error(ErrorKind::UnsupportedRegime, e.what());
    }
}

std::string command_line(int argc, char** argv) {
    std::string text;
    for (int i = 0; i < argc; ++i) {
        if (i) text += ' ';
        text += argv[i];
    }
    return text;
}

// Runs body(k) for k in [0, n) on a small pool. The first failing row (by
// index, not by time) is rethrown so errors are reproducible.
void parallel_rows(int n, const std::function<void(int)>& body) {
    std::vector<std::exception_ptr> failures(static_cast<std::size_t>(n));
    std::atomic<int> next{0};
    auto worker = [&] {
        for (int k = next++; k < n; k = next++) {
            try {
                body(k);
            } catch (...) {
                failures[static_cast<std::size_t>(k)] = std::current_exception();
            }
        }
    };
    int threads = std::clamp(static_cast<int>(std::thread::hardware_concurrency()), 1, std::max(1, n));
    std::vector<std::thread> pool;
    for (int t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
    for (auto& f : failures) {
        if (f) std::rethrow_exception(f);
    }
}

class Output {
public:
    Output(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
        if (!path.empty()) {
            file_.open(path);
            if (!file_) throw Error(ErrorKind::InvalidStateFile, "cannot open output file " + path);
            stream_ = &file_;
        }
    }
    std::ostream& operator*() { return *stream_; }

private:
    std::ofstream file_;
    std::ostream* stream_;
};

void csv_header(std::ostream& os, const std::string& cmdline, std::uint64_t seed) {
    os << "# qsconc " << kVersion << "; command: " << cmdline << "; seed: " << seed << '\n';
}

void record(std::ostream& os, const std::string& key, double value) {
    os << key << ": " << format_real(value) << '\n';
}

void record(std::ostream& os, const std::string& key, const std::string& value) {
    os << key << ": " << value << '\n';
}

std::vector<double> parse_list(const std::string& text) {
    std::vector<double> values;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            values.push_back(std::stod(item, &used));
            if (used != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw Error(ErrorKind::RangeError, "cannot parse number '" + item + "'");
        }
    }
    return values;
}

struct Common {
    std::string state;
    double q = 2.0;
    double s = 1.0;
    std::string out;
    std::uint64_t seed = 0;
};

int cmd_compute(const Common& c, bool normalized, std::ostream& out) {
    const ParamPair p = make_params(c.q, c.s);
    const AnyState state = load_state_file(c.state);
    double value = 0.0;
    std::string method;
    if (const auto* psi = std::get_if<PureState>(&state)) {
        if (normalized) {
            value = normalized_cqs_pure(*psi, p).value;
        } else {
            value = cqs_pure(*psi, p).value;
        }
        method = "pure";
    } else {
        const auto& rho = std::get<DensityMatrix>(state);
        if (rho.dims != std::vector<int>{2, 2}) {
            throw Error(ErrorKind::DimensionMismatch,
                        "mixed-state values are only exact for two qubits; use `roof` for an upper estimate");
        }
        value = cqs_mixed_two_qubit(rho, p).value;
        if (!normalized) value *= normalization_factor(p);
        method = "two-qubit";
    }
    record(out, "value", value);
    record(out, "regime", std::string(to_string(p.regime)));
    record(out, "epsilon", std::to_string(p.epsilon));
    record(out, "normalized", normalized ? "true" : "false");
    record(out, "method", method);
    return kOk;
}

int cmd_bound(const Common& c, std::ostream& out) {
    const ParamPair p = make_params(c.q, c.s);
    const DensityMatrix rho = as_density(load_state_file(c.state));
    const BoundReport report = bound_auto(rho, p);
    record(out, "ppt_norm", report.ppt_norm);
    record(out, "realign_norm", report.realign_norm);
    record(out, "detected_by", std::string(to_string(report.detected_by)));
    record(out, "m", std::to_string(report.m));
    record(out, "theorem", report.theorem == BoundTheorem::RegimeA ? "RegimeA" : "RegimeB");
    record(out, "lower_bound", report.lower_bound.value_or(0.0));
    return kOk;
}

int cmd_closed_form(const Common& c, const std::string& family, int d, const std::string& sweep_text,
                    const std::string& method_name, const std::string& cmdline, std::ostream& fallback) {
    const bool iso = family == "isotropic";
    if (!iso && family != "werner") throw Error(ErrorKind::RangeError, "family must be isotropic or werner");
    if (d == 0) d = iso ? 3 : 2;
    if (d < 2) throw Error(ErrorKind::RangeError, "--d must be >= 2");
    const SweepSpec sweep = parse_sweep(sweep_text);
    if (sweep.start < 0.0 || sweep.at(sweep.count() - 1) > 1.0 + 1e-12) {
        throw Error(ErrorKind::RangeError, "sweep must stay inside [0, 1]");
    }
    const EnvelopeMethod method = method_name == "hull" ? EnvelopeMethod::TangentHull : EnvelopeMethod::InflectionChord;
    if (method_name != "hull" && method_name != "chord") throw Error(ErrorKind::RangeError, "--method is chord or hull");

    const ParamPair p = make_params(c.q, c.s);
    const EnvelopeCurve env = iso ? isotropic_envelope(c.q, c.s, d, method) : werner_envelope(c.q, c.s, method);

    const int n = sweep.count();
    std::vector<std::array<double, 5>> rows(static_cast<std::size_t>(n));
    parallel_rows(n, [&](int k) {
        const double x = std::clamp(sweep.at(k), 0.0, 1.0);
        double xi = kNaN;
        if (x >= env.sep_threshold - 1e-12) xi = iso ? xi_isotropic(x, c.q, c.s, d) : xi_werner(x, c.q, c.s);
        double lower = kNaN;
        try {
            const DensityMatrix rho = iso ? isotropic(x, d) : werner(x, d);
            lower = bound_auto(rho, p).lower_bound.value_or(kNaN);
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::NoApplicableBound) throw;
        }
        double reference = kNaN;
        if (iso && d == 3) reference = reference_q_concurrence_isotropic(x);
        if (!iso) reference = reference_c3t_werner(x);
        rows[static_cast<std::size_t>(k)] = {x, xi, env(x), lower, reference};
    });

    Output sink(c.out, fallback);
    std::ostream& os = *sink;
    csv_header(os, cmdline, c.seed);
    os << "# breakpoint " << format_real(env.breakpoint) << ", tail " << format_real(env.slope) << "*x + "
       << format_real(env.intercept) << ", junction " << format_real(env.junction) << '\n';
    os << "x,xi,envelope,lower_bound,reference_curve\n";
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << format_real(row[i]);
        os << '\n';
    }
    return kOk;
}

int cmd_monogamy(const Common& c, const std::vector<double>& q_list, const std::vector<double>& s_list,
                 const std::string& sweep_text, const std::string& gen3_text, bool extrapolate,
                 const std::string& cmdline, std::ostream& fallback) {
    std::vector<double> qs = q_list;
    if (!sweep_text.empty()) {
        const SweepSpec sweep = parse_sweep(sweep_text);
        qs.clear();
        for (int k = 0; k < sweep.count(); ++k) qs.push_back(sweep.at(k));
    }
    if (qs.empty() || s_list.empty()) throw Error(ErrorKind::RangeError, "need at least one q and one s");
    if (c.state.empty() == gen3_text.empty()) throw Error(ErrorKind::RangeError, "give exactly one of --state or --gen3");

    std::optional<AnyState> state;
    std::optional<GenSchmidt3> gen;
    if (!c.state.empty()) {
        state = load_state_file(c.state);
    } else {
        const std::vector<double> v = parse_list(gen3_text);
        if (v.size() != 6) throw Error(ErrorKind::RangeError, "--gen3 takes l0,l1,l2,l3,l4,phi");
        GenSchmidt3 g;
        for (int i = 0; i < 5; ++i) g.lambda[static_cast<std::size_t>(i)] = v[static_cast<std::size_t>(i)];
        g.phi = v[5];
        gen_schmidt3(g);
        gen = g;
    }
    const WindowPolicy policy = extrapolate ? WindowPolicy::Extrapolate : WindowPolicy::Enforce;

    struct Row {
        double q, s;
        MonogamyReport report;
    };
    std::vector<Row> rows;
    for (double s : s_list) {
        for (double q : qs) rows.push_back({q, s, {}});
    }
    parallel_rows(static_cast<int>(rows.size()), [&](int k) {
        Row& row = rows[static_cast<std::size_t>(k)];
        const ParamPair p = make_params(row.q, row.s);
        row.report = gen ? monogamy_residual_gen3(*gen, p, policy) : monogamy_residual_qubits(*state, p, policy);
    });

    Output sink(c.out, fallback);
    std::ostream& os = *sink;
    csv_header(os, cmdline, c.seed);
    os << "q,s,K,K_sum,tau,in_window\n";
    for (const Row& row : rows) {
        double sum = 0.0;
        for (double part : row.report.K_parts) sum += part;
        os << format_real(row.q) << ',' << format_real(row.s) << ',' << format_real(row.report.K) << ','
           << format_real(sum) << ',' << format_real(row.report.tau) << ',' << (row.report.in_window ? 1 : 0)
           << '\n';
    }
    return kOk;
}

int cmd_polygon(const Common& c, const std::string& group_text, double tol, std::ostream& out) {
    const ParamPair p = make_params(c.q, c.s);
    const AnyState state = load_state_file(c.state);
    const auto* psi = std::get_if<PureState>(&state);
    if (!psi) throw Error(ErrorKind::MixedGlobalState, "polygon inequalities need a pure state file");
    PolygonReport report;
    if (group_text.empty()) {
        report = polygon_check(*psi, p, tol);
    } else {
        Cut group;
        for (double v : parse_list(group_text)) group.push_back(static_cast<int>(v));
        report = polygon_group_check(*psi, group, p, tol);
        record(out, "group_lhs", report.group_lhs);
        record(out, "group_rhs", report.group_rhs);
    }
    for (std::size_t j = 0; j < report.marginals.size(); ++j) {
        record(out, "marginal[" + std::to_string(j) + "]", report.marginals[j]);
    }
    std::string violations;
    for (int j : report.violations) violations += (violations.empty() ? "" : ",") + std::to_string(j);
    record(out, "violations", violations.empty() ? "none" : violations);
    return kOk;
}

int cmd_roof(const Common& c, const RoofConfig& base, std::ostream& out) {
    const ParamPair p = make_params(c.q, c.s);
    const DensityMatrix rho = as_density(load_state_file(c.state));
    RoofConfig cfg = base;
    cfg.seed = c.seed;
    const RoofResult result = roof_estimate(rho, p, cfg);
    record(out, "estimate_upper", result.estimate);
    if (std::abs(p.q - 1.0) >= 1e-12) record(out, "normalized_estimate_upper", result.estimate / normalization_factor(p));
    record(out, "converged", result.converged ? "true" : "false");
    record(out, "terms", std::to_string(result.best_weights.size()));
    record(out, "reconstruction_residual", result.residual);
    record(out, "seed", std::to_string(cfg.seed));
    record(out, "note", "numerical upper estimate of the convex roof, not an exact value");
    return kOk;
}

} // namespace

int SweepSpec::count() const {
    return static_cast<int>(std::floor((stop - start) / step + 1e-9)) + 1;
}

SweepSpec parse_sweep(const std::string& text) {
    const auto first = text.find(':');
    const auto second = first == std::string::npos ? std::string::npos : text.find(':', first + 1);
    if (second == std::string::npos) throw Error(ErrorKind::RangeError, "sweep must be START:STOP:STEP");
    SweepSpec spec;
    try {
        std::size_t used = 0;
        spec.start = std::stod(text.substr(0, first), &used);
        spec.stop = std::stod(text.substr(first + 1, second - first - 1), &used);
        spec.step = std::stod(text.substr(second + 1), &used);
    } catch (const std::exception&) {
        throw Error(ErrorKind::RangeError, "cannot parse sweep '" + text + "'");
    }
    if (!(spec.step > 0.0)) throw Error(ErrorKind::RangeError, "sweep step must be > 0");
    if (!(spec.start < spec.stop)) throw Error(ErrorKind::RangeError, "sweep needs START < STOP");
    if ((spec.stop - spec.start) / spec.step > 1e6) throw Error(ErrorKind::RangeError, "sweep has more than 1e6 points");
    return spec;
}

std::string format_real(double x) {
    if (std::isnan(x)) return "nan";
    std::ostringstream os;
    os.imbue(std::locale::classic());
    os << std::setprecision(12) << x;
    return os.str();
}

int run(int argc, char** argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"unified (q,s)-concurrence toolkit"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kVersion);

    Common c;
    auto add_state = [&](CLI::App* sub, bool required) {
        auto* opt = sub->add_option("--state", c.state, "JSON state file");
        if (required) opt->required();
    };
    auto add_qs = [&](CLI::App* sub) {
        sub->add_option("--q", c.q, "exponent q")->required();
        sub->add_option("--s", c.s, "exponent s")->required();
    };

    bool normalized = false;
    auto* compute = app.add_subcommand("compute", "measure of a state file");
    add_state(compute, true);
    add_qs(compute);
    compute->add_flag("--normalized", normalized, "divide by 1 - 2^{s(1-q)} (qubit side)");

    auto* bound = app.add_subcommand("bound", "PPT / realignment lower bound");
    add_state(bound, true);
    add_qs(bound);

    std::string family, sweep_text, method = "chord";
    int d = 0;
    auto* closed = app.add_subcommand("closed-form", "isotropic / Werner curves as CSV");
    closed->add_option("family", family, "isotropic | werner")->required();
    add_qs(closed);
    closed->add_option("--d", d, "local dimension");
    closed->add_option("--sweep", sweep_text, "START:STOP:STEP over F or w")->required();
    closed->add_option("--method", method, "chord (default) | hull");
    closed->add_option("--out", c.out, "CSV path (stdout if omitted)");
    closed->add_option("--seed", c.seed, "recorded in the header");

    std::vector<double> q_list, s_list;
    std::string gen3_text;
    bool extrapolate = false;
    auto* mono = app.add_subcommand("monogamy", "monogamy residual over a (q,s) grid as CSV");
    add_state(mono, false);
    mono->add_option("--gen3", gen3_text, "l0,l1,l2,l3,l4,phi");
    mono->add_option("--q", q_list, "q values")->delimiter(',');
    mono->add_option("--s", s_list, "s values")->delimiter(',')->required();
    mono->add_option("--sweep", sweep_text, "START:STOP:STEP over q");
    mono->add_flag("--extrapolate", extrapolate, "evaluate outside the proven window");
    mono->add_option("--out", c.out, "CSV path (stdout if omitted)");
    mono->add_option("--seed", c.seed, "recorded in the header");

    std::string group_text;
    double tol = 1e-9;
    auto* poly = app.add_subcommand("polygon", "polygon inequalities of a pure state");
    add_state(poly, true);
    add_qs(poly);
    poly->add_option("--group", group_text, "subsystem indices of group A, e.g. 0,1");
    poly->add_option("--tol", tol, "violation tolerance");

    RoofConfig roof_cfg;
    auto* roof = app.add_subcommand("roof", "numerical upper estimate of the convex roof");
    add_state(roof, true);
    add_qs(roof);
    roof->add_option("--seed", c.seed, "restart seed");
    roof->add_option("--restarts", roof_cfg.restarts, "independent restarts");
    roof->add_option("--iterations", roof_cfg.iterations, "sweep cap per restart");
    roof->add_option("--length", roof_cfg.decomposition_length, "decomposition length (0: twice the rank)");
    roof->add_option("--threads", roof_cfg.threads, "worker threads (0: all cores)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kValidation;
    }

    const std::string cmdline = command_line(argc, argv);
    try {
        if (*compute) return cmd_compute(c, normalized, out);
        if (*bound) return cmd_bound(c, out);
        if (*closed) return cmd_closed_form(c, family, d, sweep_text, method, cmdline, out);
        if (*mono) return cmd_monogamy(c, q_list, s_list, sweep_text, gen3_text, extrapolate, cmdline, out);
        if (*poly) return cmd_polygon(c, group_text, tol, out);
        if (*roof) return cmd_roof(c, roof_cfg, out);
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        if (is_parameter_error(e.kind())) return kParameters;
        if (e.kind() == ErrorKind::NonFinite) return kNumerical;
        return kValidation;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kNumerical;
    }
    return kValidation;
}

} // namespace qsc::cli

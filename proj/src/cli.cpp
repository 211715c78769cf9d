#include "ptqsd/cli.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "ptqsd/errors.hpp"
#include "ptqsd/protocol.hpp"
#include "ptqsd/serialize.hpp"
#include "ptqsd/simulate.hpp"
#include "ptqsd/trajectory.hpp"
#include "ptqsd/verify.hpp"

namespace ptqsd::cli {

namespace {

struct CommonOptions {
    std::string input;
    std::string output;
    std::string alpha_h = "auto";
    double alpha_m = -std::numbers::pi / 2.0 + kDefaultAlphaMOffset;
    bool degrees = false;
};

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

void add_common(CLI::App* cmd, CommonOptions& o) {
    cmd->add_option("--input", o.input, "Ensemble document (JSON); '-' reads stdin")->required();
    cmd->add_option("--alpha-h", o.alpha_h, "Evolution alpha, or 'auto' for the feasible midpoint");
    cmd->add_option("--alpha-m", o.alpha_m, "Measurement alpha (default -pi/2 + 1e-3)");
    cmd->add_flag("--degrees", o.degrees, "Read document angles and alpha flags in degrees");
    cmd->add_option("--output", o.output, "Write the result here instead of stdout");
}

double angle_scale(const CommonOptions& o) { return o.degrees ? std::numbers::pi / 180.0 : 1.0; }

nlohmann::json read_document(const std::string& path, std::istream& in) {
    try {
        if (path == "-") return nlohmann::json::parse(in);
        std::ifstream file(path);
        if (!file) throw UsageError("cannot open input file '" + path + "'");
        return nlohmann::json::parse(file);
    } catch (const nlohmann::json::parse_error& e) {
        throw SchemaError("$", std::string("invalid JSON: ") + e.what());
    }
}

DiscriminationPlan plan_from_options(const CommonOptions& o, std::istream& in) {
    const Ensemble e = ensemble_from_json(read_document(o.input, in), {.degrees = o.degrees});
    std::optional<AlphaParam> alpha_h;
    if (o.alpha_h != "auto") {
        double value = 0.0;
        std::istringstream parse(o.alpha_h);
        if (!(parse >> value) || !parse.eof()) {
            throw UsageError("--alpha-h expects a number or 'auto', got '" + o.alpha_h + "'");
        }
        alpha_h = AlphaParam::make(value * angle_scale(o));
    }
    return build_plan(e, alpha_h, AlphaParam::make(o.alpha_m * angle_scale(o)));
}

void emit(const std::string& path, std::ostream& out, const std::string& text) {
    if (path.empty()) {
        out << text;
        return;
    }
    std::ofstream file(path);
    if (!file) throw UsageError("cannot open output file '" + path + "'");
    file << text;
}

int verify(const std::string& suite, std::ostream& out) {
    const std::vector<InvariantResult> results = run_suite(suite);
    std::size_t failed = 0;
    const auto precision = out.precision(3);
    for (const auto& r : results) {
        if (!r.passed) ++failed;
        out << (r.passed ? "[PASS] " : "[FAIL] ") << r.suite << ": " << r.name
            << "  observed=" << r.observed << (r.upper_bound ? "  bound<=" : "  bound>=") << r.bound
            << '\n';
    }
    out << results.size() - failed << '/' << results.size() << " invariants passed\n";
    out.precision(precision);
    return failed == 0 ? kOk : kVerificationFailed;
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
        std::ostream& err) {
    CLI::App app{"PT-symmetric discrimination of three qubit states"};
    app.require_subcommand(1);

    CommonOptions plan_opts;
    CLI::App* plan_cmd = app.add_subcommand("plan", "Build and print the discrimination plan");
    add_common(plan_cmd, plan_opts);

    CommonOptions sim_opts;
    std::uint64_t trials = 1'000'000;
    std::uint64_t seed = 1;
    unsigned workers = 0;
    CLI::App* sim_cmd = app.add_subcommand("simulate", "Monte Carlo measurement statistics");
    add_common(sim_cmd, sim_opts);
    sim_cmd->add_option("--trials", trials, "Number of trials")->check(CLI::PositiveNumber);
    sim_cmd->add_option("--seed", seed, "Random seed");
    sim_cmd->add_option("--workers", workers, "Worker threads (0 = hardware concurrency)");

    std::string suite = "all";
    CLI::App* verify_cmd = app.add_subcommand("verify", "Run the invariant suites");
    verify_cmd->add_option("--suite", suite, "all, core-algebra, pt-core, protocol or simulate");

    CommonOptions export_opts;
    std::string format = "csv";
    CLI::App* export_cmd = app.add_subcommand("export-bloch", "Bloch-sphere trajectory of each state");
    add_common(export_cmd, export_opts);
    export_cmd->add_option("--format", format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));

    std::vector<const char*> argv;
    argv.reserve(args.size());
    for (const std::string& a : args) argv.push_back(a.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (*plan_cmd) {
            const DiscriminationPlan plan = plan_from_options(plan_opts, in);
            emit(plan_opts.output, out, plan_to_json(plan).dump(2) + "\n");
        } else if (*sim_cmd) {
            const DiscriminationPlan plan = plan_from_options(sim_opts, in);
            const TrialReport report = run_batch(plan, trials, seed, workers);
            emit(sim_opts.output, out, report_to_json(report).dump(2) + "\n");
        } else if (*verify_cmd) {
            return verify(suite, out);
        } else if (*export_cmd) {
            const auto rows = bloch_trajectory(plan_from_options(export_opts, in));
            std::ostringstream text;
            if (format == "csv") {
                write_trajectory_csv(rows, text);
            } else {
                text << trajectory_to_json(rows).dump(2) << '\n';
            }
            emit(export_opts.output, out, text.str());
        }
        return kOk;
    } catch (const InfeasibleError& e) {
        err << "infeasible: " << e.what() << '\n'
            << std::setprecision(17) << "rhs=" << e.rhs() << '\n';
        return kInfeasible;
    } catch (const SchemaError& e) {
        err << "schema error at " << e.what() << '\n';
        return kUsage;
    } catch (const DomainError& e) {
        err << "domain error: " << e.what() << '\n';
        return kUsage;
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << '\n';
        return kUsage;
    } catch (const std::invalid_argument& e) {
        err << "usage error: " << e.what() << '\n';
        return kUsage;
    }
}

}  // namespace ptqsd::cli

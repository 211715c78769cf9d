#include "ptqsd/serialize.hpp"

#include <cmath>
#include <numbers>

#include "ptqsd/errors.hpp"

namespace ptqsd {

using nlohmann::json;

namespace {

const json& field(const json& obj, const std::string& key, const std::string& path) {
    if (!obj.is_object()) throw SchemaError(path, "expected an object");
    const auto it = obj.find(key);
    if (it == obj.end()) throw SchemaError(path + "." + key, "missing field");
    return *it;
}

double number(const json& v, const std::string& path) {
    if (!v.is_number()) throw SchemaError(path, "expected a number");
    const double x = v.get<double>();
    if (!std::isfinite(x)) throw SchemaError(path, "expected a finite number");
    return x;
}

const json& array_of(const json& v, std::size_t n, const std::string& path) {
    if (!v.is_array()) throw SchemaError(path, "expected an array");
    if (v.size() != n) {
        throw SchemaError(path, "expected " + std::to_string(n) + " elements, got " +
                                    std::to_string(v.size()));
    }
    return v;
}

std::string at(const std::string& path, std::size_t i) {
    return path + "[" + std::to_string(i) + "]";
}

Complex complex_from(const json& v, const std::string& path) {
    const json& a = array_of(v, 2, path);
    return {number(a[0], at(path, 0)), number(a[1], at(path, 1))};
}

Matrix2 matrix_from(const json& v, const std::string& path) {
    const json& rows = array_of(v, 2, path);
    const json& r0 = array_of(rows[0], 2, at(path, 0));
    const json& r1 = array_of(rows[1], 2, at(path, 1));
    return {complex_from(r0[0], at(at(path, 0), 0)), complex_from(r0[1], at(at(path, 0), 1)),
            complex_from(r1[0], at(at(path, 1), 0)), complex_from(r1[1], at(at(path, 1), 1))};
}

template <std::size_t N>
std::array<double, N> numbers_from(const json& v, const std::string& path) {
    const json& a = array_of(v, N, path);
    std::array<double, N> out{};
    for (std::size_t i = 0; i < N; ++i) out[i] = number(a[i], at(path, i));
    return out;
}

json bloch_json(const BlochState& s) { return {{"theta", s.theta()}, {"phi", s.phi()}}; }

BlochState bloch_from(const json& v, const std::string& path, double scale) {
    const double theta = number(field(v, "theta", path), path + ".theta") * scale;
    const double phi = number(field(v, "phi", path), path + ".phi") * scale;
    try {
        return BlochState::wrapped(theta, phi);
    } catch (const DomainError& e) {
        throw SchemaError(path, e.what());
    }
}

std::array<BlochState, 3> bloch_triple(const json& v, const std::string& path, double scale) {
    const json& a = array_of(v, 3, path);
    return {bloch_from(a[0], at(path, 0), scale), bloch_from(a[1], at(path, 1), scale),
            bloch_from(a[2], at(path, 2), scale)};
}

}  // namespace

json to_json_value(Complex z) { return json::array({z.real(), z.imag()}); }

json to_json_value(const StateVector& v) {
    return json::array({to_json_value(v.a), to_json_value(v.b)});
}

json to_json_value(const Matrix2& m) {
    return json::array({json::array({to_json_value(m.m00), to_json_value(m.m01)}),
                        json::array({to_json_value(m.m10), to_json_value(m.m11)})});
}

Ensemble ensemble_from_json(const json& doc, const EnsembleDocumentOptions& opts) {
    if (!doc.is_object()) throw SchemaError("$", "expected an object");
    const double scale = opts.degrees ? std::numbers::pi / 180.0 : 1.0;
    const auto states = bloch_triple(field(doc, "states", "$"), "$.states", scale);
    const auto priors = numbers_from<3>(field(doc, "priors", "$"), "$.priors");
    return Ensemble::make(states, priors);
}

json ensemble_to_json(const Ensemble& e) {
    json states = json::array();
    for (const BlochState& s : e.states()) states.push_back(bloch_json(s));
    return {{"states", states}, {"priors", e.priors()}};
}

json plan_to_json(const DiscriminationPlan& plan) {
    json states = json::array();
    for (const BlochState& s : plan.states) states.push_back(bloch_json(s));
    json order = json::array();
    for (std::size_t k : plan.state_order) order.push_back(k + 1);

    const TwoStatePlan& two = plan.stage_two;
    json pair_states = json::array({bloch_json(two.states[0]), bloch_json(two.states[1])});

    return {
        {"state_order", order},
        {"states", states},
        {"priors", plan.priors},
        {"preparation",
         {{"sigma", plan.prep.sigma},
          {"lambda", plan.prep.lambda},
          {"beta", to_json_value(plan.prep.beta)},
          {"gamma", to_json_value(plan.prep.gamma)},
          {"mu", plan.prep.mu},
          {"nu", plan.prep.nu}}},
        {"evolution",
         {{"alpha_h", plan.evo.alpha_h.value()},
          {"rhs", plan.rhs},
          {"tau", plan.evo.tau},
          {"delta", plan.evo.delta},
          {"kappa", to_json_value(plan.evo.kappa)},
          {"zeta", to_json_value(plan.evo.zeta)},
          {"xi", plan.evo.xi},
          {"chi", plan.evo.chi},
          {"rho", plan.evo.rho}}},
        {"gates",
         {{"R1", to_json_value(plan.prep_gates.r1)},
          {"R2", to_json_value(plan.prep_gates.r2)},
          {"R3", to_json_value(plan.prep_gates.r3)},
          {"R4", to_json_value(plan.align_gates.r4)},
          {"R5", to_json_value(plan.align_gates.r5)},
          {"R6", to_json_value(plan.align_gates.r6)}}},
        {"alpha_m", plan.alpha_m.value()},
        {"angles",
         {{"cos2_k12", plan.angles.cos2_k12},
          {"cos2_k13", plan.angles.cos2_k13},
          {"cos2_k23", plan.angles.cos2_k23}}},
        {"projectors", {{"P1", to_json_value(plan.proj.p1)}, {"P2", to_json_value(plan.proj.p2)}}},
        {"measurement", to_json_value(plan.measurement)},
        {"diagnostics",
         {{"evolved_norms", plan.evolved_norms}, {"shape_residual", plan.shape_residual}}},
        {"stage_two",
         {{"states", pair_states},
          {"priors", two.priors},
          {"sigma", two.prep.sigma},
          {"lambda", two.prep.lambda},
          {"alpha_h", two.alpha_h.value()},
          {"rhs", two.rhs},
          {"tau", two.tau},
          {"delta", two.delta},
          {"gates",
           {{"R1", to_json_value(two.gates.r1)},
            {"R2", to_json_value(two.gates.r2)},
            {"R3", to_json_value(two.gates.r3)},
            {"R4", to_json_value(two.r4)}}}}},
    };
}

DiscriminationPlan plan_from_json(const json& doc) {
    const std::string root = "$";
    const auto num = [&](const json& obj, const std::string& key, const std::string& path) {
        return number(field(obj, key, path), path + "." + key);
    };
    const auto alpha = [&](const json& obj, const std::string& key, const std::string& path) {
        try {
            return AlphaParam::make(num(obj, key, path));
        } catch (const DomainError& e) {
            throw SchemaError(path + "." + key, e.what());
        }
    };

    const json& order_doc = array_of(field(doc, "state_order", root), 3, "$.state_order");
    std::array<std::size_t, 3> order{};
    for (std::size_t k = 0; k < 3; ++k) {
        const double v = number(order_doc[k], at("$.state_order", k));
        if (v != 1.0 && v != 2.0 && v != 3.0) {
            throw SchemaError(at("$.state_order", k), "expected 1, 2 or 3");
        }
        order[k] = static_cast<std::size_t>(v) - 1;
    }

    const json& prep_doc = field(doc, "preparation", root);
    const std::string pp = "$.preparation";
    const PreparationParams prep{num(prep_doc, "sigma", pp),
                                 num(prep_doc, "lambda", pp),
                                 complex_from(field(prep_doc, "beta", pp), pp + ".beta"),
                                 complex_from(field(prep_doc, "gamma", pp), pp + ".gamma"),
                                 num(prep_doc, "mu", pp),
                                 num(prep_doc, "nu", pp)};

    const json& evo_doc = field(doc, "evolution", root);
    const std::string ep = "$.evolution";
    const EvolutionParams evo{alpha(evo_doc, "alpha_h", ep),
                              num(evo_doc, "tau", ep),
                              num(evo_doc, "delta", ep),
                              complex_from(field(evo_doc, "kappa", ep), ep + ".kappa"),
                              complex_from(field(evo_doc, "zeta", ep), ep + ".zeta"),
                              num(evo_doc, "xi", ep),
                              num(evo_doc, "chi", ep),
                              num(evo_doc, "rho", ep)};

    const json& gates = field(doc, "gates", root);
    const auto gate = [&](const json& g, const std::string& name, const std::string& path) {
        return matrix_from(field(g, name, path), path + "." + name);
    };

    const json& angles_doc = field(doc, "angles", root);
    const json& proj_doc = field(doc, "projectors", root);
    const json& diag = field(doc, "diagnostics", root);

    const json& two_doc = field(doc, "stage_two", root);
    const std::string tp = "$.stage_two";
    const json& pair_doc = array_of(field(two_doc, "states", tp), 2, tp + ".states");
    const json& two_gates = field(two_doc, "gates", tp);
    TwoStatePlan two{
        {bloch_from(pair_doc[0], tp + ".states[0]", 1.0),
         bloch_from(pair_doc[1], tp + ".states[1]", 1.0)},
        numbers_from<2>(field(two_doc, "priors", tp), tp + ".priors"),
        {num(two_doc, "sigma", tp), num(two_doc, "lambda", tp)},
        {gate(two_gates, "R1", tp + ".gates"), gate(two_gates, "R2", tp + ".gates"),
         gate(two_gates, "R3", tp + ".gates")},
        alpha(two_doc, "alpha_h", tp),
        num(two_doc, "rhs", tp),
        num(two_doc, "tau", tp),
        num(two_doc, "delta", tp),
        gate(two_gates, "R4", tp + ".gates"),
    };

    return DiscriminationPlan{
        bloch_triple(field(doc, "states", root), "$.states", 1.0),
        numbers_from<3>(field(doc, "priors", root), "$.priors"),
        order,
        prep,
        {gate(gates, "R1", "$.gates"), gate(gates, "R2", "$.gates"), gate(gates, "R3", "$.gates")},
        num(evo_doc, "rhs", ep),
        evo,
        {gate(gates, "R4", "$.gates"), gate(gates, "R5", "$.gates"), gate(gates, "R6", "$.gates")},
        alpha(doc, "alpha_m", root),
        {num(angles_doc, "cos2_k12", "$.angles"), num(angles_doc, "cos2_k13", "$.angles"),
         num(angles_doc, "cos2_k23", "$.angles")},
        {gate(proj_doc, "P1", "$.projectors"), gate(proj_doc, "P2", "$.projectors")},
        matrix_from(field(doc, "measurement", root), "$.measurement"),
        numbers_from<3>(field(diag, "evolved_norms", "$.diagnostics"), "$.diagnostics.evolved_norms"),
        num(diag, "shape_residual", "$.diagnostics"),
        two,
    };
}

json report_to_json(const TrialReport& r) {
    json confusion = json::array();
    for (const auto& row : r.confusion) confusion.push_back(row);
    return {
        {"trials", r.trials},
        {"seed", r.seed},
        {"avg_measurements", r.avg_measurements},
        {"max_measurements", r.max_measurements},
        {"measurement_counts", {{"one", r.single_measurement}, {"two", r.double_measurement}}},
        {"confusion", confusion},
        {"errors", r.errors},
        {"error_rate", r.error_rate},
        {"reference",
         {{"expected_avg_measurements", r.expected_avg_measurements},
          {"ideal_avg_measurements", r.ideal_avg_measurements},
          {"expected_error_rate", r.expected_error_rate},
          {"cos2_k13", r.cos2_k13}}},
        {"diagnostics", {{"evolved_norms", r.evolved_norms}}},
        {"plan_fingerprint", r.plan_fingerprint},
    };
}

std::uint64_t plan_fingerprint(const DiscriminationPlan& plan) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : plan_to_json(plan).dump()) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

}  // namespace ptqsd

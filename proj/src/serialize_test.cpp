#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>
#include <string>

#include "ptqsd/errors.hpp"
#include "ptqsd/oracles.hpp"
#include "ptqsd/serialize.hpp"
#include "ptqsd/trajectory.hpp"
#include "test_support.hpp"

using namespace ptqsd;
using nlohmann::json;
using ptqsd::test::kPi;

namespace {

json worked_doc() {
    return json{{"states",
                 {{{"theta", kPi / 3}, {"phi", 0.0}},
                  {{"theta", kPi / 2}, {"phi", kPi / 2}},
                  {{"theta", 2 * kPi / 3}, {"phi", kPi}}}},
                {"priors", {0.5, 0.25, 0.25}}};
}

std::string schema_path(const json& doc) {
    try {
        ensemble_from_json(doc);
    } catch (const SchemaError& e) {
        return e.path();
    }
    return "<no error>";
}

}  // namespace

TEST_CASE("ensemble document") {
    const Ensemble e = ensemble_from_json(worked_doc());
    CHECK(e.states()[0].theta() == kPi / 3);
    CHECK(e.states()[2].phi() == doctest::Approx(-kPi));
    CHECK(e.priors()[1] == 0.25);

    json deg = worked_doc();
    deg["states"][0]["theta"] = 60.0;
    deg["states"][1]["theta"] = 90.0;
    deg["states"][1]["phi"] = 90.0;
    deg["states"][2]["theta"] = 120.0;
    deg["states"][2]["phi"] = 240.0;
    const Ensemble d = ensemble_from_json(deg, {.degrees = true});
    CHECK(d.states()[0].theta() == doctest::Approx(kPi / 3));
    CHECK(d.states()[2].phi() == doctest::Approx(-2 * kPi / 3));

    const Ensemble back = ensemble_from_json(ensemble_to_json(e));
    for (int k = 0; k < 3; ++k) {
        CHECK(back.states()[k].theta() == e.states()[k].theta());
        CHECK(back.states()[k].phi() == e.states()[k].phi());
        CHECK(back.priors()[k] == e.priors()[k]);
    }
}

TEST_CASE("schema errors name the offending field") {
    json doc = worked_doc();
    doc.erase("priors");
    CHECK(schema_path(doc) == "$.priors");

    doc = worked_doc();
    doc["states"].erase(2);
    CHECK(schema_path(doc) == "$.states");

    doc = worked_doc();
    doc["states"][1]["theta"] = "pi";
    CHECK(schema_path(doc) == "$.states[1].theta");

    doc = worked_doc();
    doc["states"][2].erase("phi");
    CHECK(schema_path(doc) == "$.states[2].phi");

    doc = worked_doc();
    doc["priors"][0] = nullptr;
    CHECK(schema_path(doc) == "$.priors[0]");

    CHECK(schema_path(json::array()) == "$");

    doc = worked_doc();
    doc["states"][1] = doc["states"][0];
    CHECK_THROWS_AS(ensemble_from_json(doc), DomainError);

    doc = worked_doc();
    doc["priors"] = {0.5, 0.5, 0.5};
    CHECK_THROWS_AS(ensemble_from_json(doc), DomainError);

    doc = worked_doc();
    doc["states"][0]["theta"] = 4.0;
    CHECK(schema_path(doc) == "$.states[0]");
}

TEST_CASE("complex and matrix encoding") {
    CHECK(to_json_value(Complex{1.5, -2.0}) == json::array({1.5, -2.0}));
    const json m = to_json_value(Matrix2{1.0, kI, -kI, 2.0});
    CHECK(m[0][1] == json::array({0.0, 1.0}));
    CHECK(m[1][0] == json::array({0.0, -1.0}));
}

TEST_CASE("plan document round trip is exact") {
    std::mt19937_64 rng(51);
    std::vector<DiscriminationPlan> plans;
    plans.push_back(build_plan(test::worked_ensemble(), std::nullopt, default_alpha_m()));
    for (int i = 0; i < 20; ++i) {
        const oracle::Instance inst = oracle::random_instance(rng);
        plans.push_back(build_plan(inst.ensemble, inst.alpha_h,
                                   AlphaParam::make(oracle::uniform(rng, -1.5, 1.5))));
    }
    for (const DiscriminationPlan& p : plans) {
        const json doc = plan_to_json(p);
        const DiscriminationPlan q = plan_from_json(json::parse(doc.dump()));
        CHECK(plan_to_json(q).dump() == doc.dump());
        CHECK(q.evo.rho == p.evo.rho);
        CHECK(q.evo.tau == p.evo.tau);
        CHECK(q.angles.cos2_k13 == p.angles.cos2_k13);
        CHECK(q.alpha_m.value() == p.alpha_m.value());
        CHECK(q.state_order == p.state_order);
        CHECK(max_abs_diff(q.align_gates.r6, p.align_gates.r6) == 0.0);
        CHECK(q.stage_two.tau == p.stage_two.tau);
        CHECK(plan_fingerprint(q) == plan_fingerprint(p));
    }
    const json doc = plan_to_json(plans[0]);
    CHECK(doc["angles"]["cos2_k12"] == 0.0);
    CHECK(doc["state_order"] == json::array({1, 2, 3}));
    CHECK(plan_fingerprint(plans[0]) != plan_fingerprint(plans[1]));

    json broken = doc;
    broken["evolution"].erase("tau");
    CHECK_THROWS_AS(plan_from_json(broken), SchemaError);
}

TEST_CASE("report document") {
    const DiscriminationPlan plan = build_plan(test::worked_ensemble(), std::nullopt, default_alpha_m());
    const TrialReport rep = run_batch(plan, 1000, 4);
    const json doc = report_to_json(rep);
    CHECK(doc["trials"] == 1000);
    CHECK(doc["seed"] == 4);
    CHECK(doc["max_measurements"] <= 2);
    CHECK(doc["confusion"].size() == 3);
    CHECK(doc["plan_fingerprint"].is_number_unsigned());
    CHECK(doc.contains("reference"));
    CHECK(doc["measurement_counts"]["one"].get<std::uint64_t>() +
              doc["measurement_counts"]["two"].get<std::uint64_t>() ==
          1000);
    CHECK(report_to_json(run_batch(plan, 1000, 4)).dump() == doc.dump());
}

TEST_CASE("Bloch trajectory") {
    const DiscriminationPlan plan = build_plan(test::worked_ensemble(), std::nullopt, default_alpha_m());
    const auto rows = bloch_trajectory(plan);
    REQUIRE(rows.size() == 15);
    for (const auto& r : rows) {
        CHECK(std::abs(r.x * r.x + r.y * r.y + r.z * r.z - 1.0) < 1e-9);
    }
    const auto find = [&](int id, const std::string& stage) {
        for (const auto& r : rows)
            if (r.state_id == id && r.stage == stage) return r;
        FAIL("missing row");
        return rows[0];
    };
    const auto f1 = find(1, "final");
    CHECK(std::abs(f1.x) < 1e-9);
    CHECK(std::abs(f1.y - 1.0) < 1e-9);
    CHECK(std::abs(f1.z) < 1e-9);
    const auto f2 = find(2, "final");
    CHECK(std::abs(f2.y + 1.0) < 1e-9);
    const auto f3 = find(3, "final");
    CHECK(std::abs(f3.y - std::sin(plan.evo.rho)) < 1e-9);
    CHECK(std::abs(f3.z - std::cos(plan.evo.rho)) < 1e-9);
    const auto in1 = find(1, "input");
    CHECK(in1.z == doctest::Approx(std::cos(kPi / 3)));

    std::ostringstream csv;
    write_trajectory_csv(rows, csv);
    std::istringstream lines(csv.str());
    std::string line;
    std::getline(lines, line);
    CHECK(line == "state_id,stage,x,y,z");
    std::size_t i = 0;
    while (std::getline(lines, line)) {
        REQUIRE(i < rows.size());
        std::istringstream fields(line);
        std::string id, stage, x, y, z;
        std::getline(fields, id, ',');
        std::getline(fields, stage, ',');
        std::getline(fields, x, ',');
        std::getline(fields, y, ',');
        std::getline(fields, z, ',');
        CHECK(std::stoi(id) == rows[i].state_id);
        CHECK(stage == rows[i].stage);
        CHECK(std::stod(x) == rows[i].x);
        CHECK(std::stod(y) == rows[i].y);
        CHECK(std::stod(z) == rows[i].z);
        ++i;
    }
    CHECK(i == rows.size());

    const json j = trajectory_to_json(rows);
    CHECK(j.size() == 15);
}

#include "ptqsd/trajectory.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <stdexcept>

namespace ptqsd {

namespace {

BlochTrajectoryRow make_row(int id, const char* stage, const StateVector& v) {
    const BlochVector p = bloch_vector(v);
    const BlochState angles = bloch_from_state(v);
    const double st = std::sin(angles.theta());
    const BlochVector q{st * std::cos(angles.phi()), st * std::sin(angles.phi()),
                        std::cos(angles.theta())};
    const double r2 = p.x * p.x + p.y * p.y + p.z * p.z;
    const double gap = std::max({std::abs(p.x - q.x), std::abs(p.y - q.y), std::abs(p.z - q.z)});
    if (std::abs(r2 - 1.0) > 1e-9 || gap > 1e-9) {
        throw std::logic_error("Bloch trajectory point failed validation");
    }
    return {id, stage, p.x, p.y, p.z};
}

}  // namespace

std::vector<BlochTrajectoryRow> bloch_trajectory(const DiscriminationPlan& plan) {
    const Matrix2 u = plan.evolution();
    std::vector<BlochTrajectoryRow> rows;
    rows.reserve(15);
    for (std::size_t k = 0; k < 3; ++k) {
        const int id = static_cast<int>(k) + 1;
        const StateVector input = state_from_bloch(plan.states[k]);
        const StateVector prepared = apply(plan.prep_gates.combined(), input);
        const StateVector evolved = apply(u, prepared).normalized();
        const StateVector aligned = apply(plan.align_gates.r5 * plan.align_gates.r4, evolved);
        const StateVector final_state = apply(plan.align_gates.r6, aligned);
        rows.push_back(make_row(id, "input", input));
        rows.push_back(make_row(id, "prepared", prepared));
        rows.push_back(make_row(id, "evolved", evolved));
        rows.push_back(make_row(id, "aligned", aligned));
        rows.push_back(make_row(id, "final", final_state));
    }
    return rows;
}

void write_trajectory_csv(const std::vector<BlochTrajectoryRow>& rows, std::ostream& out) {
    const auto flags = out.flags();
    const auto precision = out.precision();
    out << "state_id,stage,x,y,z\n" << std::setprecision(17);
    for (const auto& r : rows) {
        out << r.state_id << ',' << r.stage << ',' << r.x << ',' << r.y << ',' << r.z << '\n';
    }
    out.flags(flags);
    out.precision(precision);
}

nlohmann::json trajectory_to_json(const std::vector<BlochTrajectoryRow>& rows) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& r : rows) {
        out.push_back({{"state_id", r.state_id}, {"stage", r.stage}, {"x", r.x}, {"y", r.y}, {"z", r.z}});
    }
    return out;
}

}  // namespace ptqsd

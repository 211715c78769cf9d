#pragma once

// Bloch-sphere positions of the three states at each protocol stage, for
// plotting the geometry of the final configuration.

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "ptqsd/protocol.hpp"

namespace ptqsd {

struct BlochTrajectoryRow {
    // Plan-internal id, 1..3 (1 carries the largest prior).
    int state_id;
    // input, prepared, evolved, aligned or final.
    std::string stage;
    double x;
    double y;
    double z;
};

// One row per (state, stage), validated against bloch_from_state.
std::vector<BlochTrajectoryRow> bloch_trajectory(const DiscriminationPlan& plan);

// Header "state_id,stage,x,y,z"; numbers with 17 significant digits.
void write_trajectory_csv(const std::vector<BlochTrajectoryRow>& rows, std::ostream& out);

nlohmann::json trajectory_to_json(const std::vector<BlochTrajectoryRow>& rows);

}  // namespace ptqsd

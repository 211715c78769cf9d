#pragma once

namespace ptqsd {

// Central numeric tolerances. Every closed-form quantity in this library is
// a handful of elementary double operations, so absolute thresholds suffice.
struct Tolerances {
    double general = 1e-10;
    // Two states are the same ray iff fidelity >= 1 - state_equality.
    double state_equality = 1e-10;
    // Ensembles reject pairs with fidelity >= 1 - distinct_states.
    double distinct_states = 1e-9;
    double normalized = 1e-12;
    double prior_sum = 1e-12;
    // Amplitudes below this make the Bloch azimuth unphysical.
    double pole = 1e-12;
    // Slack admitted on sin^2(omega tau) before declaring infeasibility.
    double feasibility = 1e-12;
    // Probe-set agreement for antilinear commutation checks.
    double commutation = 1e-10;
};

inline constexpr Tolerances kDefaultTolerances{};

}  // namespace ptqsd

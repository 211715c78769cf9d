#pragma once

// Monte Carlo reproduction of the protocol's measurement statistics.
//
// Stage one measures M = P1 - P2 with the CPT Born rule
//     p_m = cpt_inner(v, P_m v) / cpt_inner(v, v),
// which reproduces cos^2(kappa_13) as the +1 probability of the final psi3
// and degenerates to the Hermitian rule at alpha_m = 0. A -1 outcome spends a
// second identically prepared sample on the two-state plan.
//
// Every trial draws from its own counter-based stream keyed by
// (seed, trial index), so reports do not depend on the worker count.

#include <array>
#include <cstdint>
#include <optional>

#include "ptqsd/protocol.hpp"

namespace ptqsd {

struct OutcomeDistribution {
    double p_plus;
    double p_minus;
};

OutcomeDistribution outcome_probabilities(const StateVector& final_state, AlphaParam alpha_m);

// Stateless-per-trial random stream (SplitMix64 keyed by seed and index).
class TrialStream {
public:
    TrialStream(std::uint64_t seed, std::uint64_t trial_index);

    std::uint64_t next();
    // Uniform in [0, 1).
    double uniform();

private:
    std::uint64_t state_;
};

struct TrialResult {
    // Input index (0-based) of the identified state.
    std::size_t verdict;
    int measurements;
};

// Per-input-state outcome probabilities of both stages, computed once per
// plan.
struct OutcomeTable {
    // Indexed by input index.
    std::array<double, 3> stage_one_plus;
    std::array<double, 3> stage_two_first;
    std::array<double, 3> priors;
    // order[k] = input index of plan-internal state k.
    std::array<std::size_t, 3> order;

    static OutcomeTable from_plan(const DiscriminationPlan& plan);
};

TrialResult run_trial(const OutcomeTable& table, std::size_t true_input, TrialStream& rng);
TrialResult run_trial(const DiscriminationPlan& plan, std::size_t true_input, TrialStream& rng);

struct TrialReport {
    std::uint64_t trials = 0;
    std::uint64_t seed = 0;
    // confusion[true input][verdict input].
    std::array<std::array<std::uint64_t, 3>, 3> confusion{};
    std::uint64_t single_measurement = 0;
    std::uint64_t double_measurement = 0;
    int max_measurements = 0;
    double avg_measurements = 0.0;
    std::uint64_t errors = 0;
    double error_rate = 0.0;

    // Closed-form references.
    double expected_avg_measurements = 0.0;
    double ideal_avg_measurements = 0.0;  // 2 - p
    double expected_error_rate = 0.0;
    double cos2_k13 = 0.0;

    std::array<double, 3> evolved_norms{};
    std::uint64_t plan_fingerprint = 0;
};

// workers == 0 picks std::thread::hardware_concurrency().
TrialReport run_batch(const DiscriminationPlan& plan, std::uint64_t trials, std::uint64_t seed,
                      unsigned workers = 0);
TrialReport run_batch(const Ensemble& e, AlphaParam alpha_m, std::uint64_t trials,
                      std::uint64_t seed, std::optional<AlphaParam> alpha_h = std::nullopt,
                      unsigned workers = 0);

// 2 - p_max, the ideal-limit average number of measurements.
double expected_measurements(double p_max);

// Exact expectation for a finite alpha_m: 2 - p1 - p3 cos^2(kappa_13)
// (plan-internal priors).
double expected_average(const DiscriminationPlan& plan);

}  // namespace ptqsd

#include "ptqsd/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <thread>
#include <vector>

#include "ptqsd/errors.hpp"
#include "ptqsd/serialize.hpp"

namespace ptqsd {

namespace {

std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

std::size_t sample_index(const std::array<double, 3>& weights, double u) {
    double acc = 0.0;
    std::size_t last = 0;
    for (std::size_t i = 0; i < weights.size(); ++i) {
        if (weights[i] <= 0.0) continue;
        acc += weights[i];
        last = i;
        if (u < acc) return i;
    }
    return last;
}

struct Tally {
    std::array<std::array<std::uint64_t, 3>, 3> confusion{};
    std::uint64_t single = 0;
    std::uint64_t twice = 0;
    int max_measurements = 0;

    void merge(const Tally& other) {
        for (std::size_t i = 0; i < 3; ++i) {
            for (std::size_t j = 0; j < 3; ++j) confusion[i][j] += other.confusion[i][j];
        }
        single += other.single;
        twice += other.twice;
        max_measurements = std::max(max_measurements, other.max_measurements);
    }
};

Tally run_range(const OutcomeTable& table, std::uint64_t seed, std::uint64_t begin,
                std::uint64_t end) {
    Tally t;
    for (std::uint64_t i = begin; i < end; ++i) {
        TrialStream rng(seed, i);
        const std::size_t truth = sample_index(table.priors, rng.uniform());
        const TrialResult r = run_trial(table, truth, rng);
        ++t.confusion[truth][r.verdict];
        (r.measurements == 1 ? t.single : t.twice) += 1;
        t.max_measurements = std::max(t.max_measurements, r.measurements);
    }
    return t;
}

}  // namespace

OutcomeDistribution outcome_probabilities(const StateVector& final_state, AlphaParam alpha_m) {
    const Projectors p = projectors();
    const double norm = cpt_inner(final_state, final_state, alpha_m).real();
    if (!(norm > 0.0)) {
        throw DomainError("outcome probabilities need a nonzero state");
    }
    const double plus = cpt_inner(final_state, apply(p.p1, final_state), alpha_m).real() / norm;
    const double minus = cpt_inner(final_state, apply(p.p2, final_state), alpha_m).real() / norm;
    return {std::clamp(plus, 0.0, 1.0), std::clamp(minus, 0.0, 1.0)};
}

TrialStream::TrialStream(std::uint64_t seed, std::uint64_t trial_index)
    : state_(mix64(mix64(seed + kGolden) ^ (trial_index * kGolden))) {}

std::uint64_t TrialStream::next() {
    state_ += kGolden;
    return mix64(state_);
}

double TrialStream::uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

OutcomeTable OutcomeTable::from_plan(const DiscriminationPlan& plan) {
    OutcomeTable t{};
    t.order = plan.state_order;
    for (std::size_t k = 0; k < 3; ++k) {
        const std::size_t input = plan.state_order[k];
        const StateVector psi = state_from_bloch(plan.states[k]);
        t.priors[input] = plan.priors[k];
        t.stage_one_plus[input] = outcome_probabilities(plan.final_state(psi), plan.alpha_m).p_plus;
        t.stage_two_first[input] = plan.stage_two.probability_first(psi);
    }
    return t;
}

TrialResult run_trial(const OutcomeTable& table, std::size_t true_input, TrialStream& rng) {
    if (rng.uniform() < table.stage_one_plus[true_input]) {
        return {table.order[0], 1};
    }
    const int outcome = rng.uniform() < table.stage_two_first[true_input] ? 1 : -1;
    const std::size_t pair_index = outcome == 1 ? 0 : 1;
    return {table.order[1 + pair_index], 2};
}

TrialResult run_trial(const DiscriminationPlan& plan, std::size_t true_input, TrialStream& rng) {
    return run_trial(OutcomeTable::from_plan(plan), true_input, rng);
}

TrialReport run_batch(const DiscriminationPlan& plan, std::uint64_t trials, std::uint64_t seed,
                      unsigned workers) {
    if (trials == 0) {
        throw DomainError("a batch needs at least one trial");
    }
    if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
    workers = static_cast<unsigned>(std::min<std::uint64_t>(workers, trials));

    const OutcomeTable table = OutcomeTable::from_plan(plan);
    std::vector<Tally> partial(workers);
    {
        std::vector<std::jthread> pool;
        const std::uint64_t chunk = trials / workers;
        const std::uint64_t extra = trials % workers;
        std::uint64_t begin = 0;
        for (unsigned w = 0; w < workers; ++w) {
            const std::uint64_t end = begin + chunk + (w < extra ? 1 : 0);
            pool.emplace_back([&, w, begin, end] { partial[w] = run_range(table, seed, begin, end); });
            begin = end;
        }
    }
    Tally total;
    for (const Tally& t : partial) total.merge(t);

    TrialReport r;
    r.trials = trials;
    r.seed = seed;
    r.confusion = total.confusion;
    r.single_measurement = total.single;
    r.double_measurement = total.twice;
    r.max_measurements = total.max_measurements;
    r.avg_measurements =
        static_cast<double>(total.single + 2 * total.twice) / static_cast<double>(trials);
    for (std::size_t i = 0; i < 3; ++i) {
        for (std::size_t j = 0; j < 3; ++j) {
            if (i != j) r.errors += total.confusion[i][j];
        }
    }
    r.error_rate = static_cast<double>(r.errors) / static_cast<double>(trials);
    r.expected_avg_measurements = expected_average(plan);
    r.ideal_avg_measurements = 2.0 - plan.priors[0];
    r.cos2_k13 = plan.angles.cos2_k13;
    r.expected_error_rate = plan.priors[2] * plan.angles.cos2_k13;
    r.evolved_norms = plan.evolved_norms;
    r.plan_fingerprint = plan_fingerprint(plan);
    return r;
}

TrialReport run_batch(const Ensemble& e, AlphaParam alpha_m, std::uint64_t trials,
                      std::uint64_t seed, std::optional<AlphaParam> alpha_h, unsigned workers) {
    return run_batch(build_plan(e, alpha_h, alpha_m), trials, seed, workers);
}

double expected_measurements(double p_max) {
    if (!(p_max >= 1.0 / 3.0 - 1e-12 && p_max <= 1.0)) {
        throw DomainError("the largest of three priors lies in [1/3, 1]");
    }
    return 2.0 - p_max;
}

double expected_average(const DiscriminationPlan& plan) {
    const double plus = plan.priors[0] + plan.priors[2] * plan.angles.cos2_k13;
    return 2.0 - plus;
}

}  // namespace ptqsd

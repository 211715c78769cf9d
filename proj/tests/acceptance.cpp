// Acceptance run: one [PASS]/[FAIL] line per criterion, non-zero exit if
// any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "ptqsd/oracles.hpp"
#include "ptqsd/protocol.hpp"
#include "ptqsd/pt_core.hpp"
#include "ptqsd/simulate.hpp"

using namespace ptqsd;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kInstances = 1000;
constexpr std::uint64_t kSeed = 20240601;

int failures = 0;

void report(bool ok, const std::string& id, const std::string& what, const std::string& detail) {
    std::printf("[%s] %s %s: %s\n", ok ? "PASS" : "FAIL", id.c_str(), what.c_str(), detail.c_str());
    if (!ok) ++failures;
}

std::string fmt(const char* f, double a) {
    char buf[128];
    std::snprintf(buf, sizeof buf, f, a);
    return buf;
}

std::string fmt(const char* f, double a, double b) {
    char buf[160];
    std::snprintf(buf, sizeof buf, f, a, b);
    return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

StateVector shape(double half) { return {std::cos(half), -kI * std::sin(half)}; }

// CPT product written out from the metric
// G = (1/cos a) [[1, -i sin a], [i sin a, 1]], separate from the library's
// C P conj route.
Complex metric_product(const StateVector& u, const StateVector& v, double a) {
    const double s = std::sin(a);
    const double c = std::cos(a);
    const Complex g0 = v.a - kI * s * v.b;
    const Complex g1 = kI * s * v.a + v.b;
    return (std::conj(u.a) * g0 + std::conj(u.b) * g1) / c;
}

double metric_cos2(const StateVector& u, const StateVector& v, double a) {
    const double uu = metric_product(u, u, a).real();
    const double vv = metric_product(v, v, a).real();
    return std::norm(metric_product(u, v, a)) / (uu * vv);
}

struct Case {
    DiscriminationPlan plan;
    oracle::DirectPipeline direct;
};

}  // namespace

int main() {
    std::mt19937_64 rng(kSeed);

    // 1. Closed forms against step-by-step application.
    std::vector<Case> cases;
    cases.reserve(kInstances);
    double max_dev = 0.0;
    const auto t1 = std::chrono::steady_clock::now();
    for (int i = 0; i < kInstances; ++i) {
        const oracle::Instance inst = oracle::random_instance(rng);
        const AlphaParam am = AlphaParam::make(oracle::uniform(rng, -kPi / 2 + 1e-3, kPi / 2 - 1e-3));
        DiscriminationPlan plan = build_plan(inst.ensemble, inst.alpha_h, am);
        oracle::DirectPipeline d = oracle::direct_pipeline(plan);

        const PreparationParams& p = plan.prep;
        const EvolutionParams& e = plan.evo;
        const double x = (kPi - 2 * p.sigma) / 4;
        const double y = (kPi + 2 * p.sigma) / 4;
        const StateVector mu_nu{std::cos(p.mu / 2), std::polar(std::sin(p.mu / 2), p.nu)};
        const StateVector xi_shape{std::cos(e.xi / 2), kI * std::sin(e.xi / 2)};
        const auto canon = plan.canonical_final_states();
        const double devs[] = {
            phase_distance(d.prepared[0], shape(x)),
            phase_distance(d.prepared[1], shape(y)),
            max_abs_diff(d.prepared[2], {p.beta, p.gamma}),
            phase_distance(d.prepared[2], mu_nu),
            phase_distance(d.evolved[0], shape(e.delta / 2)),
            phase_distance(apply(plan.align_gates.r4, d.evolved[1]), {0.0, 1.0}),
            phase_distance(d.aligned[2], xi_shape),
            phase_distance(d.final[0], canon[0]),
            phase_distance(d.final[1], canon[1]),
            phase_distance(d.final[2], canon[2]),
        };
        for (double v : devs) max_dev = std::max(max_dev, std::isfinite(v) ? v : INFINITY);
        cases.push_back({std::move(plan), d});
    }
    const double t1_s = seconds_since(t1);
    report(max_dev < 1e-9 && t1_s < 10.0, "AC1", "closed-form parameters vs direct application",
           fmt("max deviation %.3e (tol 1e-9)", max_dev) + fmt(", %.0f instances in %.2fs (limit 10s)", kInstances, t1_s));

    // 2. Hermitian orthogonality after the evolution.
    double max_overlap = 0.0;
    for (const Case& c : cases) {
        max_overlap = std::max(max_overlap, std::abs(hermitian_inner(c.direct.evolved[0], c.direct.evolved[1])));
    }
    report(max_overlap < 1e-9, "AC2", "evolved pair is Hermitian-orthogonal",
           fmt("max |<psi1|psi2>| %.3e (tol 1e-9)", max_overlap));

    // 3. CPT orthogonality of the final pair for any alpha_m. The metric has
    // norm ~2 / cos(alpha_m), so this uses the states the protocol itself
    // produces; the expm-based pipeline carries ~1e-12 of its own error.
    double max_cpt = 0.0;
    for (const Case& c : cases) {
        const auto f = c.plan.final_states();
        for (int j = 0; j < 100; ++j) {
            const double a = oracle::uniform(rng, -kPi / 2 + 1e-3, kPi / 2 - 1e-3);
            const AlphaParam am = AlphaParam::make(a);
            max_cpt = std::max(max_cpt, std::abs(cpt_inner(f[0], f[1], am)));
            max_cpt = std::max(max_cpt, std::abs(metric_product(f[0], f[1], a)));
        }
    }
    report(max_cpt < 1e-10, "AC3", "final pair is CPT-orthogonal for every alpha_m",
           fmt("max |<psi1|psi2>_CPT| %.3e over %.0f alpha_m samples (tol 1e-10)", max_cpt, 100.0 * kInstances));

    // 4. Angle formulas and the Born-rule identity.
    double max_angle = 0.0;
    double max_born = 0.0;
    for (const Case& c : cases) {
        std::vector<double> alphas{c.plan.alpha_m.value()};
        for (int j = 0; j < 10; ++j) alphas.push_back(oracle::uniform(rng, -kPi / 2 + 1e-3, kPi / 2 - 1e-3));
        for (double a : alphas) {
            const AlphaParam am = AlphaParam::make(a);
            const AngleReport k = kappa_angles(am, c.plan.evo.rho);
            const auto& f = c.direct.final;
            max_angle = std::max({max_angle, std::abs(k.cos2_k12 - metric_cos2(f[0], f[1], a)),
                                  std::abs(k.cos2_k13 - metric_cos2(f[0], f[2], a)),
                                  std::abs(k.cos2_k23 - metric_cos2(f[1], f[2], a))});
            max_born = std::max(max_born, std::abs(outcome_probabilities(f[2], am).p_plus - k.cos2_k13));
        }
    }
    report(max_angle < 1e-10 && max_born < 1e-10, "AC4", "angle formulas match direct CPT computation",
           fmt("max angle deviation %.3e, max |p_plus - cos^2 k13| %.3e (tol 1e-10)", max_angle, max_born));

    // 5. Elimination limit alpha_m -> -pi/2.
    bool monotone = true;
    bool bounded = true;
    double max_oracle = 0.0;
    double worst_ratio = 0.0;
    for (const Case& c : cases) {
        const double rho = c.plan.evo.rho;
        const double big_s = std::sin(rho);
        double prev = INFINITY;
        for (int k = 1; k <= 6; ++k) {
            const double eps = std::pow(10.0, -k);
            const double a = -kPi / 2 + eps;
            const double closed = kappa_angles(AlphaParam::make(a), rho).cos2_k13;
            const double direct = metric_cos2(c.direct.final[0], c.direct.final[2], a);
            const double bound = 2 * eps * (1 + big_s) / (1 - std::abs(big_s));
            if (!(closed <= prev)) monotone = false;
            if (!(closed < bound)) bounded = false;
            worst_ratio = std::max(worst_ratio, closed / bound);
            max_oracle = std::max(max_oracle, std::abs(closed - direct));
            prev = closed;
        }
    }
    report(monotone && bounded && max_oracle < 1e-10, "AC5", "cos^2 k13 vanishes as alpha_m -> -pi/2",
           std::string(monotone ? "non-increasing" : "NOT monotone") +
               fmt(", max value/bound %.3e, max |closed - direct| %.3e (tol 1e-10)", worst_ratio, max_oracle));

    // 6. Average number of measurements.
    const auto states = std::array<BlochState, 3>{BlochState::make(kPi / 3, 0.0),
                                                  BlochState::make(kPi / 2, kPi / 2),
                                                  BlochState::wrapped(2 * kPi / 3, kPi)};
    const Ensemble worked = Ensemble::make(states, {0.5, 0.25, 0.25});
    const auto t6 = std::chrono::steady_clock::now();
    const TrialReport main_run = run_batch(worked, default_alpha_m(), 1000000, 1);
    const double t6_s = seconds_since(t6);
    report(std::abs(main_run.avg_measurements - 1.5) < 0.002 && t6_s < 60.0, "AC6",
           "average measurements for priors (0.5, 0.25, 0.25)",
           fmt("avg %.6f vs 1.5 (tol 0.002)", main_run.avg_measurements) + fmt(", 1e6 trials in %.2fs (limit 60s)", t6_s));

    // 7. No trial uses more than two measurements.
    int max_count = main_run.max_measurements;
    std::uint64_t total = main_run.trials;
    for (int i = 0; i < 20; ++i) {
        const Case& c = cases[static_cast<std::size_t>(i) * 50];
        const TrialReport r = run_batch(c.plan, 100000, 1000 + i);
        max_count = std::max(max_count, r.max_measurements);
        total += r.trials;
    }
    const OutcomeTable table = OutcomeTable::from_plan(cases[0].plan);
    for (std::uint64_t i = 0; i < 300000; ++i) {
        TrialStream s(77, i);
        max_count = std::max(max_count, run_trial(table, i % 3, s).measurements);
        ++total;
    }
    report(max_count <= 2, "AC7", "at most two measurements per trial",
           fmt("max count %.0f over %.0f trials", max_count, static_cast<double>(total)));

    // 8. Projector and observable algebra.
    const Projectors pr = projectors();
    const Matrix2 m = measurement_operator();
    const Complex tr = m.trace();
    const Complex disc = std::sqrt(tr * tr - 4.0 * m.determinant());
    const double l_hi = std::max(((tr + disc) / 2.0).real(), ((tr - disc) / 2.0).real());
    const double l_lo = std::min(((tr + disc) / 2.0).real(), ((tr - disc) / 2.0).real());
    double alg = std::max({max_abs_diff(pr.p1 + pr.p2, Matrix2::identity()), max_abs_diff(pr.p1 * pr.p1, pr.p1),
                           max_abs_diff(pr.p2 * pr.p2, pr.p2), max_abs_diff(pr.p1 * pr.p2, Matrix2::zero()),
                           max_abs_diff(pr.p2 * pr.p1, Matrix2::zero()), std::abs(l_hi - 1.0), std::abs(l_lo + 1.0)});
    double cpt_res = 0.0;
    double literal = 0.0;
    for (int j = 0; j < 100; ++j) {
        const AlphaParam am = AlphaParam::make(oracle::uniform(rng, -kPi / 2 + 1e-3, kPi / 2 - 1e-3));
        for (const Matrix2& op : {pr.p1, pr.p2, m}) {
            cpt_res = std::max(cpt_res, cpt_commutator_residual(op, am));
            for (const StateVector& v : {StateVector{1.0, 0.0}, StateVector{0.0, 1.0},
                                         StateVector{std::sqrt(0.5), std::sqrt(0.5)},
                                         StateVector{std::sqrt(0.5), kI * std::sqrt(0.5)}}) {
                const StateVector diff = cpt_map(apply(op, v), am) - apply(op, cpt_map(v, am));
                literal = std::max(literal, diff.norm());
            }
        }
    }
    report(alg < 1e-10 && cpt_res < 1e-10, "AC8", "projector algebra and CPT observables",
           fmt("max algebra deviation %.3e, CPT A = A^T CPT residual %.3e (tol 1e-10)", alg, cpt_res) +
               fmt("; literal CPT A = A CPT residual %.3f", literal));

    // 9. alpha = 0 degenerates to ordinary quantum mechanics.
    const AlphaParam zero = AlphaParam::make(0.0);
    double inner_dev = 0.0;
    for (int j = 0; j < 1000; ++j) {
        const StateVector u = oracle::random_vector(rng);
        const StateVector v = oracle::random_vector(rng);
        inner_dev = std::max(inner_dev, std::abs(cpt_inner(u, v, zero) - hermitian_inner(u, v)));
    }
    const PTHamiltonian h0 = canonical_hamiltonian(zero);
    double unitary_dev = 0.0;
    for (int j = 0; j <= 1000; ++j) {
        const Matrix2 u = evolution_operator(h0, -50.0 + 0.1 * j);
        unitary_dev = std::max(unitary_dev, max_abs_diff(u.adjoint() * u, Matrix2::identity()));
    }
    report(inner_dev < 1e-12 && unitary_dev < 1e-10, "AC9", "alpha = 0 reduces to Hermitian quantum mechanics",
           fmt("max |CPT - Hermitian product| %.3e (tol 1e-12), max |U^dagger U - 1| %.3e (tol 1e-10)", inner_dev,
               unitary_dev));

    std::printf("%d/9 criteria passed\n", 9 - failures);
    return failures == 0 ? 0 : 1;
}

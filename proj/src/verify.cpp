#include "ptqsd/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <random>
#include <stdexcept>

#include "ptqsd/oracles.hpp"
#include "ptqsd/protocol.hpp"
#include "ptqsd/pt_core.hpp"
#include "ptqsd/simulate.hpp"

namespace ptqsd {

namespace {

constexpr double kPi = std::numbers::pi;

class Collector {
public:
    explicit Collector(std::string suite) : suite_(std::move(suite)) {}

    void at_most(const std::string& name, double observed, double bound) {
        out_.push_back({suite_, name, observed, bound, true, observed <= bound});
    }
    void at_least(const std::string& name, double observed, double bound) {
        out_.push_back({suite_, name, observed, bound, false, observed >= bound});
    }
    std::vector<InvariantResult> take() { return std::move(out_); }

private:
    std::string suite_;
    std::vector<InvariantResult> out_;
};

double random_alpha(std::mt19937_64& rng, double margin = 1e-3) {
    return oracle::uniform(rng, -kPi / 2.0 + margin, kPi / 2.0 - margin);
}

std::vector<InvariantResult> core_algebra_suite() {
    Collector c("core-algebra");
    std::mt19937_64 rng(0xa16e'b7a1);

    double norm_dev = 0.0;
    for (int p = 0; p < 20; ++p) {
        const auto inst = oracle::random_instance(rng);
        const DiscriminationPlan plan = build_plan(inst.ensemble, inst.alpha_h, default_alpha_m());
        const Matrix2 gates[] = {plan.prep_gates.r1,  plan.prep_gates.r2,  plan.prep_gates.r3,
                                 plan.align_gates.r4, plan.align_gates.r5, plan.align_gates.r6};
        for (int i = 0; i < 50; ++i) {
            const StateVector v = oracle::random_vector(rng);
            for (const Matrix2& g : gates) {
                norm_dev = std::max(norm_dev, std::abs(apply(g, v).norm() - v.norm()));
            }
        }
    }
    c.at_most("gate norm preservation |(|Rv| - |v|)|", norm_dev, 1e-12);

    double roundtrip = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const StateVector v = oracle::random_vector(rng);
        roundtrip = std::max(roundtrip, 1.0 - fidelity(state_from_bloch(bloch_from_state(v)), v));
    }
    c.at_most("bloch round-trip 1 - fidelity", roundtrip, 1e-10);

    double assoc = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const Matrix2 a = oracle::random_matrix(rng);
        const Matrix2 b = oracle::random_matrix(rng);
        const Matrix2 m = oracle::random_matrix(rng);
        assoc = std::max(assoc, max_abs_diff((a * b) * m, a * (b * m)));
    }
    c.at_most("compose associativity", assoc, 1e-12);
    return c.take();
}

std::vector<InvariantResult> pt_core_suite() {
    Collector c("pt-core");
    std::mt19937_64 rng(0x9c07'e001);

    double min_norm = std::numeric_limits<double>::infinity();
    double max_imag = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const StateVector v = oracle::random_vector(rng).normalized();
        const Complex n = cpt_inner(v, v, AlphaParam::make(random_alpha(rng)));
        min_norm = std::min(min_norm, n.real());
        max_imag = std::max(max_imag, std::abs(n.imag()) / std::abs(n));
    }
    c.at_least("CPT positivity min <v|v>", min_norm, std::numeric_limits<double>::min());
    c.at_most("CPT self-product relative imaginary part", max_imag, 1e-12);

    double degeneration = 0.0;
    const AlphaParam zero = AlphaParam::make(0.0);
    for (int i = 0; i < 1000; ++i) {
        const StateVector u = oracle::random_vector(rng);
        const StateVector v = oracle::random_vector(rng);
        degeneration =
            std::max(degeneration, std::abs(cpt_inner(u, v, zero) - hermitian_inner(u, v)));
    }
    c.at_most("alpha = 0: CPT product equals Hermitian product", degeneration, 1e-12);

    double c_h = 0.0;
    double c_pt = 0.0;
    double involution = 0.0;
    for (int i = 0; i < 100; ++i) {
        const AlphaParam a = AlphaParam::make(random_alpha(rng, 0.05));
        const Matrix2 cop = c_operator(a);
        const Matrix2 h = canonical_hamiltonian(a).matrix();
        c_h = std::max(c_h, max_abs_diff(cop * h, h * cop));
        involution = std::max(involution, max_abs_diff(cop * cop, Matrix2::identity()));
        for (const StateVector& v : {StateVector{1.0, 0.0}, StateVector{0.0, 1.0},
                                     StateVector{1.0, 1.0}, StateVector{1.0, kI}}) {
            // C (PT v) against PT (C v).
            const StateVector lhs = apply(cop * parity(), v.conj());
            const StateVector rhs = apply(parity(), apply(cop, v).conj());
            c_pt = std::max(c_pt, (lhs - rhs).norm());
        }
    }
    c.at_most("[C, H] = 0", c_h, 1e-10);
    c.at_most("[C, PT] = 0 on probe set", c_pt, 1e-10);
    c.at_most("C^2 = 1", involution, 1e-10);

    double expm_dev = 0.0;
    double inverse_dev = 0.0;
    for (int j = 0; j < 10; ++j) {
        const PTHamiltonian h = canonical_hamiltonian(AlphaParam::make(random_alpha(rng, 0.2)));
        for (int k = 0; k < 100; ++k) {
            const double t = 10.0 * k / 99.0;
            const Matrix2 u = evolution_operator(h, t);
            expm_dev = std::max(expm_dev, max_abs_diff(u, oracle::expm((-kI * t) * h.matrix())));
            inverse_dev = std::max(
                inverse_dev, max_abs_diff(u * evolution_operator(h, -t), Matrix2::identity()));
        }
    }
    c.at_most("U(t) against matrix exponential, t in [0, 10]", expm_dev, 1e-8);
    c.at_most("U(t) U(-t) = 1", inverse_dev, 1e-10);

    double unitary0 = 0.0;
    const PTHamiltonian h0 = canonical_hamiltonian(zero);
    for (int k = 0; k < 100; ++k) {
        const Matrix2 u = evolution_operator(h0, 10.0 * k / 99.0);
        unitary0 = std::max(unitary0, max_abs_diff(u.adjoint() * u, Matrix2::identity()));
    }
    c.at_most("alpha = 0: U(t) unitary", unitary0, 1e-10);

    const Matrix2 u6 = evolution_operator(canonical_hamiltonian(AlphaParam::make(kPi / 6.0)), 1.0);
    c.at_least("alpha = pi/6: U(1) not unitary", max_abs_diff(u6.adjoint() * u6, Matrix2::identity()),
               1e-6);
    return c.take();
}

std::vector<InvariantResult> protocol_suite() {
    Collector c("protocol");
    std::mt19937_64 rng(0x7e07'0c01);
    const double r = 1.0 / std::numbers::sqrt2;

    double shape = 0.0;
    double sigma_eq = 0.0;
    double third = 0.0;
    double ortho = 0.0;
    double delta_dev = 0.0;
    double xi_dev = 0.0;
    double finals = 0.0;
    double cpt12 = 0.0;
    double angle_dev = 0.0;
    double identity_dev = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const auto inst = oracle::random_instance(rng);
        const AlphaParam am = AlphaParam::make(random_alpha(rng));
        const DiscriminationPlan plan = build_plan(inst.ensemble, inst.alpha_h, am);
        const oracle::DirectPipeline d = oracle::direct_pipeline(plan);
        const double x1 = (kPi - 2.0 * plan.prep.sigma) / 4.0;
        const double x2 = (kPi + 2.0 * plan.prep.sigma) / 4.0;
        shape = std::max({shape,
                          phase_distance(d.prepared[0], {std::cos(x1), -kI * std::sin(x1)}),
                          phase_distance(d.prepared[1], {std::cos(x2), -kI * std::sin(x2)})});
        sigma_eq = std::max(
            sigma_eq,
            std::abs(std::cos(plan.prep.sigma) -
                     std::abs(hermitian_inner(state_from_bloch(plan.states[0]),
                                              state_from_bloch(plan.states[1])))));
        third = std::max(third, phase_distance(d.prepared[2],
                                               {std::cos(plan.prep.mu / 2.0),
                                                std::polar(std::sin(plan.prep.mu / 2.0), plan.prep.nu)}));
        ortho = std::max(ortho, std::abs(hermitian_inner(d.evolved[0], d.evolved[1])));
        const double hd = plan.evo.delta / 2.0;
        delta_dev = std::max({delta_dev,
                              phase_distance(d.evolved[0], {std::cos(hd), -kI * std::sin(hd)}),
                              phase_distance(d.evolved[1], {std::sin(hd), kI * std::cos(hd)})});
        const double hx = plan.evo.xi / 2.0;
        xi_dev = std::max({xi_dev, phase_distance(d.aligned[0], {1.0, 0.0}),
                           phase_distance(d.aligned[1], {0.0, 1.0}),
                           phase_distance(d.aligned[2], {std::cos(hx), kI * std::sin(hx)})});
        const auto canon = plan.canonical_final_states();
        for (std::size_t k = 0; k < 3; ++k) finals = std::max(finals, phase_distance(d.final[k], canon[k]));
        cpt12 = std::max(cpt12, std::abs(cpt_inner(d.final[0], d.final[1], am)));
        angle_dev = std::max({angle_dev,
                              std::abs(plan.angles.cos2_k13 - oracle::cpt_cos2(d.final[0], d.final[2], am)),
                              std::abs(plan.angles.cos2_k23 - oracle::cpt_cos2(d.final[1], d.final[2], am)),
                              oracle::cpt_cos2(d.final[0], d.final[1], am)});
        identity_dev = std::max(
            identity_dev, std::abs(outcome_probabilities(d.final[2], am).p_plus - plan.angles.cos2_k13));
    }
    c.at_most("R3 R2 R1 psi1,2 canonical shape", shape, 1e-9);
    c.at_most("cos(sigma) = |<psi1|psi2>|", sigma_eq, 1e-12);
    c.at_most("R3 R2 R1 psi3 = (cos mu/2, e^{i nu} sin mu/2)", third, 1e-9);
    c.at_most("Hermitian orthogonality after evolution", ortho, 1e-9);
    c.at_most("evolved pair matches delta", delta_dev, 1e-9);
    c.at_most("R5 R4 aligned states match xi", xi_dev, 1e-9);
    c.at_most("final canonical forms", finals, 1e-9);
    c.at_most("CPT orthogonality of final psi1, psi2", cpt12, 1e-10);
    c.at_most("angle formulas against CPT products", angle_dev, 1e-10);
    c.at_most("p_plus(final psi3) = cos^2 k13", identity_dev, 1e-10);

    double kappa_dev = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const AlphaParam am = AlphaParam::make(random_alpha(rng));
        const double rho = oracle::uniform(rng, -kPi, kPi);
        const StateVector f3{std::cos(rho / 2.0), kI * std::sin(rho / 2.0)};
        const AngleReport a = kappa_angles(am, rho);
        kappa_dev = std::max({kappa_dev, std::abs(a.cos2_k13 - oracle::cpt_cos2({r, kI * r}, f3, am)),
                              std::abs(a.cos2_k23 - oracle::cpt_cos2({r, -kI * r}, f3, am))});
    }
    c.at_most("kappa_angles on random (alpha_m, rho)", kappa_dev, 1e-10);

    double worst_increase = 0.0;
    double worst_limit = 0.0;
    for (int i = 0; i < 100; ++i) {
        const double rho = oracle::uniform(rng, -kPi / 2.0 + 1e-3, kPi / 2.0 - 1e-3);
        double prev = kappa_angles(AlphaParam::make(kPi / 2.0 - 1e-3), rho).cos2_k13;
        for (int k = 0; k < 200; ++k) {
            const double a = kPi / 2.0 - 1e-3 - (kPi - 2e-3) * (k + 1) / 200.0;
            const double cur = kappa_angles(AlphaParam::make(a), rho).cos2_k13;
            worst_increase = std::max(worst_increase, cur - prev);
            prev = cur;
        }
        // cos^2 k13 -> eps^2 (1 + S) / (4 (1 - S)) as eps = alpha_m + pi/2 -> 0.
        const double sr = std::sin(rho);
        for (int k = 1; k <= 6; ++k) {
            const double eps = std::pow(10.0, -k);
            const double cur = kappa_angles(AlphaParam::make(-kPi / 2.0 + eps), rho).cos2_k13;
            worst_limit = std::max(worst_limit, cur / (eps * eps * (1.0 + sr) / (4.0 * (1.0 - sr))));
        }
    }
    c.at_most("cos^2 k13 shrinks as alpha_m decreases", worst_increase, 1e-15);
    // Corrections are O(eps^2) (0.25% at eps = 0.1) plus the 1e-4 relative
    // resolution of 1 + sin(alpha) at eps = 1e-6.
    c.at_most("cos^2 k13 / leading-order limit near alpha_m = -pi/2", worst_limit, 1.01);

    const Projectors p = projectors();
    const Matrix2 m = measurement_operator();
    double algebra = std::max({max_abs_diff(p.p1 * p.p1, p.p1), max_abs_diff(p.p2 * p.p2, p.p2),
                               max_abs_diff(p.p1 * p.p2, Matrix2::zero()),
                               max_abs_diff(p.p1 + p.p2, Matrix2::identity()),
                               max_abs_diff(m * m, Matrix2::identity()),
                               std::abs(m.trace())});
    double observable = 0.0;
    for (int i = 0; i < 100; ++i) {
        const AlphaParam am = AlphaParam::make(random_alpha(rng));
        observable = std::max({observable, cpt_commutator_residual(p.p1, am),
                               cpt_commutator_residual(p.p2, am)});
    }
    c.at_most("projector algebra (idempotent, complete, M^2 = 1)", algebra, 1e-10);
    c.at_most("CPT observable check for P1, P2", observable, 1e-10);
    return c.take();
}

std::vector<InvariantResult> simulate_suite() {
    Collector c("simulate");
    std::mt19937_64 rng(0x5e1a'7e00);

    double range = 0.0;
    double sum = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const OutcomeDistribution d =
            outcome_probabilities(oracle::random_vector(rng), AlphaParam::make(random_alpha(rng)));
        range = std::max({range, -d.p_plus, -d.p_minus, d.p_plus - 1.0, d.p_minus - 1.0});
        sum = std::max(sum, std::abs(d.p_plus + d.p_minus - 1.0));
    }
    c.at_most("outcome probabilities outside [0, 1]", range, 0.0);
    c.at_most("p_plus + p_minus = 1", sum, 1e-12);

    double closed = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const AlphaParam am = AlphaParam::make(random_alpha(rng));
        const double rho = oracle::uniform(rng, -kPi, kPi);
        const OutcomeDistribution d =
            outcome_probabilities({std::cos(rho / 2.0), kI * std::sin(rho / 2.0)}, am);
        const AngleReport a = kappa_angles(am, rho);
        closed = std::max({closed, std::abs(d.p_plus - a.cos2_k13),
                           std::abs(d.p_minus - (1.0 - a.cos2_k13))});
    }
    c.at_most("p_plus = cos^2 k13, p_minus = 1 - cos^2 k13", closed, 1e-10);

    const Ensemble e = Ensemble::make(
        {BlochState::make(kPi / 3.0, 0.0), BlochState::make(kPi / 2.0, kPi / 2.0),
         BlochState::wrapped(2.0 * kPi / 3.0, kPi)},
        {0.3, 0.2, 0.5});
    constexpr std::uint64_t kTrials = 1'000'000;
    double worst_avg_z = 0.0;
    double worst_err_z = 0.0;
    int max_count = 0;
    for (double alpha_m : {-kPi / 2.0 + 1e-3, -0.8, 0.4}) {
        const DiscriminationPlan plan = build_plan(e, std::nullopt, AlphaParam::make(alpha_m));
        const TrialReport rep = run_batch(plan, kTrials, 2024);
        const double q = plan.priors[0] + plan.priors[2] * plan.angles.cos2_k13;
        const double sd = std::sqrt(q * (1.0 - q) / kTrials);
        worst_avg_z = std::max(worst_avg_z, std::abs(rep.avg_measurements - expected_average(plan)) / sd);
        const double pe = rep.expected_error_rate;
        const double sde = std::sqrt(std::max(pe * (1.0 - pe), 1.0 / kTrials) / kTrials);
        worst_err_z = std::max(worst_err_z, std::abs(rep.error_rate - pe) / sde);
        max_count = std::max(max_count, rep.max_measurements);
    }
    c.at_most("avg measurements vs exact expectation (sigmas)", worst_avg_z, 4.0);
    c.at_most("error rate vs p3 cos^2 k13 (sigmas)", worst_err_z, 4.0);
    c.at_most("max measurements per trial", max_count, 2.0);

    const DiscriminationPlan plan = build_plan(e, std::nullopt, AlphaParam::make(-0.8));
    const TrialReport one = run_batch(plan, 20'000, 7, 1);
    const TrialReport many = run_batch(plan, 20'000, 7, 3);
    c.at_most("worker-count independence (differing confusion cells)",
              one.confusion == many.confusion && one.avg_measurements == many.avg_measurements ? 0.0 : 1.0,
              0.0);
    return c.take();
}

}  // namespace

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names{"core-algebra", "pt-core", "protocol", "simulate"};
    return names;
}

std::vector<InvariantResult> run_suite(std::string_view name) {
    using Suite = std::function<std::vector<InvariantResult>()>;
    const std::vector<std::pair<std::string, Suite>> suites{
        {"core-algebra", core_algebra_suite},
        {"pt-core", pt_core_suite},
        {"protocol", protocol_suite},
        {"simulate", simulate_suite},
    };
    std::vector<InvariantResult> out;
    bool matched = false;
    for (const auto& [suite_name, run] : suites) {
        if (name == "all" || name == suite_name) {
            matched = true;
            auto part = run();
            out.insert(out.end(), part.begin(), part.end());
        }
    }
    if (!matched) {
        throw std::invalid_argument("unknown verification suite '" + std::string(name) + "'");
    }
    return out;
}

}  // namespace ptqsd

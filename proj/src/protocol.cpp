#include "ptqsd/protocol.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "ptqsd/errors.hpp"

namespace ptqsd {

namespace {

constexpr double kPi = std::numbers::pi;

// Half-angle of R3: (pi - 2 sigma) / 4.
double r3_angle(double sigma) { return (kPi - 2.0 * sigma) / 4.0; }

AlphaParam auto_alpha(double sigma) {
    const AlphaInterval range = feasible_alpha_range(sigma);
    if (range.empty()) {
        throw InfeasibleError("no admissible evolution alpha: the states are (numerically) identical",
                              evolution_rhs(AlphaParam::make(std::nextafter(kPi / 2.0, 0.0)), sigma));
    }
    return AlphaParam::make(range.midpoint());
}

}  // namespace

Ensemble Ensemble::make(const std::array<BlochState, 3>& states,
                        const std::array<double, 3>& priors, const Tolerances& tol) {
    for (double p : priors) {
        if (!std::isfinite(p) || p < 0.0) {
            throw DomainError("priors must be finite and non-negative");
        }
    }
    const double total = priors[0] + priors[1] + priors[2];
    if (std::abs(total - 1.0) > tol.prior_sum) {
        std::ostringstream msg;
        msg << "priors must sum to 1 (got " << total << ")";
        throw DomainError(msg.str());
    }
    for (std::size_t i = 0; i < 3; ++i) {
        for (std::size_t j = i + 1; j < 3; ++j) {
            const double f = fidelity(state_from_bloch(states[i]), state_from_bloch(states[j]));
            if (f >= 1.0 - tol.distinct_states) {
                std::ostringstream msg;
                msg << "states " << i + 1 << " and " << j + 1 << " coincide (fidelity " << f << ")";
                throw DomainError(msg.str());
            }
        }
    }
    return Ensemble(states, priors);
}

OrderedEnsemble order_by_prior(const Ensemble& e) {
    std::array<std::size_t, 3> order{0, 1, 2};
    std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
        return e.priors()[i] > e.priors()[j];
    });
    const auto& s = e.states();
    const auto& p = e.priors();
    const Ensemble reordered = Ensemble::make({s[order[0]], s[order[1]], s[order[2]]},
                                              {p[order[0]], p[order[1]], p[order[2]]});
    return {reordered, order};
}

PairPreparation pair_preparation(const BlochState& s1, const BlochState& s2,
                                 const Tolerances& tol) {
    if (same_state(state_from_bloch(s1), state_from_bloch(s2), tol)) {
        throw DomainError("the first two states coincide; nothing to discriminate");
    }
    const double t1 = s1.theta();
    const double t2 = s2.theta();
    const double dphi = s2.phi() - s1.phi();
    const double c1 = std::cos(t1 / 2.0);
    const double sn1 = std::sin(t1 / 2.0);
    const double c2 = std::cos(t2 / 2.0);
    const double sn2 = std::sin(t2 / 2.0);

    const double overlap = std::cos(t1) * std::cos(t2) + std::sin(t1) * std::sin(t2) * std::cos(dphi);
    const double cos_sigma = std::sqrt(std::max(0.0, (1.0 + overlap) / 2.0));
    const double sin_sigma = std::sqrt(std::max(0.0, (1.0 - overlap) / 2.0));

    // Both arctangents are arguments of complex numbers; taking them with
    // atan2 keeps the quadrant that the post-R2 shape check relies on.
    const double lambda =
        std::atan2(sn1 * c2 * std::sin(dphi), c1 * sn2 - sn1 * c2 * std::cos(dphi)) -
        std::atan2(sn1 * sn2 * std::sin(dphi), c1 * c2 + sn1 * sn2 * std::cos(dphi));

    return {std::atan2(sin_sigma, cos_sigma), lambda};
}

PreparationParams preparation_params(const BlochState& s1, const BlochState& s2,
                                     const BlochState& s3, const Tolerances& tol) {
    const PairPreparation pair = pair_preparation(s1, s2, tol);
    const double c1 = std::cos(s1.theta() / 2.0);
    const double sn1 = std::sin(s1.theta() / 2.0);
    const double c3 = std::cos(s3.theta() / 2.0);
    const double sn3 = std::sin(s3.theta() / 2.0);
    const double x = r3_angle(pair.sigma);
    const double cx = std::cos(x);
    const double sx = std::sin(x);
    const Complex e = std::polar(1.0, s1.phi() - s2.phi() - pair.lambda);
    const Complex f = std::polar(1.0, s3.phi() - s1.phi());

    // The tan/cot factors multiplied through, so poles of the Bloch sphere
    // and sigma = pi/2 need no special casing.
    const Complex beta = c1 * c3 * cx + sn1 * c3 * sx * e + sn1 * sn3 * cx * f - c1 * sn3 * sx * e * f;
    const Complex gamma =
        kI * (sn1 * c3 * cx * e - c1 * c3 * sx - sn1 * sn3 * sx * f - c1 * sn3 * cx * e * f);

    const double mu = 2.0 * std::atan2(std::abs(gamma), std::abs(beta));
    const double nu = wrap_angle(std::arg(gamma) - std::arg(beta));
    return {pair.sigma, pair.lambda, beta, gamma, mu, nu};
}

PreparationGates gates_r123(const BlochState& s1, double sigma, double lambda, double phi2) {
    const double c1 = std::cos(s1.theta() / 2.0);
    const double sn1 = std::sin(s1.theta() / 2.0);
    const double x = r3_angle(sigma);
    const Complex isx = kI * std::sin(x);
    return {
        {c1, std::polar(sn1, -s1.phi()), -std::polar(sn1, s1.phi()), c1},
        Matrix2::diagonal(1.0, -kI * std::polar(1.0, -lambda - phi2)),
        {std::cos(x), -isx, -isx, std::cos(x)},
    };
}

PreparationGates gates_r123(const BlochState& s1, const PreparationParams& prep, double phi2) {
    return gates_r123(s1, prep.sigma, prep.lambda, phi2);
}

double evolution_rhs(AlphaParam alpha_h, double sigma) {
    const double sa = alpha_h.sin();
    const double ca = alpha_h.cos();
    const double cs = std::cos(sigma);
    const double num = ca * ca * cs;
    if (num == 0.0) return 0.0;
    const double den = 2.0 * sa - 2.0 * sa * sa * cs;
    if (den == 0.0) return std::copysign(std::numeric_limits<double>::infinity(), num);
    return num / den;
}

double evolution_time(const PTHamiltonian& h, double sigma, const Tolerances& tol) {
    const double rhs = evolution_rhs(h.alpha(), sigma);
    if (!(rhs >= -tol.feasibility && rhs <= 1.0 + tol.feasibility)) {
        std::ostringstream msg;
        msg.precision(17);
        msg << "evolution alpha " << h.alpha().value() << " is infeasible for sigma " << sigma
            << ": sin^2(omega tau) would have to equal " << rhs;
        throw InfeasibleError(msg.str(), rhs);
    }
    const double clamped = std::clamp(rhs, 0.0, 1.0);
    return std::asin(std::sqrt(clamped)) / h.omega();
}

double evolution_time(AlphaParam alpha_h, double sigma, const Tolerances& tol) {
    return evolution_time(canonical_hamiltonian(alpha_h), sigma, tol);
}

AlphaInterval feasible_alpha_range(double sigma) {
    if (!(sigma >= 0.0 && sigma <= kPi / 2.0)) {
        throw DomainError("sigma must lie in [0, pi/2]");
    }
    // Smaller root of cos(s) u^2 - 2u + cos(s) = 0 in u = sin(alpha).
    const double u = std::cos(sigma) / (1.0 + std::sin(sigma));
    return {std::asin(std::min(u, 1.0)), kPi / 2.0};
}

EvolvedAngle evolved_angle(double sigma, const PTHamiltonian& h, double tau) {
    const double a = h.alpha().value();
    const double w = h.omega() * tau;
    const double x = r3_angle(sigma);
    const double cx = std::cos(x);
    const double sx = std::sin(x);
    const double sa = std::sin(a);
    const double norm = std::sqrt(1.0 - std::cos(2.0 * w) * sa * sa +
                                  2.0 * std::sin(w) * sa *
                                      (std::cos(w) * std::cos(a) * std::sin(sigma) -
                                       std::sin(w) * std::cos(sigma)));
    const double cos_half = (std::cos(w - a) * cx - std::sin(w) * sx) / norm;
    const double sin_half = (std::sin(w) * cx + std::cos(w + a) * sx) / norm;
    return {2.0 * std::atan2(sin_half, cos_half), cos_half, sin_half, norm};
}

EvolutionParams post_evolution_params(const PreparationParams& prep, const PTHamiltonian& h,
                                      double tau) {
    const AlphaParam alpha = h.alpha();
    const double a = alpha.value();
    const double w = h.omega() * tau;
    const EvolvedAngle ev = evolved_angle(prep.sigma, h, tau);
    const double cd = std::cos(ev.delta / 2.0);
    const double sd = std::sin(ev.delta / 2.0);
    const double cm = std::cos(prep.mu / 2.0);
    const double sm = std::sin(prep.mu / 2.0);
    const Complex enu = std::polar(1.0, prep.nu);
    const double sw = std::sin(w);

    const Complex kappa = cm * (std::cos(w - a) * cd + sw * sd) +
                          kI * enu * sm * (std::cos(w + a) * sd - sw * cd);
    const Complex zeta = kI * cm * (std::cos(w - a) * sd - sw * cd) +
                         enu * sm * (std::cos(w + a) * cd + sw * sd);

    const double xi = 2.0 * std::atan2(std::abs(zeta), std::abs(kappa));
    const double chi = wrap_angle(std::arg(zeta) - std::arg(kappa));
    return {alpha, tau, ev.delta, kappa, zeta, xi, chi, xi + kPi / 2.0};
}

EvolutionParams post_evolution_params(const PreparationParams& prep, AlphaParam alpha_h,
                                      double tau) {
    return post_evolution_params(prep, canonical_hamiltonian(alpha_h), tau);
}

Matrix2 gate_r4(double delta) {
    const double cd = std::cos(delta / 2.0);
    const Complex isd = kI * std::sin(delta / 2.0);
    return {cd, isd, isd, cd};
}

AlignmentGates gates_r456(const EvolutionParams& evo) {
    const double r = 1.0 / std::numbers::sqrt2;
    return {
        gate_r4(evo.delta),
        Matrix2::diagonal(1.0, kI * std::polar(1.0, -evo.chi)),
        Matrix2{r, kI * r, kI * r, r},
    };
}

AngleReport kappa_angles(AlphaParam alpha_m, double rho) {
    const double sa = alpha_m.sin();
    const double sr = std::sin(rho);
    const double den = 2.0 * (1.0 + sa * sr);
    return {0.0, (1.0 + sa) * (1.0 + sr) / den, (1.0 - sa) * (1.0 - sr) / den};
}

Projectors projectors() {
    const Complex h{0.5, 0.0};
    const Complex ih{0.0, 0.5};
    return {{h, -ih, ih, h}, {h, ih, -ih, h}};
}

Matrix2 measurement_operator() {
    const Projectors p = projectors();
    return p.p1 - p.p2;
}

Verdict decide(int outcome) {
    switch (outcome) {
        case 1:
            return Verdict::kFirst;
        case -1:
            return Verdict::kRemainingPair;
        default:
            throw std::invalid_argument("measurement outcome must be +1 or -1");
    }
}

Matrix2 TwoStatePlan::evolution() const {
    return evolution_operator(canonical_hamiltonian(alpha_h), tau);
}

Matrix2 TwoStatePlan::transform() const { return r4 * evolution() * gates.combined(); }

StateVector TwoStatePlan::final_state(const StateVector& input) const {
    return apply(r4, apply(evolution() * gates.combined(), input).normalized());
}

double TwoStatePlan::probability_first(const StateVector& input) const {
    const StateVector f = final_state(input);
    return std::norm(f.a) / f.norm_squared();
}

std::size_t TwoStatePlan::decide(int outcome) const {
    switch (outcome) {
        case 1:
            return 0;
        case -1:
            return 1;
        default:
            throw std::invalid_argument("measurement outcome must be +1 or -1");
    }
}

TwoStatePlan stage_two_plan(const BlochState& s2, const BlochState& s3,
                            const std::array<double, 2>& priors,
                            std::optional<AlphaParam> alpha_h, const Tolerances& tol) {
    const PairPreparation prep = pair_preparation(s2, s3, tol);
    const AlphaParam alpha = alpha_h ? *alpha_h : auto_alpha(prep.sigma);
    const PTHamiltonian h = canonical_hamiltonian(alpha);
    const double rhs = evolution_rhs(alpha, prep.sigma);
    const double tau = evolution_time(h, prep.sigma, tol);
    const double delta = evolved_angle(prep.sigma, h, tau).delta;
    return {
        {s2, s3},
        priors,
        prep,
        gates_r123(s2, prep.sigma, prep.lambda, s3.phi()),
        alpha,
        rhs,
        tau,
        delta,
        gate_r4(delta),
    };
}

Matrix2 DiscriminationPlan::evolution() const {
    return evolution_operator(canonical_hamiltonian(evo.alpha_h), evo.tau);
}

StateVector DiscriminationPlan::final_state(const StateVector& input) const {
    const StateVector evolved = apply(evolution() * prep_gates.combined(), input);
    return apply(align_gates.combined(), evolved.normalized());
}

std::array<StateVector, 3> DiscriminationPlan::final_states() const {
    return {final_state(state_from_bloch(states[0])), final_state(state_from_bloch(states[1])),
            final_state(state_from_bloch(states[2]))};
}

std::array<StateVector, 3> DiscriminationPlan::canonical_final_states() const {
    const double r = 1.0 / std::numbers::sqrt2;
    return {
        StateVector{r, kI * r},
        StateVector{r, -kI * r},
        StateVector{std::cos(evo.rho / 2.0), kI * std::sin(evo.rho / 2.0)},
    };
}

AlphaParam default_alpha_m() { return AlphaParam::make(-kPi / 2.0 + kDefaultAlphaMOffset); }

DiscriminationPlan build_plan(const Ensemble& e, std::optional<AlphaParam> alpha_h,
                              AlphaParam alpha_m, const Tolerances& tol) {
    const OrderedEnsemble ordered = order_by_prior(e);
    const auto& s = ordered.ensemble.states();
    const auto& p = ordered.ensemble.priors();

    const PreparationParams prep = preparation_params(s[0], s[1], s[2], tol);
    const AlphaParam alpha = alpha_h ? *alpha_h : auto_alpha(prep.sigma);
    const PTHamiltonian h = canonical_hamiltonian(alpha);
    const double rhs = evolution_rhs(alpha, prep.sigma);
    const double tau = evolution_time(h, prep.sigma, tol);
    const EvolutionParams evo = post_evolution_params(prep, h, tau);

    const double rest = p[1] + p[2];
    const std::array<double, 2> pair_priors =
        rest > 0.0 ? std::array<double, 2>{p[1] / rest, p[2] / rest}
                   : std::array<double, 2>{0.5, 0.5};

    DiscriminationPlan plan{
        s,
        p,
        ordered.order,
        prep,
        gates_r123(s[0], prep, s[1].phi()),
        rhs,
        evo,
        gates_r456(evo),
        alpha_m,
        kappa_angles(alpha_m, evo.rho),
        projectors(),
        measurement_operator(),
        {},
        0.0,
        stage_two_plan(s[1], s[2], pair_priors, std::nullopt, tol),
    };

    const Matrix2 pre = plan.evolution() * plan.prep_gates.combined();
    const auto finals = plan.final_states();
    const auto canonical = plan.canonical_final_states();
    for (std::size_t k = 0; k < 3; ++k) {
        plan.evolved_norms[k] = apply(pre, state_from_bloch(s[k])).norm();
        plan.shape_residual = std::max(plan.shape_residual, phase_distance(finals[k], canonical[k]));
    }
    return plan;
}

}  // namespace ptqsd

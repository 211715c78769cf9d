#pragma once

// Three-state discrimination plan: gate parameters, the PT evolution that
// makes the first two states Hermitian-orthogonal, the alignment gates that
// put them at (1, +-i)/sqrt(2), the CPT angle report and the projective
// CPT measurement. Also the two-state plan used after the first state has
// been excluded.

#include <array>
#include <cstddef>
#include <optional>

#include "ptqsd/algebra.hpp"
#include "ptqsd/pt_core.hpp"

namespace ptqsd {

class Ensemble {
public:
    // Priors must be non-negative and sum to one; no two states may be the
    // same ray.
    static Ensemble make(const std::array<BlochState, 3>& states,
                         const std::array<double, 3>& priors,
                         const Tolerances& tol = kDefaultTolerances);

    const std::array<BlochState, 3>& states() const { return states_; }
    const std::array<double, 3>& priors() const { return priors_; }

private:
    Ensemble(const std::array<BlochState, 3>& states, const std::array<double, 3>& priors)
        : states_(states), priors_(priors) {}

    std::array<BlochState, 3> states_;
    std::array<double, 3> priors_;
};

struct OrderedEnsemble {
    Ensemble ensemble;
    // order[k] is the input index (0-based) of plan-internal state k.
    std::array<std::size_t, 3> order;
};

// Stable sort by descending prior: plan state 0 carries the maximal prior,
// ties keep input order.
OrderedEnsemble order_by_prior(const Ensemble& e);

// sigma with cos(sigma) = |<psi1|psi2>|, and the relative phase lambda that
// R2 removes.
struct PairPreparation {
    double sigma;
    double lambda;
};

PairPreparation pair_preparation(const BlochState& s1, const BlochState& s2,
                                 const Tolerances& tol = kDefaultTolerances);

struct PreparationParams {
    double sigma;
    double lambda;
    // R3 R2 R1 psi3 = (beta, gamma) = e^{i arg beta} (cos(mu/2), e^{i nu} sin(mu/2)).
    Complex beta;
    Complex gamma;
    double mu;
    double nu;
};

// s3 may coincide with s1 or s2; s1 and s2 must differ.
PreparationParams preparation_params(const BlochState& s1, const BlochState& s2,
                                     const BlochState& s3,
                                     const Tolerances& tol = kDefaultTolerances);

struct PreparationGates {
    Matrix2 r1;
    Matrix2 r2;
    Matrix2 r3;

    Matrix2 combined() const { return r3 * r2 * r1; }
};

// After R3 R2 R1, psi1 and psi2 sit at (cos((pi -+ 2 sigma)/4), -i sin((pi -+ 2 sigma)/4)).
PreparationGates gates_r123(const BlochState& s1, double sigma, double lambda, double phi2);
PreparationGates gates_r123(const BlochState& s1, const PreparationParams& prep, double phi2);

// Right-hand side of sin^2(omega tau) = cos^2(a) cos(s) / (2 sin(a) - 2 sin^2(a) cos(s)).
double evolution_rhs(AlphaParam alpha_h, double sigma);

// Smallest non-negative tau solving the equation above. Throws
// InfeasibleError when the right-hand side leaves [0, 1].
double evolution_time(const PTHamiltonian& h, double sigma,
                      const Tolerances& tol = kDefaultTolerances);
double evolution_time(AlphaParam alpha_h, double sigma,
                      const Tolerances& tol = kDefaultTolerances);

// {alpha in (0, pi/2) : cos(sigma) (1 + sin^2 alpha) <= 2 sin alpha}, which is
// [asin(cos(sigma) / (1 + sin(sigma))), pi/2).
struct AlphaInterval {
    double lower;
    double upper;

    bool empty() const { return !(lower < upper); }
    bool contains(double alpha) const { return alpha > 0.0 && alpha >= lower && alpha < upper; }
    double midpoint() const { return 0.5 * (lower + upper); }
};

AlphaInterval feasible_alpha_range(double sigma);

// Angle delta of the renormalized evolved psi1 = (cos(delta/2), -i sin(delta/2)).
struct EvolvedAngle {
    double delta;
    double cos_half;
    double sin_half;
    // Hermitian norm of the evolved psi1 without the 1/cos(alpha) prefactor.
    double norm;
};

EvolvedAngle evolved_angle(double sigma, const PTHamiltonian& h, double tau);

struct EvolutionParams {
    AlphaParam alpha_h;
    double tau;
    double delta;
    Complex kappa;
    Complex zeta;
    double xi;
    double chi;
    double rho;
};

EvolutionParams post_evolution_params(const PreparationParams& prep, const PTHamiltonian& h,
                                      double tau);
EvolutionParams post_evolution_params(const PreparationParams& prep, AlphaParam alpha_h,
                                      double tau);

struct AlignmentGates {
    Matrix2 r4;
    Matrix2 r5;
    Matrix2 r6;

    Matrix2 combined() const { return r6 * r5 * r4; }
};

Matrix2 gate_r4(double delta);
AlignmentGates gates_r456(const EvolutionParams& evo);

// Squared CPT cosines between the final states. cos2_k12 is identically 0
// and cos2_k13 + cos2_k23 = 1.
struct AngleReport {
    double cos2_k12;
    double cos2_k13;
    double cos2_k23;
};

AngleReport kappa_angles(AlphaParam alpha_m, double rho);

struct Projectors {
    Matrix2 p1;
    Matrix2 p2;
};

// CPT projectors onto (1, i)/sqrt(2) and (1, -i)/sqrt(2); independent of alpha.
Projectors projectors();

// P1 - P2.
Matrix2 measurement_operator();

enum class Verdict {
    kFirst,          // M = +1
    kRemainingPair,  // M = -1, continue with the two-state plan
};

// Throws std::invalid_argument for outcomes other than +1 or -1.
Verdict decide(int outcome);

// Discrimination of the two states left after the first measurement. The
// pair goes through the same preparation and evolution as psi1, psi2 of
// the three-state plan; R4 then maps them onto the computational basis,
// where an ordinary projective measurement separates them.
struct TwoStatePlan {
    std::array<BlochState, 2> states;
    std::array<double, 2> priors;
    PairPreparation prep;
    PreparationGates gates;
    AlphaParam alpha_h;
    double rhs;
    double tau;
    double delta;
    Matrix2 r4;

    Matrix2 evolution() const;
    Matrix2 transform() const;

    // Renormalized state entering the final projective measurement.
    StateVector final_state(const StateVector& input) const;

    // Born probability of outcome +1 (basis state (1, 0)) for an input state.
    double probability_first(const StateVector& input) const;

    // +1 -> index 0 of the pair, -1 -> index 1.
    std::size_t decide(int outcome) const;
};

TwoStatePlan stage_two_plan(const BlochState& s2, const BlochState& s3,
                            const std::array<double, 2>& priors,
                            std::optional<AlphaParam> alpha_h = std::nullopt,
                            const Tolerances& tol = kDefaultTolerances);

struct DiscriminationPlan {
    // Plan-internal order (state 0 has the largest prior).
    std::array<BlochState, 3> states;
    std::array<double, 3> priors;
    std::array<std::size_t, 3> state_order;

    PreparationParams prep;
    PreparationGates prep_gates;
    double rhs;
    EvolutionParams evo;
    AlignmentGates align_gates;

    AlphaParam alpha_m;
    AngleReport angles;
    Projectors proj;
    Matrix2 measurement;

    // Hermitian norms of U(tau) R3 R2 R1 psi_k before renormalization.
    std::array<double, 3> evolved_norms;
    // Largest phase distance between the directly transformed states and
    // the canonical final forms.
    double shape_residual;

    TwoStatePlan stage_two;

    Matrix2 evolution() const;
    // R6 R5 R4 applied after the renormalized evolution.
    StateVector final_state(const StateVector& input) const;
    std::array<StateVector, 3> final_states() const;
    // (1, i)/sqrt(2), (1, -i)/sqrt(2), (cos(rho/2), i sin(rho/2)).
    std::array<StateVector, 3> canonical_final_states() const;
};

inline constexpr double kDefaultAlphaMOffset = 1e-3;

// -pi/2 + 1e-3.
AlphaParam default_alpha_m();

// alpha_h defaults to the midpoint of feasible_alpha_range(sigma).
DiscriminationPlan build_plan(const Ensemble& e, std::optional<AlphaParam> alpha_h,
                              AlphaParam alpha_m,
                              const Tolerances& tol = kDefaultTolerances);

}  // namespace ptqsd

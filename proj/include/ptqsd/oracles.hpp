#pragma once

// Independent reference computations used by the verification suites and
// the tests. Nothing in the protocol itself depends on this header.

#include <cstdint>
#include <optional>
#include <random>

#include "ptqsd/algebra.hpp"
#include "ptqsd/protocol.hpp"

namespace ptqsd::oracle {

// Matrix exponential by scaling and squaring of a truncated Taylor series.
Matrix2 expm(const Matrix2& a);

// Haar-random pure state (uniform on the Bloch sphere).
BlochState random_bloch(std::mt19937_64& rng);

// Random vector with i.i.d. Gaussian amplitudes (not normalized).
StateVector random_vector(std::mt19937_64& rng);

// Random matrix with entries in the unit square.
Matrix2 random_matrix(std::mt19937_64& rng);

double uniform(std::mt19937_64& rng, double lo, double hi);

struct Instance {
    Ensemble ensemble;
    // Always inside feasible_alpha_range of the ordered first pair.
    AlphaParam alpha_h;
};

// Random distinct triple with random priors and an evolution alpha drawn
// from the interior of the feasible interval.
Instance random_instance(std::mt19937_64& rng);

// States of a plan pushed through gates and the matrix exponential of -iH tau
// step by step, with renormalization after the evolution.
struct DirectPipeline {
    std::array<StateVector, 3> prepared;
    std::array<StateVector, 3> evolved;  // renormalized
    std::array<StateVector, 3> aligned;  // after R5 R4
    std::array<StateVector, 3> final;    // after R6
};

DirectPipeline direct_pipeline(const DiscriminationPlan& plan);

// |<u|v>_CPT|^2 / (<u|u>_CPT <v|v>_CPT).
double cpt_cos2(const StateVector& u, const StateVector& v, AlphaParam alpha);

// Brute-force lower end of the feasible alpha interval: first grid point in
// (0, pi/2) where the evolution-time right-hand side is in [0, 1].
std::optional<double> scan_feasible_lower(double sigma, double step);

}  // namespace ptqsd::oracle

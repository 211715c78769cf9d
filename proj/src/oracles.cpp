#include "ptqsd/oracles.hpp"

#include <cmath>
#include <numbers>

namespace ptqsd::oracle {

Matrix2 expm(const Matrix2& a) {
    int squarings = 0;
    double scale = 1.0;
    const double size = 2.0 * a.max_abs();
    while (size * scale > 0.25) {
        scale *= 0.5;
        ++squarings;
    }
    const Matrix2 x = scale * a;
    Matrix2 term = Matrix2::identity();
    Matrix2 sum = Matrix2::identity();
    for (int k = 1; k <= 24; ++k) {
        term = (1.0 / k) * (term * x);
        sum = sum + term;
    }
    for (int i = 0; i < squarings; ++i) sum = sum * sum;
    return sum;
}

double uniform(std::mt19937_64& rng, double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
}

BlochState random_bloch(std::mt19937_64& rng) {
    const double z = uniform(rng, -1.0, 1.0);
    const double phi = uniform(rng, -std::numbers::pi, std::numbers::pi);
    return BlochState::wrapped(std::acos(z), phi);
}

StateVector random_vector(std::mt19937_64& rng) {
    std::normal_distribution<double> g;
    return {{g(rng), g(rng)}, {g(rng), g(rng)}};
}

Matrix2 random_matrix(std::mt19937_64& rng) {
    const auto z = [&] { return Complex{uniform(rng, -1.0, 1.0), uniform(rng, -1.0, 1.0)}; };
    return {z(), z(), z(), z()};
}

Instance random_instance(std::mt19937_64& rng) {
    for (;;) {
        std::array<BlochState, 3> states{random_bloch(rng), random_bloch(rng), random_bloch(rng)};
        std::array<double, 3> w{uniform(rng, 0.0, 1.0), uniform(rng, 0.0, 1.0),
                                uniform(rng, 0.0, 1.0)};
        const double total = w[0] + w[1] + w[2];
        for (double& p : w) p /= total;
        std::optional<Ensemble> e;
        try {
            e = Ensemble::make(states, w);
        } catch (const std::exception&) {
            continue;
        }
        const OrderedEnsemble ordered = order_by_prior(*e);
        const auto& s = ordered.ensemble.states();
        const double sigma = pair_preparation(s[0], s[1]).sigma;
        const AlphaInterval range = feasible_alpha_range(sigma);
        if (range.empty()) continue;
        const double lo = std::max(range.lower, 1e-6);
        const double alpha = lo + (range.upper - lo) * uniform(rng, 0.02, 0.98);
        return {*e, AlphaParam::make(alpha)};
    }
}

DirectPipeline direct_pipeline(const DiscriminationPlan& plan) {
    const Matrix2 h = canonical_hamiltonian(plan.evo.alpha_h).matrix();
    const Matrix2 u = expm((-kI * plan.evo.tau) * h);
    DirectPipeline d{};
    for (std::size_t k = 0; k < 3; ++k) {
        StateVector v = state_from_bloch(plan.states[k]);
        v = apply(plan.prep_gates.r1, v);
        v = apply(plan.prep_gates.r2, v);
        v = apply(plan.prep_gates.r3, v);
        d.prepared[k] = v;
        d.evolved[k] = apply(u, v).normalized();
        d.aligned[k] = apply(plan.align_gates.r5, apply(plan.align_gates.r4, d.evolved[k]));
        d.final[k] = apply(plan.align_gates.r6, d.aligned[k]);
    }
    return d;
}

double cpt_cos2(const StateVector& u, const StateVector& v, AlphaParam alpha) {
    const double uu = cpt_inner(u, u, alpha).real();
    const double vv = cpt_inner(v, v, alpha).real();
    return std::norm(cpt_inner(u, v, alpha)) / (uu * vv);
}

std::optional<double> scan_feasible_lower(double sigma, double step) {
    const double half_pi = std::numbers::pi / 2.0;
    const double cs = std::cos(sigma);
    for (double a = step; a < half_pi; a += step) {
        const double sa = std::sin(a);
        const double ca = std::cos(a);
        const double rhs = ca * ca * cs / (2.0 * sa - 2.0 * sa * sa * cs);
        if (rhs >= 0.0 && rhs <= 1.0) return a;
    }
    return std::nullopt;
}

}  // namespace ptqsd::oracle

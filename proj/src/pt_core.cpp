#include "ptqsd/pt_core.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include "ptqsd/errors.hpp"

namespace ptqsd {

AlphaParam AlphaParam::make(double alpha) {
    if (!std::isfinite(alpha) || std::abs(alpha) >= std::numbers::pi / 2.0) {
        throw DomainError("alpha must lie strictly inside (-pi/2, pi/2)");
    }
    return AlphaParam(alpha);
}

double AlphaParam::sin() const { return std::sin(alpha_); }

double AlphaParam::cos() const { return std::cos(alpha_); }

PTHamiltonian PTHamiltonian::make(double r, double s, double theta) {
    if (!std::isfinite(r) || !std::isfinite(s) || !std::isfinite(theta)) {
        throw DomainError("Hamiltonian parameters must be finite");
    }
    const double rs = r * std::sin(theta);
    if (!(s > 0.0) || !(s * s > rs * rs)) {
        throw DomainError("Hamiltonian is outside the unbroken PT phase (need s > |r sin theta|)");
    }
    return PTHamiltonian(r, s, theta, AlphaParam::make(std::asin(rs / s)), std::sqrt(s * s - rs * rs));
}

Matrix2 PTHamiltonian::matrix() const {
    return {std::polar(r_, theta_), s_, s_, std::polar(r_, -theta_)};
}

PTHamiltonian canonical_hamiltonian(AlphaParam alpha) {
    return PTHamiltonian(alpha.sin(), 1.0, std::numbers::pi / 2.0, alpha, alpha.cos());
}

Matrix2 parity() { return {0.0, 1.0, 1.0, 0.0}; }

Matrix2 c_operator(AlphaParam alpha) {
    const double inv_cos = 1.0 / alpha.cos();
    const Complex is = kI * alpha.sin();
    return inv_cos * Matrix2{is, 1.0, 1.0, -is};
}

StateVector cpt_map(const StateVector& v, AlphaParam alpha) {
    return apply(c_operator(alpha) * parity(), v.conj());
}

Complex cpt_inner(const StateVector& u, const StateVector& v, AlphaParam alpha) {
    const StateVector bra = cpt_map(u, alpha);
    return bra.a * v.a + bra.b * v.b;
}

Matrix2 cpt_metric(AlphaParam alpha) { return parity() * c_operator(alpha); }

Matrix2 evolution_operator(const PTHamiltonian& h, double t) {
    const AlphaParam alpha = h.alpha();
    const double a = alpha.value();
    const double wt = h.omega() * t;
    const Complex prefactor = std::polar(1.0 / alpha.cos(), -h.r() * std::cos(h.theta()) * t);
    const Complex off = -kI * std::sin(wt);
    return prefactor * Matrix2{std::cos(wt - a), off, off, std::cos(wt + a)};
}

double cpt_commutator_residual(const Matrix2& m, AlphaParam alpha) {
    const double r = 1.0 / std::numbers::sqrt2;
    const std::array<StateVector, 4> probes{{
        {1.0, 0.0},
        {0.0, 1.0},
        {r, r},
        {r, kI * r},
    }};
    double worst = 0.0;
    for (const StateVector& v : probes) {
        const StateVector lhs = cpt_map(apply(m, v), alpha);
        const StateVector rhs = apply(m.transpose(), cpt_map(v, alpha));
        worst = std::max(worst, (lhs - rhs).norm());
    }
    return worst;
}

bool commutes_with_cpt(const Matrix2& m, AlphaParam alpha, const Tolerances& tol) {
    return cpt_commutator_residual(m, alpha) <= tol.commutation;
}

}  // namespace ptqsd

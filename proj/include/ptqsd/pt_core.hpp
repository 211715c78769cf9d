#pragma once

// PT-symmetric two-level Hamiltonian, the C/P/T operators it induces, the
// CPT inner product and the closed-form (non-unitary) evolution operator.

#include "ptqsd/algebra.hpp"

namespace ptqsd {

// Strictly inside (-pi/2, pi/2); the C operator is singular at the ends.
class AlphaParam {
public:
    static AlphaParam make(double alpha);

    double value() const { return alpha_; }
    double sin() const;
    double cos() const;

    friend bool operator==(const AlphaParam&, const AlphaParam&) = default;

private:
    explicit AlphaParam(double alpha) : alpha_(alpha) {}

    double alpha_;
};

// H = [[r e^{i theta}, s], [s, r e^{-i theta}]] in the unbroken phase:
// s > 0 and s^2 > r^2 sin^2(theta).
class PTHamiltonian {
public:
    static PTHamiltonian make(double r, double s, double theta);

    double r() const { return r_; }
    double s() const { return s_; }
    double theta() const { return theta_; }

    // sin(alpha) = (r / s) sin(theta).
    AlphaParam alpha() const { return alpha_; }
    // sqrt(s^2 - r^2 sin^2(theta)).
    double omega() const { return omega_; }

    Matrix2 matrix() const;

private:
    friend PTHamiltonian canonical_hamiltonian(AlphaParam alpha);

    PTHamiltonian(double r, double s, double theta, AlphaParam alpha, double omega)
        : r_(r), s_(s), theta_(theta), alpha_(alpha), omega_(omega) {}

    double r_;
    double s_;
    double theta_;
    // Kept exactly as given for the canonical form, so that alpha_h
    // survives a round trip through the Hamiltonian.
    AlphaParam alpha_;
    double omega_;
};

// (r = sin alpha, s = 1, theta = pi/2): omega = cos alpha and the scalar
// phase e^{-i r cos(theta) t} of the evolution operator vanishes.
PTHamiltonian canonical_hamiltonian(AlphaParam alpha);

// P = [[0, 1], [1, 0]].
Matrix2 parity();

// (1 / cos alpha) [[i sin alpha, 1], [1, -i sin alpha]].
Matrix2 c_operator(AlphaParam alpha);

// C P conj(v): the transposed content of the CPT bra of v.
StateVector cpt_map(const StateVector& v, AlphaParam alpha);

// cpt_map(u)^T . v, a plain dot product.
Complex cpt_inner(const StateVector& u, const StateVector& v, AlphaParam alpha);

// Hermitian matrix G = P C with cpt_inner(u, v) = u^dagger G v.
Matrix2 cpt_metric(AlphaParam alpha);

// e^{-iHt} = e^{-i r cos(theta) t} / cos(alpha)
//            [[cos(wt - alpha), -i sin(wt)], [-i sin(wt), cos(wt + alpha)]].
// U(t) U(-t) = 1 for every alpha; U is unitary only at alpha = 0.
Matrix2 evolution_operator(const PTHamiltonian& h, double t);

// CPT-observable test: CPT m = m^T CPT, checked on a fixed probe set that
// spans the real and imaginary directions of C^2. This is exactly
// cpt_inner(u, m v) = cpt_inner(m u, v) for all u, v, and it reduces to the
// antilinear commutator [CPT, m] = 0 when m is symmetric (H, C, 1, ...).
// The bare commutator cannot be used for the projectors: P1^T = P2.
bool commutes_with_cpt(const Matrix2& m, AlphaParam alpha,
                       const Tolerances& tol = kDefaultTolerances);

// Largest probe-set residual |CPT(m v) - m^T CPT(v)|.
double cpt_commutator_residual(const Matrix2& m, AlphaParam alpha);

}  // namespace ptqsd

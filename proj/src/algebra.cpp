#include "ptqsd/algebra.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "ptqsd/errors.hpp"

namespace ptqsd {

namespace {

bool finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

}  // namespace

double StateVector::norm() const { return std::hypot(std::abs(a), std::abs(b)); }

StateVector StateVector::normalized() const {
    const double n = norm();
    if (!(n > 0.0) || !std::isfinite(n)) {
        throw DomainError("cannot normalize a zero or non-finite state vector");
    }
    return {a / n, b / n};
}

bool StateVector::is_finite() const { return finite(a) && finite(b); }

Matrix2 Matrix2::adjoint() const {
    return {std::conj(m00), std::conj(m10), std::conj(m01), std::conj(m11)};
}

double Matrix2::max_abs() const {
    return std::max({std::abs(m00), std::abs(m01), std::abs(m10), std::abs(m11)});
}

bool Matrix2::is_finite() const {
    return finite(m00) && finite(m01) && finite(m10) && finite(m11);
}

StateVector apply(const Matrix2& m, const StateVector& v) {
    return {m.m00 * v.a + m.m01 * v.b, m.m10 * v.a + m.m11 * v.b};
}

Matrix2 compose(const Matrix2& m2, const Matrix2& m1) {
    return {
        m2.m00 * m1.m00 + m2.m01 * m1.m10,
        m2.m00 * m1.m01 + m2.m01 * m1.m11,
        m2.m10 * m1.m00 + m2.m11 * m1.m10,
        m2.m10 * m1.m01 + m2.m11 * m1.m11,
    };
}

Complex hermitian_inner(const StateVector& u, const StateVector& v) {
    return std::conj(u.a) * v.a + std::conj(u.b) * v.b;
}

double fidelity(const StateVector& u, const StateVector& v) {
    const double nu = u.norm_squared();
    const double nv = v.norm_squared();
    if (!(nu > 0.0) || !(nv > 0.0)) {
        throw DomainError("fidelity of a zero state vector is undefined");
    }
    return std::norm(hermitian_inner(u, v)) / (nu * nv);
}

bool same_state(const StateVector& u, const StateVector& v, const Tolerances& tol) {
    return fidelity(u, v) >= 1.0 - tol.state_equality;
}

double phase_distance(const StateVector& u, const StateVector& v) {
    const StateVector un = u.normalized();
    const StateVector vn = v.normalized();
    const Complex overlap = hermitian_inner(vn, un);
    const double mag = std::abs(overlap);
    const Complex phase = mag > 0.0 ? overlap / mag : Complex{1.0};
    return (un - phase * vn).norm();
}

double max_abs_diff(const Matrix2& x, const Matrix2& y) { return (x - y).max_abs(); }

double max_abs_diff(const StateVector& u, const StateVector& v) {
    return std::max(std::abs(u.a - v.a), std::abs(u.b - v.b));
}

double wrap_angle(double phi) {
    constexpr double pi = std::numbers::pi;
    double w = phi - 2.0 * pi * std::floor((phi + pi) / (2.0 * pi));
    if (w >= pi) w -= 2.0 * pi;
    if (w < -pi) w = -pi;
    return w;
}

BlochState BlochState::make(double theta, double phi, const Tolerances& tol) {
    constexpr double pi = std::numbers::pi;
    if (!std::isfinite(theta) || !std::isfinite(phi)) {
        throw DomainError("Bloch angles must be finite");
    }
    if (theta < 0.0 || theta > pi) {
        throw DomainError("Bloch polar angle theta must lie in [0, pi]");
    }
    if (phi < -pi || phi >= pi) {
        throw DomainError("Bloch azimuth phi must lie in [-pi, pi)");
    }
    if (std::sin(theta / 2.0) < tol.pole || std::cos(theta / 2.0) < tol.pole) {
        phi = 0.0;
    }
    return BlochState(theta, phi);
}

BlochState BlochState::wrapped(double theta, double phi, const Tolerances& tol) {
    if (!std::isfinite(phi)) {
        throw DomainError("Bloch angles must be finite");
    }
    return make(theta, wrap_angle(phi), tol);
}

StateVector state_from_bloch(const BlochState& s) {
    const double half = s.theta() / 2.0;
    return {std::cos(half), std::polar(std::sin(half), s.phi())};
}

BlochState bloch_from_state(const StateVector& v, const Tolerances& tol) {
    if (!v.is_finite()) {
        throw DomainError("state vector has non-finite amplitudes");
    }
    const StateVector n = v.normalized();
    const double theta = 2.0 * std::atan2(std::abs(n.b), std::abs(n.a));
    // Relative phase b/a with the global phase of a removed.
    const double phi = std::arg(n.b * std::conj(n.a));
    return BlochState::wrapped(std::clamp(theta, 0.0, std::numbers::pi), phi, tol);
}

BlochVector bloch_vector(const StateVector& v) {
    const StateVector n = v.normalized();
    const Complex coherence = std::conj(n.a) * n.b;
    return {2.0 * coherence.real(), 2.0 * coherence.imag(), std::norm(n.a) - std::norm(n.b)};
}

}  // namespace ptqsd

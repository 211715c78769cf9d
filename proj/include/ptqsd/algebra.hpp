#pragma once

// Complex 2-vectors, 2x2 matrices and Bloch-sphere conversions.
// Everything here is a small value type; no operation has side effects.

#include <complex>

#include "ptqsd/tolerances.hpp"

namespace ptqsd {

using Complex = std::complex<double>;

inline constexpr Complex kI{0.0, 1.0};

// Amplitudes of a qubit in the computational basis. Not necessarily
// normalized: non-unitary evolution and projectors produce arbitrary norms.
struct StateVector {
    Complex a;
    Complex b;

    double norm_squared() const { return std::norm(a) + std::norm(b); }
    double norm() const;

    // Hermitian-normalized copy. Throws DomainError for the zero vector.
    StateVector normalized() const;

    // Componentwise complex conjugation (the matrix action of T).
    StateVector conj() const { return {std::conj(a), std::conj(b)}; }

    bool is_finite() const;

    friend StateVector operator+(const StateVector& u, const StateVector& v) {
        return {u.a + v.a, u.b + v.b};
    }
    friend StateVector operator-(const StateVector& u, const StateVector& v) {
        return {u.a - v.a, u.b - v.b};
    }
    friend StateVector operator*(Complex s, const StateVector& v) {
        return {s * v.a, s * v.b};
    }
    friend bool operator==(const StateVector&, const StateVector&) = default;
};

// Row-major 2x2 complex matrix.
struct Matrix2 {
    Complex m00;
    Complex m01;
    Complex m10;
    Complex m11;

    static Matrix2 identity() { return {1.0, 0.0, 0.0, 1.0}; }
    static Matrix2 zero() { return {0.0, 0.0, 0.0, 0.0}; }
    static Matrix2 diagonal(Complex d0, Complex d1) { return {d0, 0.0, 0.0, d1}; }

    Matrix2 adjoint() const;
    Matrix2 transpose() const { return {m00, m10, m01, m11}; }
    Complex trace() const { return m00 + m11; }
    Complex determinant() const { return m00 * m11 - m01 * m10; }

    // Largest absolute entry.
    double max_abs() const;
    bool is_finite() const;

    friend Matrix2 operator+(const Matrix2& x, const Matrix2& y) {
        return {x.m00 + y.m00, x.m01 + y.m01, x.m10 + y.m10, x.m11 + y.m11};
    }
    friend Matrix2 operator-(const Matrix2& x, const Matrix2& y) {
        return {x.m00 - y.m00, x.m01 - y.m01, x.m10 - y.m10, x.m11 - y.m11};
    }
    friend Matrix2 operator*(Complex s, const Matrix2& x) {
        return {s * x.m00, s * x.m01, s * x.m10, s * x.m11};
    }
    friend bool operator==(const Matrix2&, const Matrix2&) = default;
};

StateVector apply(const Matrix2& m, const StateVector& v);

// Returns m2 * m1, i.e. m1 acts first.
Matrix2 compose(const Matrix2& m2, const Matrix2& m1);

inline StateVector operator*(const Matrix2& m, const StateVector& v) { return apply(m, v); }
inline Matrix2 operator*(const Matrix2& m2, const Matrix2& m1) { return compose(m2, m1); }

// Conjugate-linear in u, linear in v.
Complex hermitian_inner(const StateVector& u, const StateVector& v);

// |<u|v>|^2 / (|u|^2 |v|^2). Zero vectors are rejected with DomainError.
double fidelity(const StateVector& u, const StateVector& v);

// Equality of rays: the only state equality used across modules.
bool same_state(const StateVector& u, const StateVector& v,
                const Tolerances& tol = kDefaultTolerances);

// min over global phase g of || u/|u| - g v/|v| ||. Unlike 1 - fidelity this
// keeps full double resolution for nearly equal states.
double phase_distance(const StateVector& u, const StateVector& v);

double max_abs_diff(const Matrix2& x, const Matrix2& y);
double max_abs_diff(const StateVector& u, const StateVector& v);

// Wraps an azimuth into [-pi, pi).
double wrap_angle(double phi);

// Pure qubit state on the Bloch sphere: theta in [0, pi], phi in [-pi, pi).
// At the poles phi is canonicalized to 0.
class BlochState {
public:
    // Strict constructor: out-of-range or non-finite angles throw DomainError.
    static BlochState make(double theta, double phi,
                           const Tolerances& tol = kDefaultTolerances);

    // As make(), but any finite phi is first wrapped into [-pi, pi).
    static BlochState wrapped(double theta, double phi,
                              const Tolerances& tol = kDefaultTolerances);

    double theta() const { return theta_; }
    double phi() const { return phi_; }

    friend bool operator==(const BlochState&, const BlochState&) = default;

private:
    BlochState(double theta, double phi) : theta_(theta), phi_(phi) {}

    double theta_;
    double phi_;
};

// (cos(theta/2), e^{i phi} sin(theta/2)).
StateVector state_from_bloch(const BlochState& s);

// Inverse of state_from_bloch; the global phase is discarded.
BlochState bloch_from_state(const StateVector& v,
                            const Tolerances& tol = kDefaultTolerances);

struct BlochVector {
    double x;
    double y;
    double z;
};

// Cartesian point on the unit sphere for the ray of v.
BlochVector bloch_vector(const StateVector& v);

}  // namespace ptqsd

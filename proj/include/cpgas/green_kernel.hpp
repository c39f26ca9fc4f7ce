#pragma once

#include "cpgas/core_types.hpp"

#include <Eigen/Core>

#include <complex>

namespace cpgas {

template <class Scalar>
using Dyadic = Eigen::Matrix<std::complex<Scalar>, 3, 3>;

template <class Scalar>
struct KernelPolynomials {
    std::complex<Scalar> p_sq; // trace(D.D) / (2 w^4 e^{2ix} / R^2)
    Scalar p_abs;              // sum |D|^2 / (2 w^4 |e^{ix}|^2 / R^2)
};

// Near-field coefficients of the dyadic, D = w^2 (a I + b rr) e^{ix} / R with x = n w R.
template <class Scalar>
std::complex<Scalar> dyadic_identity_coefficient(std::complex<Scalar> x) {
    const std::complex<Scalar> i(0, 1);
    const auto inv = Scalar(1) / x;
    return Scalar(1) + i * inv - inv * inv;
}

template <class Scalar>
std::complex<Scalar> dyadic_radial_coefficient(std::complex<Scalar> x) {
    const std::complex<Scalar> i(0, 1);
    const auto inv = Scalar(1) / x;
    return Scalar(3) * inv * inv - Scalar(3) * i * inv - Scalar(1);
}

template <class Scalar>
KernelPolynomials<Scalar> kernel_polynomials(std::complex<Scalar> x) {
    const std::complex<Scalar> i(0, 1);
    const auto inv = Scalar(1) / x;
    const auto inv2 = inv * inv;
    KernelPolynomials<Scalar> out;
    out.p_sq = Scalar(1) + Scalar(2) * i * inv - Scalar(5) * inv2 - Scalar(6) * i * inv2 * inv
               + Scalar(3) * inv2 * inv2;
    // |a|^2 for the two transverse directions plus |a + b|^2 for the longitudinal one
    const auto a = dyadic_identity_coefficient(x);
    const auto ab = a + dyadic_radial_coefficient(x);
    out.p_abs = (Scalar(2) * std::norm(a) + std::norm(ab)) / Scalar(2);
    return out;
}

// 1 + 1/x^2 + 3/x^4, the resonant-channel polynomial.
template <class Scalar>
std::complex<Scalar> resonant_polynomial(std::complex<Scalar> x) {
    const auto inv2 = Scalar(1) / (x * x);
    return Scalar(1) + inv2 + Scalar(3) * inv2 * inv2;
}

// Full retarded dyadic for index n, real frequency omega, separation r.
template <class Scalar>
Dyadic<Scalar> dyadic_green_tensor(std::complex<Scalar> n, Scalar omega,
                                   const Eigen::Matrix<Scalar, 3, 1>& r) {
    const Scalar R = r.norm();
    const Eigen::Matrix<std::complex<Scalar>, 3, 1> rhat = (r / R).template cast<std::complex<Scalar>>();
    const std::complex<Scalar> x = n * omega * R;
    const std::complex<Scalar> i(0, 1);
    const std::complex<Scalar> scale = omega * omega * std::exp(i * x) / R;
    Dyadic<Scalar> d = dyadic_identity_coefficient(x) * Dyadic<Scalar>::Identity();
    d += dyadic_radial_coefficient(x) * (rhat * rhat.transpose());
    return scale * d;
}

struct KernelValue {
    cplx squared_trace;       // sum_ij D_ij D_ji
    double abs_squared_trace; // sum_ij |D_ij|^2
};

KernelPolynomials<double> retarded_kernel_polynomials(cplx x);

// Contractions of the dyadic at real frequency omega and distance R.
KernelValue kernel_value(const DiluteGasMedium& medium, double omega, double R);

Dyadic<double> dyadic_green(const DiluteGasMedium& medium, const ComplexFrequency& f,
                            const Eigen::Vector3d& r);
// Advanced dyadic, the elementwise conjugate of the retarded one.
Dyadic<double> advanced_green(const DiluteGasMedium& medium, const ComplexFrequency& f,
                              const Eigen::Vector3d& r);

} // namespace cpgas

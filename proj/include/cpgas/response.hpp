#pragma once

#include "cpgas/core_types.hpp"

#include <complex>
#include <numbers>

namespace cpgas {

// Isotropic two-level polarizabilities at an arbitrary complex frequency w.
// Poles sit at +-omega_eg - i gamma/2, below the real axis.
template <class Scalar>
std::complex<Scalar> ground_polarizability(Scalar omega_eg, Scalar d2, Scalar gamma,
                                           std::complex<Scalar> w) {
    const std::complex<Scalar> half_width(Scalar(0), gamma / Scalar(2));
    return (d2 / Scalar(3))
           * (Scalar(1) / (omega_eg - w - half_width) + Scalar(1) / (omega_eg + w + half_width));
}

template <class Scalar>
std::complex<Scalar> excited_polarizability(Scalar omega_eg, Scalar d2, Scalar gamma,
                                            std::complex<Scalar> w) {
    const std::complex<Scalar> half_width(Scalar(0), gamma / Scalar(2));
    return (d2 / Scalar(3))
           * (Scalar(1) / (-omega_eg - w - half_width) + Scalar(1) / (-omega_eg + w + half_width));
}

template <class Scalar>
std::complex<Scalar> dilute_permittivity(Scalar n0, std::complex<Scalar> alpha) {
    return Scalar(1) + Scalar(4) * std::numbers::pi_v<Scalar> * n0 * alpha;
}

cplx alpha_ground(const TwoLevelAtom& atom, const ComplexFrequency& f);
cplx alpha_excited(const TwoLevelAtom& atom, const ComplexFrequency& f);

cplx permittivity(const DiluteGasMedium& medium, const ComplexFrequency& f);
// Permittivity continued to any point of the upper half plane.
cplx permittivity_at(const DiluteGasMedium& medium, cplx w);

struct OpticalResponse {
    cplx epsilon;
    cplx n;
};

// n = sqrt(epsilon) with Re n >= 0, and Im n >= 0 on the real axis.
OpticalResponse refractive_index(const DiluteGasMedium& medium, const ComplexFrequency& f);
cplx index_from_permittivity(cplx epsilon);

struct MeanFreePath {
    double exact;      // 1 / (2 Im n(w) w)
    double dilute;     // first order in the density
    double literature; // the commonly quoted closed form without the 2 omega_B factor
};

// Absorption length of a photon of frequency omega_probe.
MeanFreePath mean_free_path(const DiluteGasMedium& medium, double omega_probe);

} // namespace cpgas

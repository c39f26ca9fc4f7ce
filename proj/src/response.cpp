#include "cpgas/response.hpp"

#include "cpgas/errors.hpp"

#include <cmath>

namespace cpgas {

namespace {

void check_pole(const TwoLevelAtom& atom, const ComplexFrequency& f) {
    if (atom.gamma() == 0.0 && f.on_real_axis() && f.value() == atom.omega())
        throw PoleOnAxis("lossless polarizability evaluated at its resonance omega = "
                         + std::to_string(atom.omega()));
}

} // namespace

cplx alpha_ground(const TwoLevelAtom& atom, const ComplexFrequency& f) {
    check_pole(atom, f);
    return ground_polarizability(atom.omega(), atom.d2(), atom.gamma(), f.point());
}

cplx alpha_excited(const TwoLevelAtom& atom, const ComplexFrequency& f) {
    check_pole(atom, f);
    return excited_polarizability(atom.omega(), atom.d2(), atom.gamma(), f.point());
}

cplx permittivity(const DiluteGasMedium& medium, const ComplexFrequency& f) {
    if (medium.is_vacuum())
        return cplx(1.0, 0.0);
    cplx eps = dilute_permittivity(medium.n0(), alpha_ground(medium.species(), f));
    if (!f.on_real_axis())
        eps.imag(0.0); // alpha(iu) is real; drop rounding residue
    return eps;
}

cplx permittivity_at(const DiluteGasMedium& medium, cplx w) {
    if (medium.is_vacuum())
        return cplx(1.0, 0.0);
    const auto& s = medium.species();
    return dilute_permittivity(medium.n0(),
                               ground_polarizability(s.omega(), s.d2(), s.gamma(), w));
}

cplx index_from_permittivity(cplx epsilon) {
    // A negative zero imaginary part would select the wrong side of the cut.
    if (epsilon.imag() == 0.0)
        epsilon.imag(0.0);
    return std::sqrt(epsilon);
}

OpticalResponse refractive_index(const DiluteGasMedium& medium, const ComplexFrequency& f) {
    const cplx eps = permittivity(medium, f);
    const cplx n = index_from_permittivity(eps);
    if (std::abs(n * n - eps) > 1e-13 * std::abs(eps))
        throw Error("refractive_index: branch check failed");
    if (n.real() < 0.0 || (f.on_real_axis() && n.imag() < 0.0))
        throw Error("refractive_index: unphysical branch");
    return {eps, n};
}

MeanFreePath mean_free_path(const DiluteGasMedium& medium, double omega_probe) {
    const auto& b = medium.species();
    if (medium.n0() == 0.0 || b.gamma() == 0.0)
        throw LosslessMedium("mean free path is infinite without absorption (n0 = 0 or gamma = 0)");
    if (!(omega_probe > 0.0))
        throw InvalidArgument("mean_free_path: probe frequency must be > 0");

    const OpticalResponse r = refractive_index(medium, ComplexFrequency::real(omega_probe));
    const double im_n = r.n.imag();
    if (!(im_n > 0.0))
        throw LosslessMedium("mean free path: Im n vanishes at the probe frequency");

    const double wa2 = omega_probe * omega_probe;
    const double wb = b.omega();
    const double detuning = wb * wb - wa2;
    const double lorentz = detuning * detuning + b.gamma() * b.gamma() * wa2;
    const double pi = std::numbers::pi;

    MeanFreePath out{};
    out.exact = 1.0 / (2.0 * im_n * omega_probe);
    out.dilute = 3.0 * lorentz / (8.0 * pi * medium.n0() * b.d2() * b.gamma() * wb * wa2);
    out.literature = 3.0 * lorentz / (4.0 * pi * medium.n0() * b.d2() * b.gamma() * wa2);
    return out;
}

} // namespace cpgas

#include "cpgas/green_kernel.hpp"

#include "cpgas/errors.hpp"
#include "cpgas/response.hpp"

#include <cmath>

namespace cpgas {

KernelPolynomials<double> retarded_kernel_polynomials(cplx x) {
    if (x == cplx(0.0, 0.0))
        throw ZeroSeparation("kernel polynomials need a nonzero argument");
    return kernel_polynomials(x);
}

KernelValue kernel_value(const DiluteGasMedium& medium, double omega, double R) {
    if (!(R > 0.0))
        throw ZeroSeparation("kernel_value: separation must be > 0");
    const cplx n = refractive_index(medium, ComplexFrequency::real(omega)).n;
    const cplx x = n * omega * R;
    const auto p = retarded_kernel_polynomials(x);
    const double w4 = std::pow(omega, 4);
    const cplx i(0.0, 1.0);
    KernelValue out;
    out.squared_trace = 2.0 * p.p_sq * w4 * std::exp(2.0 * i * x) / (R * R);
    out.abs_squared_trace = 2.0 * p.p_abs * w4 * std::exp(-2.0 * x.imag()) / (R * R);
    return out;
}

Dyadic<double> dyadic_green(const DiluteGasMedium& medium, const ComplexFrequency& f,
                            const Eigen::Vector3d& r) {
    if (!f.on_real_axis())
        throw InvalidArgument("dyadic_green: frequency must lie on the real axis");
    if (!(r.norm() > 0.0))
        throw ZeroSeparation("dyadic_green: separation must be nonzero");
    const cplx n = refractive_index(medium, f).n;
    return dyadic_green_tensor(n, f.value(), r);
}

Dyadic<double> advanced_green(const DiluteGasMedium& medium, const ComplexFrequency& f,
                              const Eigen::Vector3d& r) {
    return dyadic_green(medium, f, r).conjugate();
}

} // namespace cpgas

#include "cpgas/pair_potential.hpp"

#include "cpgas/errors.hpp"
#include "cpgas/green_kernel.hpp"
#include "cpgas/response.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace cpgas {

namespace {

constexpr double pi = std::numbers::pi;

void check_separation(double R) {
    if (!(R > 0.0) || !std::isfinite(R))
        throw ZeroSeparation("separation must be finite and > 0, got " + std::to_string(R));
}

template <class V>
void require_converged(const IntegralResult<V>& r, const char* what) {
    if (!r.converged)
        throw QuadratureFailure(std::string(what) + ": quadrature did not reach tolerance (error "
                                + std::to_string(r.error_estimate) + ")");
}

// alpha_A(iu) alpha_B(iu), real on the imaginary axis.
double polarizability_product(const PairConfig& cfg, double u, AtomAState state) {
    const auto& a = cfg.atom_a();
    const auto& b = cfg.atom_b();
    const cplx iu(0.0, u);
    const cplx alpha_a = state == AtomAState::Excited
                             ? excited_polarizability(a.omega(), a.d2(), 0.0, iu)
                             : ground_polarizability(a.omega(), a.d2(), 0.0, iu);
    const cplx alpha_b = ground_polarizability(b.omega(), b.d2(), b.gamma(), iu);
    return (alpha_a * alpha_b).real();
}

double index_imaginary_axis(const DiluteGasMedium& medium, double u) {
    if (medium.is_vacuum())
        return 1.0;
    return index_from_permittivity(permittivity(medium, ComplexFrequency::imaginary(u))).real();
}

// u^4 P(n u R) / R^2 with the 1/x^k terms multiplied through.
struct ImaginaryAxisKernel {
    double value;
    double derivative; // d/dR at fixed u
};

ImaginaryAxisKernel imaginary_axis_kernel(double u, double n, double R) {
    const double q = 1.0 / (n * R);
    const double c[5] = {u * u * u * u, 2.0 * u * u * u * q, 5.0 * u * u * q * q,
                         6.0 * u * q * q * q, 3.0 * q * q * q * q};
    const double damping = std::exp(-2.0 * n * u * R);
    const double inv_r = 1.0 / R;
    // Each c_k carries R^-k through q, so the k-th term scales as R^-(k+2).
    double poly = 0.0;
    double dpoly = 0.0;
    for (int k = 0; k < 5; ++k) {
        poly += c[k];
        dpoly -= (k + 2) * c[k];
    }
    const double base = inv_r * inv_r * damping;
    ImaginaryAxisKernel out;
    out.value = poly * base;
    out.derivative = (dpoly * inv_r - 2.0 * n * u * poly) * base;
    return out;
}

cplx resonant_index(const PairConfig& cfg, cplx n) {
    switch (cfg.prescription()) {
    case IndexPrescription::Complex:
        return n;
    case IndexPrescription::RealPart:
        return cplx(n.real(), 0.0);
    case IndexPrescription::Vacuum:
        return cplx(1.0, 0.0);
    }
    return n;
}

double envelope_length(const PairConfig& cfg, const ForceEnvelope& env) {
    if (env.l_ph) {
        if (!(*env.l_ph > 0.0))
            throw InvalidArgument("envelope mean free path override must be > 0");
        return *env.l_ph;
    }
    return cfg.mean_free_path();
}

// Resonant channel written as Re[C h(R)] E(R) with h = R^-2 + R^-4/k^2 + 3 R^-6/k^4.
struct ResonantParts {
    cplx c;
    cplx k;
    double decay_rate; // E = exp(-decay_rate (R - shift))
    double shift;
};

ResonantParts resonant_parts(const PairConfig& cfg, const ForceEnvelope& env) {
    ResonantParts p;
    p.c = -(4.0 / 9.0) * cfg.resonant_strength() / cfg.resonant_denominator();
    const double wa = cfg.atom_a().omega();
    switch (env.kind) {
    case ForceEnvelope::Kind::SlabModel:
        p.k = wa;
        p.decay_rate = 0.0;
        p.shift = 0.0;
        break;
    case ForceEnvelope::Kind::Exponential:
        p.k = wa;
        p.decay_rate = 1.0 / envelope_length(cfg, env);
        p.shift = env.r0;
        break;
    case ForceEnvelope::Kind::Medium: {
        const cplx n = cfg.medium().is_vacuum()
                           ? cplx(1.0, 0.0)
                           : refractive_index(cfg.medium(), ComplexFrequency::real(wa)).n;
        p.k = resonant_index(cfg, n) * wa;
        p.decay_rate = 2.0 * n.imag() * wa;
        p.shift = 0.0;
        break;
    }
    }
    return p;
}

} // namespace

PairConfig::PairConfig(TwoLevelAtom atom_a, TwoLevelAtom atom_b, DiluteGasMedium medium,
                       QuadratureSpec quad, IndexPrescription prescription,
                       double dissimilarity_factor)
    : atom_a_(atom_a), atom_b_(atom_b), medium_(medium), quad_(quad), prescription_(prescription),
      dissimilarity_factor_(dissimilarity_factor) {
    validate_pair(atom_a_, atom_b_, dissimilarity_factor_);
}

PairConfig PairConfig::with_medium(const DiluteGasMedium& medium) const {
    return PairConfig(atom_a_, atom_b_, medium, quad_, prescription_, dissimilarity_factor_);
}

PairConfig PairConfig::with_quad(const QuadratureSpec& quad) const {
    return PairConfig(atom_a_, atom_b_, medium_, quad, prescription_, dissimilarity_factor_);
}

PairConfig PairConfig::with_prescription(IndexPrescription prescription) const {
    return PairConfig(atom_a_, atom_b_, medium_, quad_, prescription, dissimilarity_factor_);
}

double PairConfig::resonant_strength() const {
    const double wa = atom_a_.omega();
    return atom_a_.d2() * atom_b_.d2() * atom_b_.omega() * wa * wa * wa * wa;
}

cplx PairConfig::resonant_denominator() const {
    const double wa = atom_a_.omega();
    const double wb = atom_b_.omega();
    return cplx(wb * wb - wa * wa, -atom_b_.gamma() * wa);
}

double PairConfig::mean_free_path() const {
    return cpgas::mean_free_path(medium_, atom_a_.omega()).exact;
}

IntegralResult<double> nonresonant_potential(const PairConfig& cfg, double R, AtomAState state) {
    check_separation(R);
    const auto& medium = cfg.medium();
    auto integrand = [&](double u) {
        const double n = index_imaginary_axis(medium, u);
        return polarizability_product(cfg, u, state) * imaginary_axis_kernel(u, n, R).value;
    };
    auto res = integrate_semi_infinite(integrand, 2.0 * R, cfg.quad());
    require_converged(res, "nonresonant potential");
    res.value *= -1.0 / pi;
    res.error_estimate /= pi;
    return res;
}

IntegralResult<double> nonresonant_force(const PairConfig& cfg, double R, AtomAState state) {
    check_separation(R);
    const auto& medium = cfg.medium();
    auto integrand = [&](double u) {
        const double n = index_imaginary_axis(medium, u);
        return polarizability_product(cfg, u, state) * imaginary_axis_kernel(u, n, R).derivative;
    };
    auto res = integrate_semi_infinite(integrand, 2.0 * R, cfg.quad());
    require_converged(res, "nonresonant force");
    res.value *= 1.0 / pi;
    res.error_estimate /= pi;
    return res;
}

IntegralResult<double> nonresonant_on_ray(const PairConfig& cfg, double R, double angle,
                                          AtomAState state) {
    check_separation(R);
    if (!(angle > 0.0 && angle <= pi / 2.0 + 1e-15))
        throw InvalidArgument("nonresonant_on_ray: angle must lie in (0, pi/2]");
    const auto& a = cfg.atom_a();
    const auto& b = cfg.atom_b();
    const cplx direction = std::polar(1.0, angle);
    const cplx i(0.0, 1.0);
    auto integrand = [&](double t) {
        const cplx w = t * direction;
        const cplx alpha_a = state == AtomAState::Excited
                                 ? excited_polarizability(a.omega(), a.d2(), 0.0, w)
                                 : ground_polarizability(a.omega(), a.d2(), 0.0, w);
        const cplx alpha_b = ground_polarizability(b.omega(), b.d2(), b.gamma(), w);
        const cplx n = index_from_permittivity(permittivity_at(cfg.medium(), w));
        const cplx q = 1.0 / (n * R);
        // w^4 P_sq(n w R) with the 1/x^k terms multiplied through
        const cplx poly = w * w * w * w + 2.0 * i * w * w * w * q - 5.0 * w * w * q * q
                          - 6.0 * i * w * q * q * q + 3.0 * q * q * q * q;
        return alpha_a * alpha_b * poly / (R * R) * std::exp(2.0 * i * n * w * R) * direction;
    };
    const auto res = integrate_semi_infinite(integrand, 2.0 * R * std::sin(angle), cfg.quad());
    require_converged(res, "nonresonant potential on ray");
    IntegralResult<double> out;
    out.value = (i / pi * res.value).real();
    out.error_estimate = res.error_estimate / pi;
    out.evaluations = res.evaluations;
    out.converged = res.converged;
    return out;
}

double resonant_potential(const PairConfig& cfg, double R, const ForceEnvelope& envelope) {
    check_separation(R);
    const ResonantParts p = resonant_parts(cfg, envelope);
    const cplx x = p.k * R;
    const double damping = p.decay_rate == 0.0 ? 1.0 : std::exp(-p.decay_rate * (R - p.shift));
    return (p.c * resonant_polynomial(x) / (R * R)).real() * damping;
}

double resonant_force(const PairConfig& cfg, double R, const ForceEnvelope& envelope) {
    check_separation(R);
    const ResonantParts p = resonant_parts(cfg, envelope);
    const double r2 = 1.0 / (R * R);
    const cplx k2 = 1.0 / (p.k * p.k);
    const cplx h = r2 * (1.0 + k2 * r2 + 3.0 * k2 * k2 * r2 * r2);
    const cplx dh = -r2 / R * (2.0 + 4.0 * k2 * r2 + 18.0 * k2 * k2 * r2 * r2);
    const double damping = p.decay_rate == 0.0 ? 1.0 : std::exp(-p.decay_rate * (R - p.shift));
    const double dU = ((p.c * dh).real() - p.decay_rate * (p.c * h).real()) * damping;
    return -dU;
}

PotentialBreakdown pair_potential(const PairConfig& cfg, double R, AtomAState state) {
    const auto nonres = nonresonant_potential(cfg, R, state);
    const double res = state == AtomAState::Excited
                           ? resonant_potential(cfg, R, ForceEnvelope::medium())
                           : 0.0;
    return PotentialBreakdown(nonres.value, res, nonres.error_estimate);
}

PotentialBreakdown potential_excited(const PairConfig& cfg, double R) {
    return pair_potential(cfg, R, AtomAState::Excited);
}

double potential_ground(const PairConfig& cfg, double R) {
    return nonresonant_potential(cfg, R, AtomAState::Ground).value;
}

ForceBreakdown pair_force(const PairConfig& cfg, double R, AtomAState state) {
    const auto nonres = nonresonant_force(cfg, R, state);
    const double res = state == AtomAState::Excited
                           ? resonant_force(cfg, R, ForceEnvelope::medium())
                           : 0.0;
    return ForceBreakdown(nonres.value, res, nonres.error_estimate);
}

PotentialBreakdown potential_perturbative_vacuum(const PairConfig& cfg, double R) {
    check_separation(R);
    const double wa = cfg.atom_a().omega();
    const double wb = cfg.atom_b().omega();
    const double da = cfg.atom_a().d2();
    const double db = cfg.atom_b().d2();

    // Lossless two-level polarizabilities on the imaginary axis, excited A and ground B.
    auto integrand = [&](double u) {
        const double alpha_a = -2.0 * da * wa / (3.0 * (wa * wa + u * u));
        const double alpha_b = 2.0 * db * wb / (3.0 * (wb * wb + u * u));
        const double y = u * R;
        const double bracket = 1.0 + 2.0 / y + 5.0 / (y * y) + 6.0 / (y * y * y) + 3.0 / (y * y * y * y);
        return alpha_a * alpha_b * std::pow(u, 4) / (R * R) * bracket * std::exp(-2.0 * y);
    };
    const double scale = std::min({wa, wb, 0.5 / R});
    const auto res = integrate_half_line(integrand, scale, cfg.quad());
    require_converged(res, "perturbative vacuum potential");

    const double x = wa * R;
    const double resonant = -(4.0 / 9.0) * da * db * wb * std::pow(wa, 4) / ((wb * wb - wa * wa) * R * R)
                            * (1.0 + 1.0 / (x * x) + 3.0 / std::pow(x, 4));
    return PotentialBreakdown(-res.value / pi, resonant, res.error_estimate / pi);
}

double asymptotic_limit(const PairConfig& cfg, double R, AsymptoticRegime regime) {
    check_separation(R);
    const auto& a = cfg.atom_a();
    const auto& b = cfg.atom_b();
    const double wa = a.omega();
    const double wb = b.omega();
    const double dd = a.d2() * b.d2();
    switch (regime) {
    case AsymptoticRegime::VdwExcited:
        return -(4.0 / 3.0) * dd * wb / ((wb * wb - wa * wa) * std::pow(R, 6));
    case AsymptoticRegime::RetardedExcited:
        return -(4.0 / 9.0) * dd * std::pow(wa, 4) * wb / ((wb * wb - wa * wa) * R * R);
    case AsymptoticRegime::VdwGround: {
        auto integrand = [&](double u) {
            const double n = index_imaginary_axis(cfg.medium(), u);
            return polarizability_product(cfg, u, AtomAState::Ground) / std::pow(n, 4);
        };
        const auto res = integrate_half_line(integrand, std::min(wa, wb), cfg.quad());
        require_converged(res, "van der Waals ground-state limit");
        return -3.0 / pi * res.value / std::pow(R, 6);
    }
    case AsymptoticRegime::RetardedGround: {
        const double alpha_a = ground_polarizability(wa, a.d2(), 0.0, cplx(0.0, 0.0)).real();
        const double alpha_b = alpha_ground(b, ComplexFrequency::real(0.0)).real();
        const double n = refractive_index(cfg.medium(), ComplexFrequency::real(0.0)).n.real();
        return -23.0 * alpha_a * alpha_b / (4.0 * pi * std::pow(n, 5) * std::pow(R, 7));
    }
    }
    throw InvalidArgument("asymptotic_limit: unknown regime");
}

} // namespace cpgas

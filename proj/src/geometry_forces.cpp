#include "cpgas/geometry_forces.hpp"

#include "cpgas/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace cpgas {

namespace {

constexpr double pi = std::numbers::pi;

double override_or_medium(const PairConfig& cfg, const std::optional<double>& l_ph) {
    return l_ph ? *l_ph : cfg.mean_free_path();
}

// Re[K / (w_B^2 - w_A^2 - i gamma_B w_A)] = K (w_B^2 - w_A^2) / ((w_B^2 - w_A^2)^2 + (gamma_B w_A)^2)
double resonant_response(const PairConfig& cfg) {
    return (cfg.resonant_strength() / cfg.resonant_denominator()).real();
}

// Same ratio per unit w_A^4, i.e. without the w_A^4 factor.
double detuning_response(const PairConfig& cfg) {
    const double wa = cfg.atom_a().omega();
    return resonant_response(cfg) / std::pow(wa, 4);
}

void require_converged(const IntegralResult<double>& r, const char* what) {
    if (!r.converged)
        throw QuadratureFailure(std::string(what) + ": volume quadrature did not reach tolerance");
}

} // namespace

HalfSpaceGeometry::HalfSpaceGeometry(double z0, std::optional<double> l_ph) : z0_(z0), l_ph_(l_ph) {
    if (!(z0 > 0.0) || !std::isfinite(z0))
        throw InvalidArgument("HalfSpaceGeometry: z0 must be finite and > 0");
    if (l_ph && (!(*l_ph > 0.0) || !std::isfinite(*l_ph)))
        throw InvalidArgument("HalfSpaceGeometry: L_ph override must be finite and > 0");
}

HemisphereGeometry::HemisphereGeometry(double r0, std::optional<double> l_ph) : r0_(r0), l_ph_(l_ph) {
    if (!(r0 > 0.0) || !std::isfinite(r0))
        throw InvalidArgument("HemisphereGeometry: r0 must be finite and > 0");
    if (l_ph && (!(*l_ph > 0.0) || !std::isfinite(*l_ph)))
        throw InvalidArgument("HemisphereGeometry: L_ph override must be finite and > 0");
}

VolumeOracleSpec::VolumeOracleSpec(double radial_cutoff, QuadratureSpec quad)
    : radial_cutoff_(radial_cutoff), quad_(quad) {
    if (!(radial_cutoff >= 5.0) || !std::isfinite(radial_cutoff))
        throw InvalidArgument("VolumeOracleSpec: radial_cutoff must be >= 5 mean free paths");
}

double planar_force_closed(const PairConfig& cfg, const HalfSpaceGeometry& g, PlanarClosedForm form) {
    const double L = override_or_medium(cfg, g.l_ph());
    const double z0 = g.z0();
    const double far = z0 + L;
    const double w2 = std::pow(cfg.atom_a().omega(), 2);
    // differences of inverse powers written without cancellation for thin slabs
    const double inv2 = L * (z0 + far) / (z0 * z0 * far * far);
    const double inv4 = inv2 * (z0 * z0 + far * far) / (z0 * z0 * far * far);
    const double log_term = std::log1p(L / z0);
    double bracket = 0.0;
    if (form == PlanarClosedForm::Integrated)
        bracket = 2.0 * log_term + inv2 / w2 + 1.5 * inv4 / (w2 * w2);
    else
        bracket = log_term + 2.0 * inv2 / w2 + 1.5 * inv4 / (w2 * w2);
    return -(4.0 * pi / 9.0) * cfg.medium().n0() * resonant_response(cfg) * bracket;
}

double planar_force_near_law(const PairConfig& cfg, const HalfSpaceGeometry& g) {
    return -(2.0 * pi / 3.0) * cfg.medium().n0() * detuning_response(cfg) / std::pow(g.z0(), 4);
}

double planar_force_far_law(const PairConfig& cfg, const HalfSpaceGeometry& g) {
    // The slab integral is 2 ln(1 + L/z0) ~ 2 L / z0; inserting the dilute L_ph cancels n0 and d_B.
    const auto& a = cfg.atom_a();
    const auto& b = cfg.atom_b();
    const double detuning = b.omega() * b.omega() - a.omega() * a.omega();
    if (b.gamma() == 0.0)
        throw LosslessMedium("far-zone planar law needs gamma_B > 0");
    return -a.d2() * a.omega() * a.omega() * detuning / (3.0 * b.gamma() * g.z0());
}

IntegralResult<double> planar_force_oracle(const PairConfig& cfg, const HalfSpaceGeometry& g,
                                           const VolumeOracleSpec& spec) {
    const double L = override_or_medium(cfg, g.l_ph());
    const double n0 = cfg.medium().n0();
    const auto envelope = ForceEnvelope::slab_model();
    auto integrand = [&](double z, double rho) {
        const double R = std::hypot(z, rho);
        return n0 * resonant_force(cfg, R, envelope) * (z / R);
    };
    const SlabDomain slab{g.z0(), g.z0() + L, std::numeric_limits<double>::infinity()};
    auto res = integrate_volume_axisymmetric(integrand, slab, spec.quad());
    require_converged(res, "planar force oracle");
    return res;
}

double planar_transverse_residual(const PairConfig& cfg, const HalfSpaceGeometry& g,
                                  const VolumeOracleSpec& spec) {
    const double L = override_or_medium(cfg, g.l_ph());
    const double n0 = cfg.medium().n0();
    const auto envelope = ForceEnvelope::slab_model();
    const QuadratureSpec azimuth_spec(1e-6, 1e-300);
    // x-component: the ring measure 2 pi rho already holds the azimuth, so average cos(phi)
    auto integrand = [&](double z, double rho) {
        const double R = std::hypot(z, rho);
        const double radial = n0 * resonant_force(cfg, R, envelope) * (rho / R);
        auto cos_phi = [](double phi) { return std::cos(phi); };
        const double mean_cos = integrate_panels(cos_phi, {0.0, pi / 2.0, pi, 1.5 * pi, 2.0 * pi},
                                                 azimuth_spec).value / (2.0 * pi);
        return radial * mean_cos;
    };
    const SlabDomain slab{g.z0(), g.z0() + L, std::numeric_limits<double>::infinity()};
    const auto loose = spec.quad().with_abs_tol(1e-300).with_rel_tol(1e-6);
    const auto transverse = integrate_volume_axisymmetric(integrand, slab, loose);
    const auto normal = planar_force_oracle(cfg, g, spec);
    return std::abs(transverse.value) / std::abs(normal.value);
}

RegimeForce hemisphere_force_closed(const PairConfig& cfg, const HemisphereGeometry& g,
                                    HemisphereRegime regime) {
    const double L = override_or_medium(cfg, g.l_ph());
    const double r0 = g.r0();
    const double n0 = cfg.medium().n0();
    const double w_min = std::min(cfg.atom_a().omega(), cfg.atom_b().omega());
    const double w_max = std::max(cfg.atom_a().omega(), cfg.atom_b().omega());
    RegimeForce out{};
    if (regime == HemisphereRegime::Far) {
        out.force = -(4.0 * pi / 9.0) * n0 * resonant_response(cfg) * (1.0 + 2.0 * L / r0);
        out.in_regime = r0 >= 10.0 * L && r0 >= 10.0 * wavelength(w_min);
        if (!out.in_regime)
            out.warning = "far-zone hemisphere law used outside r0 >= 10 L_ph and r0 >= 10 lambda";
    } else {
        out.force = -2.0 * pi * n0 * detuning_response(cfg) / std::pow(r0, 4);
        out.in_regime = 10.0 * r0 <= L && 10.0 * r0 <= wavelength(w_max);
        if (!out.in_regime)
            out.warning = "near-zone hemisphere law used outside 10 r0 <= L_ph and 10 r0 <= lambda";
    }
    return out;
}

double hemisphere_force_near_literature(const PairConfig& cfg, const HemisphereGeometry& g) {
    const auto& a = cfg.atom_a();
    const auto& b = cfg.atom_b();
    const double wa = a.omega();
    const double detuning = b.omega() * b.omega() - wa * wa;
    const double lorentz = detuning * detuning + std::pow(b.gamma() * wa, 2);
    return -2.0 * pi * a.d2() * b.d2() * b.omega() * std::pow(wa, 4) * detuning * detuning
           * cfg.medium().n0() / (lorentz * std::pow(g.r0(), 4));
}

IntegralResult<double> hemisphere_force_oracle(const PairConfig& cfg, const HemisphereGeometry& g,
                                               const VolumeOracleSpec& spec) {
    const double L = override_or_medium(cfg, g.l_ph());
    const double n0 = cfg.medium().n0();
    const auto envelope = ForceEnvelope::exponential(g.r0(), L);
    // Projection on the symmetry axis is cos(theta); the atom sits on the axis at the centre.
    auto integrand = [&](double r, double theta) {
        return n0 * resonant_force(cfg, r, envelope) * std::cos(theta);
    };
    const HemisphereShellDomain shell{g.r0(), g.r0() + spec.radial_cutoff() * L};
    auto res = integrate_volume_axisymmetric(integrand, shell, spec.quad());
    require_converged(res, "hemisphere force oracle");
    return res;
}

double inverse_square_cap_integral(double z0, double cutoff) {
    return 2.0 * pi * ((cutoff - z0) - z0 * std::log(cutoff / z0));
}

std::vector<DivergenceRow> divergence_demo(const PairConfig& cfg, const HalfSpaceGeometry& g,
                                           const std::vector<double>& cutoffs,
                                           const QuadratureSpec& quad) {
    const double n0 = cfg.medium().n0();
    const double z0 = g.z0();
    auto vacuum = [&](double z, double rho) {
        return n0 * asymptotic_limit(cfg, std::hypot(z, rho), AsymptoticRegime::RetardedExcited);
    };
    auto absorbing = [&](double z, double rho) {
        return n0 * resonant_potential(cfg, std::hypot(z, rho), ForceEnvelope::medium());
    };
    std::vector<DivergenceRow> rows;
    rows.reserve(cutoffs.size());
    for (double c : cutoffs) {
        if (!(c > z0))
            throw InvalidArgument("divergence_demo: every cutoff must exceed z0");
        const BallCapDomain cap{z0, c};
        const auto v = integrate_volume_axisymmetric(vacuum, cap, quad);
        const auto a = integrate_volume_axisymmetric(absorbing, cap, quad);
        require_converged(v, "divergence demo (vacuum)");
        require_converged(a, "divergence demo (absorbing)");
        rows.push_back({c, v.value, a.value, v.error_estimate, a.error_estimate});
    }
    return rows;
}

} // namespace cpgas

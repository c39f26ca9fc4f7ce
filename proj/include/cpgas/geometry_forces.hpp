#pragma once

#include "cpgas/pair_potential.hpp"
#include "cpgas/quadrature.hpp"

#include <optional>
#include <string>
#include <vector>

namespace cpgas {

// Excited atom at distance z0 from a planar interface of a semi-infinite gas.
class HalfSpaceGeometry {
public:
    explicit HalfSpaceGeometry(double z0, std::optional<double> l_ph = std::nullopt);
    double z0() const { return z0_; }
    // Overrides the medium's mean free path, e.g. to scan density at fixed L_ph.
    const std::optional<double>& l_ph() const { return l_ph_; }

private:
    double z0_;
    std::optional<double> l_ph_;
};

// Excited atom at the centre of a gas hemisphere with inner radius r0.
class HemisphereGeometry {
public:
    explicit HemisphereGeometry(double r0, std::optional<double> l_ph = std::nullopt);
    double r0() const { return r0_; }
    const std::optional<double>& l_ph() const { return l_ph_; }

private:
    double r0_;
    std::optional<double> l_ph_;
};

class VolumeOracleSpec {
public:
    explicit VolumeOracleSpec(double radial_cutoff = 20.0, QuadratureSpec quad = {});
    // Outer radius of the hemisphere integral in units of L_ph beyond r0.
    double radial_cutoff() const { return radial_cutoff_; }
    const QuadratureSpec& quad() const { return quad_; }

private:
    double radial_cutoff_;
    QuadratureSpec quad_;
};

// Every force below is the component along the direction pointing from the body to the
// atom: positive means repulsion.

enum class PlanarClosedForm {
    Integrated, // exact slab integral of the pair force
    Literature, // bracket as commonly quoted: ln(1 + L/z0) + (2/w^2)(...) + (3/2w^4)(...)
};

double planar_force_closed(const PairConfig& cfg, const HalfSpaceGeometry& g,
                           PlanarClosedForm form = PlanarClosedForm::Integrated);
// z0 << L_ph and z0 << lambda
double planar_force_near_law(const PairConfig& cfg, const HalfSpaceGeometry& g);
// z0 >> L_ph, with L_ph in its dilute closed form; density independent
double planar_force_far_law(const PairConfig& cfg, const HalfSpaceGeometry& g);

// Slab of thickness L_ph, infinite transverse extent, integrated by nested quadrature.
IntegralResult<double> planar_force_oracle(const PairConfig& cfg, const HalfSpaceGeometry& g,
                                           const VolumeOracleSpec& spec);
// |transverse force| / |normal force| for the same slab, with the azimuth integrated numerically.
double planar_transverse_residual(const PairConfig& cfg, const HalfSpaceGeometry& g,
                                  const VolumeOracleSpec& spec);

enum class HemisphereRegime {
    Far,  // r0 >> L_ph, r0 >> lambda
    Near, // r0 << L_ph, r0 << lambda
};

struct RegimeForce {
    double force;
    bool in_regime; // scales separated by at least a factor 10
    std::string warning;
};

RegimeForce hemisphere_force_closed(const PairConfig& cfg, const HemisphereGeometry& g,
                                    HemisphereRegime regime);
// Near-zone form as commonly quoted, with (w_B^2 - w_A^2)^2 and an extra w_A^4.
double hemisphere_force_near_literature(const PairConfig& cfg, const HemisphereGeometry& g);

IntegralResult<double> hemisphere_force_oracle(const PairConfig& cfg, const HemisphereGeometry& g,
                                               const VolumeOracleSpec& spec);

struct DivergenceRow {
    double cutoff;
    double vacuum;    // retarded vacuum potential summed over the truncated half-space
    double absorbing; // resonant potential in the absorbing medium, same region
    double vacuum_error;
    double absorbing_error;
};

// Half-space {z >= z0} intersected with balls of the given radii around the atom.
std::vector<DivergenceRow> divergence_demo(const PairConfig& cfg, const HalfSpaceGeometry& g,
                                           const std::vector<double>& cutoffs,
                                           const QuadratureSpec& quad = {});

// 2 pi [(C - z0) - z0 ln(C / z0)], the volume integral of 1/R^2 over the same region.
double inverse_square_cap_integral(double z0, double cutoff);

} // namespace cpgas

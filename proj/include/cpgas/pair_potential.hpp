#pragma once

#include "cpgas/core_types.hpp"
#include "cpgas/quadrature.hpp"

#include <optional>

namespace cpgas {

// Which index enters the resonant polynomial 1 + 1/(n w R)^2 + 3/(n w R)^4.
// The exponential suppression always uses Im n.
enum class IndexPrescription {
    Complex,  // full complex n(w_A), real part taken at the end
    RealPart, // Re n(w_A)
    Vacuum,   // n = 1, the dilute-gas simplification
};

enum class AtomAState { Excited, Ground };

class PairConfig {
public:
    PairConfig(TwoLevelAtom atom_a, TwoLevelAtom atom_b, DiluteGasMedium medium,
               QuadratureSpec quad = {}, IndexPrescription prescription = IndexPrescription::Complex,
               double dissimilarity_factor = default_dissimilarity_factor);

    // Atom A's own width is neglected in every pair formula.
    const TwoLevelAtom& atom_a() const { return atom_a_; }
    const TwoLevelAtom& atom_b() const { return atom_b_; }
    const DiluteGasMedium& medium() const { return medium_; }
    const QuadratureSpec& quad() const { return quad_; }
    IndexPrescription prescription() const { return prescription_; }
    double dissimilarity_factor() const { return dissimilarity_factor_; }

    PairConfig with_medium(const DiluteGasMedium& medium) const;
    PairConfig with_quad(const QuadratureSpec& quad) const;
    PairConfig with_prescription(IndexPrescription prescription) const;

    // |d_A|^2 |d_B|^2 w_B w_A^4, the scale of the resonant channel.
    double resonant_strength() const;
    // w_B^2 - w_A^2 - i gamma_B w_A
    cplx resonant_denominator() const;
    // 1 / (2 Im n(w_A) w_A) of the configured medium
    double mean_free_path() const;

private:
    TwoLevelAtom atom_a_;
    TwoLevelAtom atom_b_;
    DiluteGasMedium medium_;
    QuadratureSpec quad_;
    IndexPrescription prescription_;
    double dissimilarity_factor_;
};

// Excited A (or ground A when state is Ground) and ground-state B inside the medium.
PotentialBreakdown pair_potential(const PairConfig& cfg, double R, AtomAState state);
PotentialBreakdown potential_excited(const PairConfig& cfg, double R);
double potential_ground(const PairConfig& cfg, double R);

// Imaginary-axis channel alone, with its quadrature diagnostics.
IntegralResult<double> nonresonant_potential(const PairConfig& cfg, double R, AtomAState state);

// Same channel evaluated on the ray w = t e^{i angle}, 0 < angle <= pi/2, before the
// rotation to the imaginary axis. Agreement with the angle = pi/2 value checks the rotation.
IntegralResult<double> nonresonant_on_ray(const PairConfig& cfg, double R, double angle,
                                          AtomAState state = AtomAState::Excited);

// Perturbative vacuum result for lossless atoms, evaluated by a separate code path.
PotentialBreakdown potential_perturbative_vacuum(const PairConfig& cfg, double R);

enum class AsymptoticRegime {
    VdwExcited,      // resonant channel, R << lambda
    RetardedExcited, // resonant channel, R >> lambda
    VdwGround,       // ground-ground, R << lambda
    RetardedGround,  // ground-ground, R >> lambda
};

double asymptotic_limit(const PairConfig& cfg, double R, AsymptoticRegime regime);

// Envelope applied to the resonant channel before differentiating.
struct ForceEnvelope {
    enum class Kind {
        SlabModel,   // no exponent, n = 1
        Exponential, // exp(-(R - r0) / L_ph), n = 1
        Medium,      // the full resonant term with exp(-2 Im n w_A R)
    };
    Kind kind = Kind::Medium;
    double r0 = 0.0;
    std::optional<double> l_ph; // overrides the medium's mean free path

    static ForceEnvelope slab_model() { return {Kind::SlabModel, 0.0, std::nullopt}; }
    static ForceEnvelope exponential(double r0, std::optional<double> l_ph = std::nullopt) {
        return {Kind::Exponential, r0, l_ph};
    }
    static ForceEnvelope medium() { return {Kind::Medium, 0.0, std::nullopt}; }
};

double resonant_potential(const PairConfig& cfg, double R, const ForceEnvelope& envelope);

// Forces are -dU/dR: positive pushes the atoms apart (repulsion).
double resonant_force(const PairConfig& cfg, double R, const ForceEnvelope& envelope);
IntegralResult<double> nonresonant_force(const PairConfig& cfg, double R, AtomAState state);
ForceBreakdown pair_force(const PairConfig& cfg, double R, AtomAState state);

} // namespace cpgas

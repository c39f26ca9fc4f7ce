#pragma once

#include <complex>
#include <cstdint>

namespace cpgas {

using cplx = std::complex<double>;

// Natural units throughout: hbar = c = 1, so lengths are inverse frequencies.
class TwoLevelAtom {
public:
    TwoLevelAtom(double omega, double d2, double gamma);

    double omega() const { return omega_; }
    double d2() const { return d2_; }
    double gamma() const { return gamma_; }

    // Same atom with its level width removed.
    TwoLevelAtom without_width() const { return TwoLevelAtom(omega_, d2_, 0.0); }

private:
    double omega_;
    double d2_;
    double gamma_;
};

class DiluteGasMedium {
public:
    static constexpr double default_diluteness_threshold = 1e-2;

    DiluteGasMedium(TwoLevelAtom species, double n0,
                    double diluteness_threshold = default_diluteness_threshold);

    static DiluteGasMedium vacuum(TwoLevelAtom species);

    const TwoLevelAtom& species() const { return species_; }
    double n0() const { return n0_; }
    bool is_vacuum() const { return n0_ == 0.0; }

    // Static susceptibility scale 4 pi n0 d2 / (3 omega^2).
    double diluteness() const;

private:
    TwoLevelAtom species_;
    double n0_;
};

class ComplexFrequency {
public:
    enum class Axis { RealAxis, ImaginaryAxis };

    static ComplexFrequency real(double omega) { return {Axis::RealAxis, omega}; }
    static ComplexFrequency imaginary(double u) { return {Axis::ImaginaryAxis, u}; }

    Axis axis() const { return axis_; }
    double value() const { return value_; }
    bool on_real_axis() const { return axis_ == Axis::RealAxis; }
    // The point in the complex frequency plane: omega or i*u.
    cplx point() const;

private:
    ComplexFrequency(Axis axis, double value);

    Axis axis_;
    double value_;
};

struct PotentialBreakdown {
    double nonresonant = 0.0;
    double resonant = 0.0;
    double total = 0.0;
    double error_estimate = 0.0;

    PotentialBreakdown() = default;
    PotentialBreakdown(double nonresonant_part, double resonant_part, double error = 0.0)
        : nonresonant(nonresonant_part), resonant(resonant_part),
          total(nonresonant_part + resonant_part), error_estimate(error) {}
};

// Forces are split into the same two channels as the potential.
using ForceBreakdown = PotentialBreakdown;

class QuadratureSpec {
public:
    QuadratureSpec() = default;
    QuadratureSpec(double rel_tol, double abs_tol, std::int64_t max_subdivisions = 1000000,
                   double tail_decades = 40.0);

    double rel_tol() const { return rel_tol_; }
    double abs_tol() const { return abs_tol_; }
    std::int64_t max_subdivisions() const { return max_subdivisions_; }
    double tail_decades() const { return tail_decades_; }

    QuadratureSpec with_rel_tol(double rel) const;
    QuadratureSpec with_abs_tol(double abs) const;

private:
    double rel_tol_ = 1e-9;
    double abs_tol_ = 1e-30;
    std::int64_t max_subdivisions_ = 1000000;
    double tail_decades_ = 40.0;
};

struct AtomPair {
    TwoLevelAtom atom_a;
    TwoLevelAtom atom_b;
};

constexpr double default_dissimilarity_factor = 10.0;

// Rejects pairs whose splitting is not well above the larger level width.
AtomPair validate_pair(const TwoLevelAtom& atom_a, const TwoLevelAtom& atom_b,
                       double dissimilarity_factor = default_dissimilarity_factor);

// 2 pi / omega
double wavelength(double omega);

} // namespace cpgas

#include "cpgas/core_types.hpp"

#include "cpgas/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace cpgas {

namespace {

bool finite(double v) { return std::isfinite(v); }

std::string num(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

} // namespace

TwoLevelAtom::TwoLevelAtom(double omega, double d2, double gamma)
    : omega_(omega), d2_(d2), gamma_(gamma) {
    if (!finite(omega) || omega <= 0.0)
        throw InvalidArgument("TwoLevelAtom: omega must be finite and > 0, got " + num(omega));
    if (!finite(d2) || d2 <= 0.0)
        throw InvalidArgument("TwoLevelAtom: d2 must be finite and > 0, got " + num(d2));
    if (!finite(gamma) || gamma < 0.0)
        throw InvalidArgument("TwoLevelAtom: gamma must be finite and >= 0, got " + num(gamma));
    if (gamma >= omega)
        throw InvalidArgument("TwoLevelAtom: gamma must be below omega (narrow resonance), got gamma="
                              + num(gamma) + " omega=" + num(omega));
}

DiluteGasMedium::DiluteGasMedium(TwoLevelAtom species, double n0, double diluteness_threshold)
    : species_(species), n0_(n0) {
    if (!finite(n0) || n0 < 0.0)
        throw InvalidArgument("DiluteGasMedium: n0 must be finite and >= 0, got " + num(n0));
    if (!finite(diluteness_threshold) || diluteness_threshold <= 0.0)
        throw InvalidArgument("DiluteGasMedium: diluteness threshold must be > 0");
    if (n0 > 0.0 && species.gamma() == 0.0)
        throw LosslessMedium("DiluteGasMedium: a gas with n0 > 0 needs gamma > 0 for absorption");
    if (diluteness() >= diluteness_threshold)
        throw InvalidArgument("DiluteGasMedium: diluteness " + num(diluteness())
                              + " is not below the threshold " + num(diluteness_threshold));
}

DiluteGasMedium DiluteGasMedium::vacuum(TwoLevelAtom species) {
    return DiluteGasMedium(species, 0.0);
}

double DiluteGasMedium::diluteness() const {
    const double w = species_.omega();
    return 4.0 * std::numbers::pi * n0_ * species_.d2() / (3.0 * w * w);
}

ComplexFrequency::ComplexFrequency(Axis axis, double value) : axis_(axis), value_(value) {
    if (!finite(value) || value < 0.0)
        throw InvalidArgument("ComplexFrequency: value must be finite and >= 0, got " + num(value));
}

cplx ComplexFrequency::point() const {
    return axis_ == Axis::RealAxis ? cplx(value_, 0.0) : cplx(0.0, value_);
}

QuadratureSpec::QuadratureSpec(double rel_tol, double abs_tol, std::int64_t max_subdivisions,
                               double tail_decades)
    : rel_tol_(rel_tol), abs_tol_(abs_tol), max_subdivisions_(max_subdivisions),
      tail_decades_(tail_decades) {
    if (!finite(rel_tol) || rel_tol <= 0.0)
        throw InvalidArgument("QuadratureSpec: rel_tol must be > 0");
    if (!finite(abs_tol) || abs_tol <= 0.0)
        throw InvalidArgument("QuadratureSpec: abs_tol must be > 0");
    if (max_subdivisions < 1)
        throw InvalidArgument("QuadratureSpec: max_subdivisions must be >= 1");
    if (!finite(tail_decades) || tail_decades <= 0.0)
        throw InvalidArgument("QuadratureSpec: tail_decades must be > 0");
}

QuadratureSpec QuadratureSpec::with_rel_tol(double rel) const {
    return QuadratureSpec(rel, abs_tol_, max_subdivisions_, tail_decades_);
}

QuadratureSpec QuadratureSpec::with_abs_tol(double abs) const {
    return QuadratureSpec(rel_tol_, abs, max_subdivisions_, tail_decades_);
}

AtomPair validate_pair(const TwoLevelAtom& atom_a, const TwoLevelAtom& atom_b,
                       double dissimilarity_factor) {
    if (!finite(dissimilarity_factor) || dissimilarity_factor < 0.0)
        throw InvalidArgument("validate_pair: dissimilarity factor must be >= 0");
    const double splitting = std::abs(atom_a.omega() - atom_b.omega());
    const double width = std::max(atom_a.gamma(), atom_b.gamma());
    if (!(splitting > width * dissimilarity_factor))
        throw DegenerateAtoms("atoms are degenerate: splitting " + num(splitting)
                              + " does not exceed " + num(dissimilarity_factor)
                              + " x level width " + num(width)
                              + "; identical or near-identical atoms need a symmetric wave function");
    return AtomPair{atom_a, atom_b};
}

double wavelength(double omega) { return 2.0 * std::numbers::pi / omega; }

} // namespace cpgas

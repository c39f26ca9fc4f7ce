#pragma once

#include "cpgas/core_types.hpp"
#include "cpgas/errors.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <limits>
#include <queue>
#include <type_traits>
#include <utility>
#include <variant>
#include <vector>

namespace cpgas {

template <class V>
struct IntegralResult {
    V value{};
    double error_estimate = 0.0;
    std::int64_t evaluations = 0;
    bool converged = false;
};

namespace quad_detail {

// 7-point Gauss / 15-point Kronrod pair; nodes on [0, 1], the last one is the centre.
inline constexpr std::array<double, 8> kronrod_nodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.0};
inline constexpr std::array<double, 8> kronrod_weights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr std::array<double, 4> gauss_weights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

inline double magnitude(double v) { return std::abs(v); }
inline double magnitude(const std::complex<double>& v) { return std::abs(v); }

// Complex values share one panel decision driven by the worse component.
inline double difference(double a, double b) { return std::abs(a - b); }
inline double difference(const std::complex<double>& a, const std::complex<double>& b) {
    return std::max(std::abs(a.real() - b.real()), std::abs(a.imag() - b.imag()));
}

inline double component_abs_sum(double v) { return std::abs(v); }
inline double component_abs_sum(const std::complex<double>& v) {
    return std::abs(v.real()) + std::abs(v.imag());
}

template <class V>
struct Panel {
    double a;
    double b;
    V value;
    double error;
    double roundoff;
};

template <class V, class F>
Panel<V> gauss_kronrod(F& f, double a, double b) {
    const double centre = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const V fc = f(centre);
    V kronrod = fc * kronrod_weights[7];
    V gauss = fc * gauss_weights[3];
    double abs_sum = component_abs_sum(fc) * kronrod_weights[7];
    for (int j = 0; j < 7; ++j) {
        const double dx = half * kronrod_nodes[j];
        const V f1 = f(centre - dx);
        const V f2 = f(centre + dx);
        kronrod += kronrod_weights[j] * (f1 + f2);
        abs_sum += kronrod_weights[j] * (component_abs_sum(f1) + component_abs_sum(f2));
        if (j % 2 == 1)
            gauss += gauss_weights[j / 2] * (f1 + f2);
    }
    Panel<V> p{a, b, kronrod * half, difference(kronrod, gauss) * std::abs(half), 0.0};
    p.roundoff = 50.0 * std::numeric_limits<double>::epsilon() * abs_sum * std::abs(half);
    return p;
}

inline double panel_error(double error, double roundoff) { return std::max(error, roundoff); }

} // namespace quad_detail

// Global adaptive Gauss-Kronrod over consecutive breakpoints.
// extra_error is a known, non-reducible contribution (e.g. a truncated tail).
template <class F>
auto integrate_panels(F&& f, const std::vector<double>& points, const QuadratureSpec& spec,
                      double extra_error = 0.0) {
    using V = std::decay_t<std::invoke_result_t<F&, double>>;
    using quad_detail::Panel;
    if (points.size() < 2)
        throw InvalidArgument("integrate: need at least two breakpoints");

    std::int64_t evaluations = 0;
    auto counted = [&](double x) {
        ++evaluations;
        return f(x);
    };

    std::vector<Panel<V>> panels;
    panels.reserve(points.size() * 4);
    for (std::size_t i = 0; i + 1 < points.size(); ++i) {
        if (!(points[i] < points[i + 1]))
            throw InvalidArgument("integrate: breakpoints must be strictly increasing");
        panels.push_back(quad_detail::gauss_kronrod<V>(counted, points[i], points[i + 1]));
    }

    auto total_value = [&]() {
        std::vector<std::size_t> order(panels.size());
        for (std::size_t i = 0; i < order.size(); ++i)
            order[i] = i;
        std::sort(order.begin(), order.end(),
                  [&](std::size_t x, std::size_t y) { return panels[x].a < panels[y].a; });
        V sum{};
        for (std::size_t i : order)
            sum += panels[i].value;
        return sum;
    };

    using Entry = std::pair<double, std::size_t>;
    std::priority_queue<Entry> queue;
    V value{};
    double error = 0.0;
    for (std::size_t i = 0; i < panels.size(); ++i) {
        value += panels[i].value;
        error += quad_detail::panel_error(panels[i].error, panels[i].roundoff);
        queue.emplace(panels[i].error, i);
    }

    std::int64_t subdivisions = 0;
    while (!queue.empty()) {
        double target = std::max(spec.rel_tol() * quad_detail::magnitude(value), spec.abs_tol());
        if (error <= target) {
            // running sums drift; confirm with a fresh summation before stopping
            value = total_value();
            error = 0.0;
            for (const auto& p : panels)
                error += quad_detail::panel_error(p.error, p.roundoff);
            target = std::max(spec.rel_tol() * quad_detail::magnitude(value), spec.abs_tol());
            if (error <= target)
                break;
        }
        const std::size_t idx = queue.top().second;
        queue.pop();
        const Panel<V> worst = panels[idx];
        const double mid = 0.5 * (worst.a + worst.b);
        const double scale = std::max(std::abs(worst.a), std::abs(worst.b));
        if (worst.error <= worst.roundoff || !(mid > worst.a && mid < worst.b)
            || worst.b - worst.a <= 1e-14 * scale)
            continue; // cannot be improved by bisection
        if (++subdivisions > spec.max_subdivisions())
            throw QuadratureFailure("adaptive quadrature: max_subdivisions ("
                                    + std::to_string(spec.max_subdivisions())
                                    + ") exhausted before reaching tolerance");
        Panel<V> left = quad_detail::gauss_kronrod<V>(counted, worst.a, mid);
        Panel<V> right = quad_detail::gauss_kronrod<V>(counted, mid, worst.b);
        value += left.value + right.value - worst.value;
        error += quad_detail::panel_error(left.error, left.roundoff)
                 + quad_detail::panel_error(right.error, right.roundoff)
                 - quad_detail::panel_error(worst.error, worst.roundoff);
        panels[idx] = left;
        panels.push_back(right);
        queue.emplace(left.error, idx);
        queue.emplace(right.error, panels.size() - 1);
    }

    IntegralResult<V> out;
    out.value = total_value();
    double err_sum = 0.0;
    for (const auto& p : panels)
        err_sum += quad_detail::panel_error(p.error, p.roundoff);
    out.error_estimate = err_sum + extra_error;
    out.evaluations = evaluations;
    const double target = std::max(spec.rel_tol() * quad_detail::magnitude(out.value), spec.abs_tol());
    out.converged = out.error_estimate <= target;
    return out;
}

template <class F>
auto integrate(F&& f, double a, double b, const QuadratureSpec& spec) {
    return integrate_panels(std::forward<F>(f), std::vector<double>{a, b}, spec);
}

// Breakpoints a, 2a, 4a, ... below b, then b. Spreads panels over many decades.
inline std::vector<double> geometric_breakpoints(double a, double b, double ratio = 2.0) {
    std::vector<double> pts{a};
    if (a > 0.0)
        for (double x = a * ratio; x < b * (1.0 - 1e-12); x *= ratio)
            pts.push_back(x);
    pts.push_back(b);
    return pts;
}

// Integral over [0, inf) of an integrand with known exponential decay rate.
// Truncated at tail_decades / decay_scale; the tail |f(U)| / decay_scale is added to the error.
template <class F>
auto integrate_semi_infinite(F&& f, double decay_scale, const QuadratureSpec& spec) {
    if (!(decay_scale > 0.0) || !std::isfinite(decay_scale))
        throw InvalidArgument("integrate_semi_infinite: decay_scale must be finite and > 0");
    const double upper = spec.tail_decades() / decay_scale;
    std::vector<double> pts{0.0};
    for (int k = 48; k >= 1; --k)
        pts.push_back(std::ldexp(upper, -k));
    pts.push_back(upper);
    const double tail = quad_detail::magnitude(f(upper)) / decay_scale;
    auto res = integrate_panels(f, pts, spec, tail);
    res.evaluations += 1;
    return res;
}

// Integral over [0, inf) through u = s t / (1 - t); suits algebraic decay.
template <class F>
auto integrate_half_line(F&& f, double scale, const QuadratureSpec& spec) {
    using V = std::decay_t<std::invoke_result_t<F&, double>>;
    if (!(scale > 0.0) || !std::isfinite(scale))
        throw InvalidArgument("integrate_half_line: scale must be finite and > 0");
    auto mapped = [&](double t) -> V {
        const double one_minus = 1.0 - t;
        const double u = scale * t / one_minus;
        if (!std::isfinite(u))
            return V{};
        return f(u) * (scale / (one_minus * one_minus));
    };
    std::vector<double> pts{0.0};
    for (int k = 40; k >= 2; k -= 2)
        pts.push_back(std::ldexp(1.0, -k));
    pts.push_back(0.5);
    for (int k = 2; k <= 40; k += 2)
        pts.push_back(1.0 - std::ldexp(1.0, -k));
    pts.push_back(1.0);
    return integrate_panels(mapped, pts, spec);
}

// Axisymmetric volume domains. Slab and cap integrands take (z, rho) with measure
// 2 pi rho drho dz; the hemisphere shell takes (r, theta) with measure 2 pi r^2 sin(theta).
struct SlabDomain {
    double z_min;
    double z_max;
    double rho_max; // may be +infinity
};

// {z >= z_min} intersected with the ball |r| <= radius.
struct BallCapDomain {
    double z_min;
    double radius;
};

// r in [r_min, r_max], theta in [0, pi/2] measured from the symmetry axis.
struct HemisphereShellDomain {
    double r_min;
    double r_max; // may be +infinity
};

using VolumeDomain = std::variant<SlabDomain, BallCapDomain, HemisphereShellDomain>;

template <class F>
IntegralResult<double> integrate_volume_axisymmetric(F&& f, const VolumeDomain& domain,
                                                     const QuadratureSpec& spec) {
    const double pi = 3.141592653589793238462643383279502884;
    const QuadratureSpec inner_spec = spec.with_rel_tol(spec.rel_tol() * 0.1);
    std::int64_t inner_evaluations = 0;
    double inner_rel_error = 0.0;

    auto absorb = [&](const IntegralResult<double>& r) {
        inner_evaluations += r.evaluations;
        if (r.value != 0.0)
            inner_rel_error = std::max(inner_rel_error, r.error_estimate / std::abs(r.value));
        return r.value;
    };

    IntegralResult<double> outer;
    if (const auto* slab = std::get_if<SlabDomain>(&domain)) {
        if (!(slab->z_max > slab->z_min) || !(slab->rho_max > 0.0))
            throw InvalidArgument("slab domain: need z_max > z_min and rho_max > 0");
        auto column = [&](double z) {
            auto ring = [&](double rho) { return 2.0 * pi * rho * f(z, rho); };
            const double scale = std::max(std::abs(z), 1e-300);
            if (std::isinf(slab->rho_max))
                return absorb(integrate_half_line(ring, scale, inner_spec));
            std::vector<double> pts{0.0};
            if (scale < slab->rho_max) {
                const auto geo = geometric_breakpoints(scale, slab->rho_max);
                pts.insert(pts.end(), geo.begin(), geo.end());
            } else {
                pts.push_back(slab->rho_max);
            }
            return absorb(integrate_panels(ring, pts, inner_spec));
        };
        const auto pts = slab->z_min > 0.0 ? geometric_breakpoints(slab->z_min, slab->z_max)
                                           : std::vector<double>{slab->z_min, slab->z_max};
        outer = integrate_panels(column, pts, spec);
    } else if (const auto* cap = std::get_if<BallCapDomain>(&domain)) {
        if (!(cap->radius > cap->z_min) || cap->z_min < 0.0)
            throw InvalidArgument("ball cap domain: need 0 <= z_min < radius");
        auto column = [&](double z) {
            const double rho_max = std::sqrt(std::max(0.0, (cap->radius - z) * (cap->radius + z)));
            if (rho_max == 0.0)
                return 0.0;
            auto ring = [&](double rho) { return 2.0 * pi * rho * f(z, rho); };
            auto pts = std::vector<double>{0.0};
            if (z > 0.0 && z < rho_max) {
                const auto geo = geometric_breakpoints(z, rho_max);
                pts.insert(pts.end(), geo.begin(), geo.end());
            } else {
                pts.push_back(rho_max);
            }
            return absorb(integrate_panels(ring, pts, inner_spec));
        };
        const auto pts = cap->z_min > 0.0 ? geometric_breakpoints(cap->z_min, cap->radius)
                                          : std::vector<double>{0.0, cap->radius};
        outer = integrate_panels(column, pts, spec);
    } else {
        const auto& shell = std::get<HemisphereShellDomain>(domain);
        if (!(shell.r_min > 0.0) || !(shell.r_max > shell.r_min))
            throw InvalidArgument("hemisphere shell: need 0 < r_min < r_max");
        auto sphere = [&](double r) {
            auto band = [&](double theta) { return 2.0 * pi * r * r * std::sin(theta) * f(r, theta); };
            return absorb(integrate(band, 0.0, pi / 2.0, inner_spec));
        };
        if (std::isinf(shell.r_max)) {
            auto shifted = [&](double s) { return sphere(shell.r_min + s); };
            outer = integrate_half_line(shifted, shell.r_min, spec);
        } else {
            outer = integrate_panels(sphere, geometric_breakpoints(shell.r_min, shell.r_max), spec);
        }
    }

    outer.evaluations = inner_evaluations;
    outer.error_estimate += inner_rel_error * std::abs(outer.value);
    const double target = std::max(spec.rel_tol() * std::abs(outer.value), spec.abs_tol());
    outer.converged = outer.error_estimate <= target;
    return outer;
}

struct DerivativeEstimate {
    double value;
    double error_estimate;
};

// Central differences at steps h, h/2, h/4 combined by Richardson extrapolation.
DerivativeEstimate central_difference(const std::function<double(double)>& f, double x, double step);

} // namespace cpgas

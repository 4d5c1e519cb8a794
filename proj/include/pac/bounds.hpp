#pragma once

// Thickness machinery for the general (rotated) bound.
//
// A boundary point p = (x, 0) sits on the bottom edge of the normalized unit
// square [0,1]^2. For a direction theta the chord from p into the square has
// length square_chord(x, theta) and thickness square_thickness = chord *
// sin(theta). Integrating the thickness over all directions and taking the
// infimum over boundary points gives the constant T, and every union of unit
// squares satisfies perimeter/area <= 2*pi / T.

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

#include "pac/geometry.hpp"
#include "pac/quadrature.hpp"

namespace pac {

/// cot^-1 with range (0, pi), so arccot(0) = pi/2.
inline double arccot(double t) { return std::atan2(1.0, t); }

namespace detail {

inline void require_boundary_param(double x, const char* fn) {
    if (!(x >= 0.0 && x <= 1.0)) throw std::domain_error(std::string(fn) + ": x must lie in [0, 1]");
}

inline double reduce_angle(double theta) {
    double t = std::fmod(theta, 2.0 * kPi);
    if (t < 0.0) t += 2.0 * kPi;
    return t;
}

}  // namespace detail

/// The two kink angles: where the chord leaves through the right edge
/// corner (1,1), and through the left corner (0,1).
inline std::array<double, 2> thickness_breakpoints(double x) {
    detail::require_boundary_param(x, "thickness_breakpoints");
    return {arccot(1.0 - x), kPi - arccot(x)};
}

inline double square_chord(double x, double theta) {
    detail::require_boundary_param(x, "square_chord");
    const double t = detail::reduce_angle(theta);
    if (t >= kPi) return 0.0;
    const auto [lo, hi] = thickness_breakpoints(x);
    if (t >= lo && t <= hi) return 1.0 / std::sin(t);
    if (t < lo) return (1.0 - x) / std::cos(t);
    return -x / std::cos(t);
}

inline double square_thickness(double x, double theta) {
    detail::require_boundary_param(x, "square_thickness");
    const double t = detail::reduce_angle(theta);
    if (t >= kPi) return 0.0;
    const auto [lo, hi] = thickness_breakpoints(x);
    if (t >= lo && t <= hi) return 1.0;
    if (t < lo) return (1.0 - x) * std::tan(t);
    return -x * std::tan(t);
}

/// The closed form as usually printed:
///   ln(1 + (1-x)^2)/2 - ln(1-x) + pi - arccot(1-x) - arccot(x).
/// It matches the integral of square_thickness only at x = 0 and x = 1/2; see
/// thickness_integral_exact. Diverges as x -> 1, so the domain is [0, 1).
inline double thickness_integral_closed_form(double x) {
    if (!(x >= 0.0 && x < 1.0)) throw std::domain_error("thickness_integral_closed_form: x must lie in [0, 1)");
    const double u = 1.0 - x;
    return 0.5 * std::log1p(u * u) - std::log(u) + kPi - arccot(u) - arccot(x);
}

/// Term-by-term integral of square_thickness over [0, 2pi):
///   u (ln(1+u^2)/2 - ln u) + x (ln(1+x^2)/2 - ln x) + pi - arccot(u) - arccot(x),
/// with u = 1 - x and 0 ln 0 = 0. Symmetric under x -> 1 - x.
inline double thickness_integral_exact(double x) {
    detail::require_boundary_param(x, "thickness_integral_exact");
    const double u = 1.0 - x;
    auto side = [](double w) { return w > 0.0 ? w * (0.5 * std::log1p(w * w) - std::log(w)) : 0.0; };
    return side(u) + side(x) + kPi - arccot(u) - arccot(x);
}

/// Adaptive quadrature of square_thickness over [0, pi], split at both
/// breakpoints (the integrand vanishes on [pi, 2pi)).
inline QuadratureResult thickness_integral_numeric(double x, double tol) {
    if (!(x >= 0.0 && x < 1.0)) throw std::domain_error("thickness_integral_numeric: x must lie in [0, 1)");
    if (!(tol > 0.0)) throw std::domain_error("thickness_integral_numeric: tol must be positive");
    const auto [lo, hi] = thickness_breakpoints(x);
    const double u = 1.0 - x;
    auto rising = [u](double t) { return u * std::tan(t); };
    auto falling = [x](double t) { return -x * std::tan(t); };
    QuadratureResult out;
    const QuadratureResult a = adaptive_simpson(rising, 0.0, lo, tol / 3.0);
    const QuadratureResult c = adaptive_simpson(falling, hi, kPi, tol / 3.0);
    out.value = a.value + (hi - lo) + c.value;
    out.error_estimate = a.error_estimate + c.error_estimate;
    out.evaluations = a.evaluations + c.evaluations;
    return out;
}

struct ThicknessProfile {
    double x = 0.0;
    std::array<double, 2> breakpoints{};
    double closed_form = 0.0;
    double numeric = 0.0;
    double exact = 0.0;

    double closed_form_gap() const { return std::abs(closed_form - numeric); }
};

inline ThicknessProfile thickness_profile(double x, double tol = 1e-9) {
    ThicknessProfile p;
    p.x = x;
    p.breakpoints = thickness_breakpoints(x);
    p.closed_form = thickness_integral_closed_form(x);
    p.numeric = thickness_integral_numeric(x, tol).value;
    p.exact = thickness_integral_exact(x);
    return p;
}

inline constexpr double kGyenesCeiling = 5.6;

/// 2 pi / T at the minimizing boundary point x = 0, i.e.
/// 2 pi / (ln 2 / 2 + pi / 4).
inline double gyenes_bound() {
    const double b = 2.0 * kPi / thickness_integral_closed_form(0.0);
    if (!(b <= kGyenesCeiling)) throw std::logic_error("gyenes_bound exceeds 5.6");
    return b;
}

}  // namespace pac

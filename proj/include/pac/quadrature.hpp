#pragma once

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <string>
#include <type_traits>

namespace pac {

class QuadratureError : public std::runtime_error {
public:
    QuadratureError(const std::string& what, double achieved_error)
        : std::runtime_error(what), achieved_error_(achieved_error) {}

    double achieved_error() const { return achieved_error_; }

private:
    double achieved_error_;
};

struct QuadratureResult {
    double value = 0.0;
    double error_estimate = 0.0;
    long evaluations = 0;
};

namespace detail {

template <class F>
struct SimpsonState {
    F& f;
    long evaluations = 0;
    double worst_unconverged = 0.0;
    int max_depth;

    double eval(double x) {
        ++evaluations;
        return f(x);
    }

    // Recursive adaptive Simpson with Richardson extrapolation; the local
    // acceptance test is |S2 - S1| <= 15 tol.
    double refine(double a, double b, double fa, double fm, double fb, double whole, double tol, int depth,
                  double& err) {
        const double m = 0.5 * (a + b);
        const double lm = 0.5 * (a + m);
        const double rm = 0.5 * (m + b);
        const double flm = eval(lm);
        const double frm = eval(rm);
        const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
        const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
        const double delta = left + right - whole;
        if (std::abs(delta) <= 15.0 * tol) {
            err += std::abs(delta) / 15.0;
            return left + right + delta / 15.0;
        }
        if (depth >= max_depth) {
            err += std::abs(delta) / 15.0;
            worst_unconverged = std::max(worst_unconverged, std::abs(delta) / 15.0);
            return left + right + delta / 15.0;
        }
        return refine(a, m, fa, flm, fm, left, 0.5 * tol, depth + 1, err) +
               refine(m, b, fm, frm, fb, right, 0.5 * tol, depth + 1, err);
    }
};

}  // namespace detail

/// Adaptive Simpson quadrature of f over [a, b] to absolute tolerance tol.
/// Throws QuadratureError (carrying the achieved error) when the recursion
/// depth limit is hit before the estimate drops below tol.
template <class F>
QuadratureResult adaptive_simpson(F&& f, double a, double b, double tol, int max_depth = 50) {
    if (!(tol > 0.0)) throw std::invalid_argument("adaptive_simpson: tol must be positive");
    detail::SimpsonState<std::remove_reference_t<F>> st{f, 0, 0.0, max_depth};
    QuadratureResult out;
    if (a == b) return out;
    const double fa = st.eval(a);
    const double fb = st.eval(b);
    const double fm = st.eval(0.5 * (a + b));
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    double err = 0.0;
    out.value = st.refine(a, b, fa, fm, fb, whole, tol, 0, err);
    out.error_estimate = err;
    out.evaluations = st.evaluations;
    if (st.worst_unconverged > 0.0 && err > tol) {
        std::ostringstream os;
        os << "adaptive_simpson: no convergence on [" << a << ", " << b << "], achieved error " << err
           << " > tol " << tol;
        throw QuadratureError(os.str(), err);
    }
    return out;
}

}  // namespace pac

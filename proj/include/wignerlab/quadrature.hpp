#pragma once

#include <cmath>
#include <cstddef>

namespace wigner {

struct QuadratureResult {
    double value = 0.0;
    double error_estimate = 0.0;
    std::size_t evaluations = 0;
    bool converged = true;  // false if some panel hit the depth limit
};

namespace detail {

template <class F>
struct SimpsonState {
    const F& f;
    int max_depth;
    QuadratureResult result;
};

template <class F>
double simpson_recurse(SimpsonState<F>& st, double a, double b, double fa, double fm, double fb,
                       double whole, double tol, int depth)
{
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = st.f(lm);
    const double frm = st.f(rm);
    st.result.evaluations += 2;
    const double h = b - a;
    const double left = h / 12.0 * (fa + 4.0 * flm + fm);
    const double right = h / 12.0 * (fm + 4.0 * frm + fb);
    const double diff = left + right - whole;
    if (depth >= st.max_depth || std::abs(diff) <= 15.0 * tol || !(h > 0.0)) {
        if (depth >= st.max_depth && std::abs(diff) > 15.0 * tol) st.result.converged = false;
        st.result.error_estimate += std::abs(diff) / 15.0;
        return left + right + diff / 15.0;  // Richardson correction
    }
    return simpson_recurse(st, a, m, fa, flm, fm, left, 0.5 * tol, depth + 1)
        + simpson_recurse(st, m, b, fm, frm, fb, right, 0.5 * tol, depth + 1);
}

} // namespace detail

/// Adaptive Simpson rule for a real integrand on [a, b] with absolute
/// tolerance `tol` for the whole interval. The interval is first split into
/// `initial_panels` equal panels so that narrow features are not missed by
/// the first five samples.
template <class F>
QuadratureResult adaptive_simpson(const F& f, double a, double b, double tol, int initial_panels = 8,
                                  int max_depth = 40)
{
    detail::SimpsonState<F> st{f, max_depth, {}};
    if (a == b) return st.result;
    const double width = (b - a) / initial_panels;
    const double panel_tol = tol / initial_panels;
    double x0 = a;
    double f0 = f(x0);
    st.result.evaluations = 1;
    for (int p = 0; p < initial_panels; ++p) {
        const double x1 = p + 1 == initial_panels ? b : a + width * (p + 1);
        const double xm = 0.5 * (x0 + x1);
        const double fm = f(xm);
        const double f1 = f(x1);
        st.result.evaluations += 2;
        const double whole = (x1 - x0) / 6.0 * (f0 + 4.0 * fm + f1);
        st.result.value += detail::simpson_recurse(st, x0, x1, f0, fm, f1, whole, panel_tol, 0);
        x0 = x1;
        f0 = f1;
    }
    return st.result;
}

} // namespace wigner

// Independent reference implementations used only by tests. These must stay
// decoupled from the library code paths they check: Ei via adaptive Simpson
// quadrature of the defining integral, Lambert W via plain bisection.
#pragma once

#include <cmath>
#include <cstdint>
#include <utility>

namespace oracles {

template <typename F>
double adaptive_simpson_rec(F& f, double a, double b, double fa, double fm, double fb,
                            double whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * tol)
        return left + right + delta / 15.0;
    return adaptive_simpson_rec(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           adaptive_simpson_rec(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

template <typename F>
double adaptive_simpson(F f, double a, double b, double rel_tol) {
    const double m = 0.5 * (a + b);
    const double fa = f(a), fm = f(m), fb = f(b);
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    const double tol = std::max(std::abs(whole) * rel_tol, 1e-320);
    return adaptive_simpson_rec(f, a, b, fa, fm, fb, whole, tol, 40);
}

// Ei(x) for x < 0 by quadrature of the defining integral: substituting
// t = x - s turns int_{-inf}^{x} e^t/t dt into int_0^inf e^{x-s}/(x-s) ds.
// The tail beyond s = 55 is below e^-55 relative and is dropped.
inline double ei_reference(double x) {
    auto integrand = [x](double s) { return std::exp(x - s) / (x - s); };
    return adaptive_simpson(integrand, 0.0, 55.0, 1e-14);
}

// Lambert W0 by bisection of w*e^w - x on [0, hi]; independent of any
// iteration scheme.
inline double lambert_w0_reference(double x) {
    auto f = [x](double w) { return w * std::exp(w) - x; };
    double lo = 0.0;
    double hi = (x > 1.0) ? std::log(x) + 2.0 : 3.0;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (f(mid) < 0.0)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

// Deterministic helper for generating random test inputs (not an oracle).
struct TestRng {
    std::uint64_t state;

    explicit TestRng(std::uint64_t seed) : state(seed) {}

    std::uint64_t next_bits() {
        state += 0x9E3779B97F4A7C15ull;
        std::uint64_t z = state;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    // uniform on (0,1]
    double unit() { return 1.0 - static_cast<double>(next_bits() >> 11) * 0x1.0p-53; }

    double in_range(double lo, double hi) { return lo + (hi - lo) * unit(); }
};

} // namespace oracles

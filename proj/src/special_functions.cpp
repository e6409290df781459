#include "secrecy/special_functions.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace secrecy {

namespace {

constexpr double kEulerGamma = 0.57721566490153286060651209008240243;

// E1(x) for 0 < x <= 1 via the convergent series
// E1(x) = -gamma - ln x + sum_{k>=1} (-1)^{k+1} x^k / (k * k!).
double e1_series(double x) {
    double sum = 0.0;
    double power_term = 1.0; // x^k / k!
    for (int k = 1; k <= 64; ++k) {
        power_term *= x / k;
        const double contrib = power_term / k;
        sum += (k & 1) ? contrib : -contrib;
        if (contrib < 1e-18 * std::abs(sum)) break;
    }
    return -kEulerGamma - std::log(x) + sum;
}

// Modified Lentz evaluation of the continued fraction
// e^x E1(x) = 1/(x+1- 1/(x+3- 4/(x+5- 9/(...)))), reliable for x >= 1.
double e1_continued_fraction_scaled(double x) {
    constexpr double kTiny = 1e-300;
    double b = x + 1.0;
    double c = 1.0 / kTiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i <= 300; ++i) {
        const double a = -static_cast<double>(i) * static_cast<double>(i);
        b += 2.0;
        d = a * d + b;
        if (std::abs(d) < kTiny) d = kTiny;
        c = b + a / c;
        if (std::abs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        const double delta = d * c;
        h *= delta;
        if (std::abs(delta - 1.0) < 1e-16) break;
    }
    return h;
}

// E1(x) for x > 0; series below the crossover at 1, continued fraction above.
double e1(double x) {
    return (x <= 1.0) ? e1_series(x) : std::exp(-x) * e1_continued_fraction_scaled(x);
}

} // namespace

double exp_integral_ei(double x) {
    if (!std::isfinite(x) || x >= 0.0)
        throw std::domain_error("exp_integral_ei: argument must be finite and strictly negative, got " +
                                std::to_string(x));
    return -e1(-x);
}

double lambert_w0(double x) {
    if (!std::isfinite(x) || x < 0.0)
        throw std::domain_error("lambert_w0: argument must be finite and nonnegative, got " +
                                std::to_string(x));
    if (x == 0.0) return 0.0;

    // Initial guess: ln(1+x) below e (exact at 0), asymptotic ln x - ln ln x above.
    double w = (x < 2.718281828459045) ? std::log1p(x) : std::log(x) - std::log(std::log(x));

    // Halley iteration on f(w) = w e^w - x.
    for (int i = 0; i < 64; ++i) {
        const double ew = std::exp(w);
        const double f = w * ew - x;
        const double denom = ew * (w + 1.0) - (w + 2.0) * f / (2.0 * w + 2.0);
        const double step = f / denom;
        w -= step;
        if (std::abs(step) < 1e-15 * (1.0 + std::abs(w))) break;
    }
    return w;
}

namespace detail {

double exp_e1_scaled(double x) {
    if (!(x >= 1.0))
        throw std::domain_error("exp_e1_scaled: argument must be >= 1");
    return e1_continued_fraction_scaled(x);
}

} // namespace detail

} // namespace secrecy

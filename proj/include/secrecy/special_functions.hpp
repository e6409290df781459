#pragma once

namespace secrecy {

// Exponential integral Ei(x) = \int_{-inf}^{x} e^t/t dt, restricted to x < 0.
// Strictly negative and strictly decreasing on the negative axis; relative
// accuracy ~1e-14. Throws std::domain_error for x >= 0, NaN or +/-inf.
double exp_integral_ei(double x);

// Principal branch of the Lambert W function on [0, inf): the unique w >= 0
// with w*exp(w) = x. Residual |w*e^w - x| <= 1e-12*max(1,x). Throws
// std::domain_error for x < 0, NaN or +/-inf.
double lambert_w0(double x);

namespace detail {

// e^x * E1(x) for x >= 1 (continued-fraction value without the e^{-x}
// factor). Lets callers fold e^{-x} into their own exponent and avoid
// underflow/overflow when combining with large opposing exponentials.
double exp_e1_scaled(double x);

} // namespace detail

} // namespace secrecy

// special_functions.hpp — log-gamma and log-factorial for series weights
#pragma once

namespace rabicf::special {

// log Gamma(x) for x > 0, Lanczos approximation, relative error below 1e-13
// across the positive axis. Self-contained so results are identical on every
// platform and thread-safe (std::lgamma touches a global sign flag).
double log_gamma(double x);

// log x! = log Gamma(x + 1) for real x > -1.
double log_factorial(double x);

}  // namespace rabicf::special

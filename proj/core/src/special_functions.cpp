// special_functions.cpp — Lanczos log-gamma
#include "rabicf/special_functions.hpp"

#include <cmath>
#include <stdexcept>

namespace rabicf::special {

namespace {

// Lanczos shift g = 607/128 with 15 coefficients (Godfrey's set).
constexpr double kLanczosG = 607.0 / 128.0;
constexpr double kLanczos[15] = {
    0.99999999999999709182,     57.156235665862923517,
    -59.597960355475491248,     14.136097974741747174,
    -0.49191381609762019978,    0.33994649984811888699e-4,
    0.46523628927048575665e-4,  -0.98374475304879564677e-4,
    0.15808870322491248884e-3,  -0.21026444172410488319e-3,
    0.21743961811521264320e-3,  -0.16431810653676389022e-3,
    0.84418223983852743293e-4,  -0.26190838401581408670e-4,
    0.36899182659531622704e-5,
};
constexpr double kHalfLogTwoPi = 0.91893853320467274178;

}  // namespace

double log_gamma(double x) {
  if (!(x > 0.0)) {
    throw std::invalid_argument("log_gamma: argument must be positive");
  }
  double acc = kLanczos[0];
  for (int i = 1; i < 15; ++i) {
    acc += kLanczos[i] / (x - 1.0 + static_cast<double>(i));
  }
  const double t = x + kLanczosG - 0.5;
  return kHalfLogTwoPi + (x - 0.5) * std::log(t) - t + std::log(acc);
}

double log_factorial(double x) {
  if (!(x > -1.0)) {
    throw std::invalid_argument("log_factorial: argument must exceed -1");
  }
  return log_gamma(x + 1.0);
}

}  // namespace rabicf::special

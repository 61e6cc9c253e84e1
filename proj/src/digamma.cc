#include "logtoku/digamma.h"

#include <cmath>
#include <string>

#include "logtoku/error.h"

namespace logtoku {

double digamma_unchecked(double x) noexcept {
  double shift = 0.0;
  while (x < 10.0) {
    shift -= 1.0 / x;
    x += 1.0;
  }
  // Asymptotic expansion with Bernoulli coefficients B_2n / (2n); the first
  // omitted term is below 5e-17 at x = 10.
  const double inv = 1.0 / x;
  const double inv2 = inv * inv;
  const double series =
      inv2 * (1.0 / 12 -
              inv2 * (1.0 / 120 -
                      inv2 * (1.0 / 252 -
                              inv2 * (1.0 / 240 -
                                      inv2 * (1.0 / 132 -
                                              inv2 * (691.0 / 32760 - inv2 * (1.0 / 12)))))));
  return shift + std::log(x) - 0.5 * inv - series;
}

double digamma(double x) {
  if (!std::isfinite(x) || x <= 0.0) {
    throw Error(ErrorCode::kDomain, "digamma requires a finite positive argument, got " +
                                        std::to_string(x));
  }
  return digamma_unchecked(x);
}

}  // namespace logtoku

#pragma once

namespace mct {

/// Standard normal CDF.
double normal_cdf(double x);

/// Regularized incomplete beta function I_x(a, b) for x in [0,1], a,b > 0.
double regularized_incomplete_beta(double x, double a, double b);

/// Student-t CDF with df > 0 (fractional df allowed). Handles +-infinity.
/// Throws std::invalid_argument on df <= 0 or NaN df.
double students_t_cdf(double x, double df);

}  // namespace mct

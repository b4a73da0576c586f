#pragma once

namespace snpvscs {

/// Upper alpha-quantile of the chi-square distribution with nu degrees of
/// freedom: the x with P(X > x) = alpha. nu = 0 returns 0. Throws DomainError
/// when alpha is outside (0, 1) or nu is negative.
double chisq_quantile(double alpha, int nu);

/// P(X > x) for X ~ chi-square(nu); 1 when nu = 0 and x <= 0.
double chisq_upper_tail(double x, int nu);

/// Standard normal quantile.
double normal_quantile(double probability);

}  // namespace snpvscs

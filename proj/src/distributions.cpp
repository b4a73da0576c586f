#include "snpvscs/distributions.hpp"

#include <boost/math/distributions/chi_squared.hpp>
#include <boost/math/distributions/normal.hpp>

#include <string>

#include "snpvscs/errors.hpp"

namespace snpvscs {

double chisq_quantile(double alpha, int nu) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw DomainError("alpha must lie in (0, 1), got " + std::to_string(alpha));
  }
  if (nu < 0) throw DomainError("negative degrees of freedom");
  if (nu == 0) return 0.0;
  const boost::math::chi_squared dist(static_cast<double>(nu));
  return boost::math::quantile(boost::math::complement(dist, alpha));
}

double chisq_upper_tail(double x, int nu) {
  if (nu < 0) throw DomainError("negative degrees of freedom");
  if (nu == 0) return x > 0.0 ? 0.0 : 1.0;
  if (x <= 0.0) return 1.0;
  const boost::math::chi_squared dist(static_cast<double>(nu));
  return boost::math::cdf(boost::math::complement(dist, x));
}

double normal_quantile(double probability) {
  if (!(probability > 0.0 && probability < 1.0)) {
    throw DomainError("normal quantile needs a probability in (0, 1)");
  }
  return boost::math::quantile(boost::math::normal(), probability);
}

}  // namespace snpvscs

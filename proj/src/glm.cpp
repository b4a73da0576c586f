#include "snpvscs/glm.hpp"

#include <cmath>

#include "snpvscs/errors.hpp"

namespace snpvscs {

namespace {

// log(1 + exp(eta)) without overflow.
double log1p_exp(double eta) {
  return eta > 0.0 ? eta + std::log1p(std::exp(-eta)) : std::log1p(std::exp(eta));
}

double sigmoid(double eta) {
  if (eta >= 0.0) return 1.0 / (1.0 + std::exp(-eta));
  const double e = std::exp(eta);
  return e / (1.0 + e);
}

// Log-likelihood at eta, also writing the fitted means; one exp and one log per row.
double loglik_and_mean(const Eigen::VectorXd& y, const Eigen::VectorXd& eta, Eigen::VectorXd& mu) {
  double ll = 0.0;
  for (Eigen::Index i = 0; i < y.size(); ++i) {
    const double e = std::exp(-std::abs(eta[i]));
    const double inv = 1.0 / (1.0 + e);
    mu[i] = eta[i] >= 0.0 ? inv : e * inv;
    ll += y[i] * eta[i] - (std::max(eta[i], 0.0) + std::log(1.0 + e));
  }
  return ll;
}

}  // namespace

void FitConfig::validate() const {
  if (max_iterations <= 0 || !(convergence_tolerance > 0.0) || !(ridge_epsilon > 0.0) ||
      !(separation_threshold > 0.0)) {
    throw DomainError("fit configuration values must be strictly positive");
  }
}

Eigen::VectorXd GlmFit::coefficients() const {
  Eigen::VectorXd theta(num_parameters());
  Eigen::Index c = 0;
  theta[c++] = beta0;
  for (double b : beta) theta[c++] = b;
  for (double g : gamma) theta[c++] = g;
  return theta;
}

Eigen::MatrixXd design_matrix(const GenotypeDataset& data, const ModelMask& mask) {
  if (mask.width() != data.p()) {
    throw DimensionMismatch("mask width " + std::to_string(mask.width()) + " differs from p = " +
                            std::to_string(data.p()));
  }
  const auto snps = mask.indices();
  Eigen::MatrixXd X(data.n(), 1 + static_cast<Eigen::Index>(snps.size()) + data.q());
  X.col(0).setOnes();
  Eigen::Index c = 1;
  for (int j : snps) X.col(c++) = data.x.col(j);
  for (int k = 0; k < data.q(); ++k) X.col(c++) = data.z.col(k);
  return X;
}

double bernoulli_loglik(const Eigen::VectorXd& y, const Eigen::VectorXd& eta) {
  double ll = 0.0;
  for (Eigen::Index i = 0; i < y.size(); ++i) ll += y[i] * eta[i] - log1p_exp(eta[i]);
  return ll;
}

GlmFit fit_logistic(const GenotypeDataset& data, const ModelMask& mask, const FitConfig& config,
                    const GlmFit* warm_start) {
  config.validate();
  const Eigen::MatrixXd X = design_matrix(data, mask);
  const Eigen::VectorXd& y = data.y;
  const Eigen::Index n = X.rows();
  const Eigen::Index k = X.cols();
  const auto snps = mask.indices();

  Eigen::VectorXd theta = Eigen::VectorXd::Zero(k);
  if (warm_start != nullptr) {
    theta[0] = warm_start->beta0;
    const auto warm_snps = warm_start->mask.indices();
    std::size_t w = 0;
    for (std::size_t s = 0; s < snps.size(); ++s) {
      while (w < warm_snps.size() && warm_snps[w] < snps[s]) ++w;
      if (w < warm_snps.size() && warm_snps[w] == snps[s]) theta[1 + static_cast<Eigen::Index>(s)] = warm_start->beta[w];
    }
    for (Eigen::Index c = 0; c < data.q() && c < static_cast<Eigen::Index>(warm_start->gamma.size()); ++c) {
      theta[1 + static_cast<Eigen::Index>(snps.size()) + c] = warm_start->gamma[static_cast<std::size_t>(c)];
    }
  } else {
    const double ybar = y.mean();
    if (ybar > 0.0 && ybar < 1.0) theta[0] = std::log(ybar / (1.0 - ybar));
  }

  Eigen::VectorXd mu(n), mu_try(n), sqrt_w(n), grad(k), delta(k), theta_try(k), eta_try(n);
  Eigen::VectorXd eta = X * theta;
  double ll = loglik_and_mean(y, eta, mu);

  Eigen::MatrixXd Xw(n, k), H(k, k);
  Eigen::LLT<Eigen::MatrixXd> llt(k);

  bool converged = false;
  int iter = 0;
  while (iter < config.max_iterations) {
    ++iter;
    for (Eigen::Index i = 0; i < n; ++i) sqrt_w[i] = std::sqrt(mu[i] * (1.0 - mu[i]));
    grad.noalias() = X.transpose() * (y - mu);
    Xw = X.array().colwise() * sqrt_w.array();
    H.setZero();
    H.selfadjointView<Eigen::Lower>().rankUpdate(Xw.transpose());
    const double scale = std::max(1.0, H.diagonal().maxCoeff());
    H.diagonal().array() += config.ridge_epsilon * scale;
    llt.compute(H);
    if (llt.info() != Eigen::Success) {
      throw SingularDesign("weighted normal equations are singular for model " + mask.to_string());
    }
    delta = llt.solve(grad);
    if (!delta.allFinite()) {
      throw SingularDesign("non-finite IRLS step for model " + mask.to_string());
    }

    // Step halving keeps the iteration monotone from poor warm starts.
    double step = 1.0;
    double ll_try = ll;
    bool accepted = false;
    for (int halving = 0; halving < 30 && !accepted; ++halving) {
      theta_try = theta + step * delta;
      eta_try.noalias() = X * theta_try;
      ll_try = loglik_and_mean(y, eta_try, mu_try);
      accepted = ll_try >= ll - 1e-12 * std::abs(ll);
      step *= 0.5;
    }
    if (!accepted) break;
    const double change = std::abs(ll_try - ll) / (std::abs(ll_try) + 0.1);
    theta.swap(theta_try);
    eta.swap(eta_try);
    mu.swap(mu_try);
    ll = ll_try;
    if (change < config.convergence_tolerance) {
      converged = true;
      break;
    }
  }

  GlmFit fit;
  fit.mask = mask;
  fit.beta0 = theta[0];
  fit.beta.assign(theta.data() + 1, theta.data() + 1 + snps.size());
  fit.gamma.assign(theta.data() + 1 + snps.size(), theta.data() + k);
  fit.loglik = ll;
  fit.converged = converged;
  fit.iterations = iter;
  fit.separation_flag = eta.size() > 0 && eta.cwiseAbs().maxCoeff() > config.separation_threshold;
  return fit;
}

Eigen::VectorXd linear_predictor(const GlmFit& fit, const GenotypeDataset& data) {
  return design_matrix(data, fit.mask) * fit.coefficients();
}

double log_likelihood(const GlmFit& fit, const GenotypeDataset& data) {
  return bernoulli_loglik(data.y, linear_predictor(fit, data));
}

Eigen::VectorXd score_vector(const GlmFit& fit, const GenotypeDataset& data) {
  const Eigen::MatrixXd X = design_matrix(data, fit.mask);
  const Eigen::VectorXd eta = X * fit.coefficients();
  Eigen::VectorXd resid(eta.size());
  for (Eigen::Index i = 0; i < eta.size(); ++i) resid[i] = data.y[i] - sigmoid(eta[i]);
  return X.transpose() * resid;
}

Eigen::VectorXd predict_probability(const GlmFit& fit, const GenotypeDataset& data) {
  Eigen::VectorXd eta = linear_predictor(fit, data);
  for (Eigen::Index i = 0; i < eta.size(); ++i) eta[i] = sigmoid(eta[i]);
  return eta;
}

double aic(const GlmFit& fit) { return -2.0 * fit.loglik + 2.0 * fit.num_parameters(); }

double bic(const GlmFit& fit, int n) {
  return -2.0 * fit.loglik + fit.num_parameters() * std::log(static_cast<double>(n));
}

}  // namespace snpvscs

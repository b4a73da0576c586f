#pragma once

#include <Eigen/Dense>

#include <vector>

#include "snpvscs/dataset.hpp"
#include "snpvscs/model_mask.hpp"

namespace snpvscs {

// Only the logit link is implemented; the identifier keeps room for other GLMs.
enum class Link { logit };

struct FitConfig {
  int max_iterations = 50;
  // Relative change in log-likelihood between IRLS iterations.
  double convergence_tolerance = 1e-8;
  // Added (scaled by the largest diagonal entry) to the weighted normal equations.
  double ridge_epsilon = 1e-10;
  // A fitted |linear predictor| above this marks the fit as (quasi-)separated.
  double separation_threshold = 30.0;
  Link link = Link::logit;

  void validate() const;
};

/// Maximum-likelihood logistic fit for one submodel.
///
/// `beta` holds one coefficient per SNP in `mask`, in ascending predictor order;
/// `gamma` holds one coefficient per forced covariate.
struct GlmFit {
  ModelMask mask;
  double beta0 = 0.0;
  std::vector<double> beta;
  std::vector<double> gamma;
  double loglik = 0.0;
  bool converged = false;
  int iterations = 0;
  bool separation_flag = false;

  /// Intercept + SNPs + covariates.
  int num_parameters() const { return 1 + mask.size() + static_cast<int>(gamma.size()); }

  /// Coefficients in design order: intercept, SNPs, covariates.
  Eigen::VectorXd coefficients() const;
};

/// Fits logistic regression on the intercept, the SNP columns in `mask` and
/// every covariate column by iteratively reweighted least squares with step
/// halving.
///
/// `warm_start`, when given, seeds the coefficients: SNPs shared with the warm
/// fit take its value, the rest start at zero. Fits that exhaust
/// `max_iterations` come back with `converged = false` and the last iterate.
/// Throws DimensionMismatch when the mask width differs from p and
/// SingularDesign when the normal equations cannot be solved even after the
/// ridge repair.
GlmFit fit_logistic(const GenotypeDataset& data, const ModelMask& mask,
                    const FitConfig& config = {}, const GlmFit* warm_start = nullptr);

/// Design matrix (intercept, masked SNPs, covariates) for the given rows.
Eigen::MatrixXd design_matrix(const GenotypeDataset& data, const ModelMask& mask);

/// Linear predictor of `fit` evaluated on `data`.
Eigen::VectorXd linear_predictor(const GlmFit& fit, const GenotypeDataset& data);

/// sum_i [ y_i eta_i - log(1 + exp(eta_i)) ], evaluated stably.
double bernoulli_loglik(const Eigen::VectorXd& y, const Eigen::VectorXd& eta);

/// Recomputes the log-likelihood of `fit` on `data`.
double log_likelihood(const GlmFit& fit, const GenotypeDataset& data);

/// Gradient of the log-likelihood with respect to the coefficients in design order.
Eigen::VectorXd score_vector(const GlmFit& fit, const GenotypeDataset& data);

/// Predicted P(y = 1) for each row of `data`.
Eigen::VectorXd predict_probability(const GlmFit& fit, const GenotypeDataset& data);

double aic(const GlmFit& fit);
double bic(const GlmFit& fit, int n);

}  // namespace snpvscs

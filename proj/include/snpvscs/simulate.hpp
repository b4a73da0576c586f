#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "snpvscs/dataset.hpp"
#include "snpvscs/glm.hpp"
#include "snpvscs/model_mask.hpp"
#include "snpvscs/random.hpp"

namespace snpvscs {

enum class CovKind { toeplitz, block };

/// Latent Gaussian correlation: rho^|i-j| (toeplitz) or four equal diagonal
/// blocks with constant within-block correlation rho (block).
struct CovStructure {
  CovKind kind = CovKind::toeplitz;
  double rho = 0.0;

  Eigen::MatrixXd matrix(int p) const;
};

/// Simulation design. Models 1 and 2 use coefficients (-1)^j on the first p/2
/// predictors, models 3 and 4 use (-1)^j / j. Models 1 and 3 are Toeplitz,
/// models 2 and 4 block diagonal.
struct SimSpec {
  int model_id = 1;
  int n = 100;
  int p = 8;
  double rho = 0.0;
  std::uint64_t seed = 1;

  void validate() const;
  CovStructure covariance() const;
  /// Predictors 0 .. p/2 - 1.
  ModelMask true_mask() const;
};

/// Length-p coefficient vector of the generating model (intercept and covariates are zero).
std::vector<double> true_beta(const SimSpec& spec);

/// n x p additive codes from thresholding N(0, Sigma) draws at the 1/3 and 2/3
/// normal quantiles. Throws CholeskyFailure when Sigma is not positive definite.
Eigen::MatrixXd sample_genotypes(const SimSpec& spec, const CovStructure& cov, StreamRng& rng);

/// Bernoulli responses with success probability logistic(beta0 + x beta).
Eigen::VectorXd sample_response(const Eigen::MatrixXd& x, std::span<const double> beta, StreamRng& rng,
                                double beta0 = 0.0);

/// One simulated dataset; `stream` selects an independent random stream.
GenotypeDataset simulate_dataset(const SimSpec& spec, std::uint64_t stream);

/// Synthetic case-control stand-in for a 20-SNP study: n = 684 subjects, age
/// and gender covariates, correlated SNPs including one high-LD pair, and
/// eight planted risk SNPs (see planted_standin_mask).
GenotypeDataset simulate_standin(std::uint64_t seed);
ModelMask planted_standin_mask();

struct Mc1Record {
  int replicate = 0;
  double alpha = 0.0;
  bool covered = false;
  std::size_t vscs_size = 0;
  std::size_t lbm_size = 0;
  double avg_lbm_predictors = 0.0;
  double lbm_hamming_to_truth = 0.0;
  double vscs_hamming_to_truth = 0.0;
};

struct McResult {
  double alpha = 0.0;
  double coverage = 0.0;
  double mean_vscs_size = 0.0;
  double mean_lbm_size = 0.0;
  double mean_avg_lbm_predictors = 0.0;
  double mean_lbm_hamming = 0.0;
  double mean_vscs_hamming = 0.0;
  double se_coverage = 0.0;
  double se_vscs_size = 0.0;
  double se_lbm_size = 0.0;
  double se_avg_lbm_predictors = 0.0;
  double se_lbm_hamming = 0.0;
  double se_vscs_hamming = 0.0;
  std::vector<Mc1Record> records;
};

/// Coverage and cardinality experiment. Replicate r uses stream r of
/// spec.seed, so results are identical for any thread count. One result per
/// alpha, in the order given.
std::vector<McResult> run_mc_experiment1(const SimSpec& spec, std::span<const double> alphas,
                                         int replicates, int threads, const FitConfig& fit_config = {});

struct Mc2Record {
  int replicate = 0;
  std::vector<int> aic_lbm;  // per alpha
  std::vector<int> bic_lbm;  // per alpha
  int forward_aic = 0;
  int forward_bic = 0;
};

/// Hamming distances to the true model for the aggregated and forward-selected models.
struct Mc2Result {
  std::vector<double> alphas;
  std::vector<double> mean_aic_lbm, se_aic_lbm;
  std::vector<double> mean_bic_lbm, se_bic_lbm;
  double mean_forward_aic = 0.0, se_forward_aic = 0.0;
  double mean_forward_bic = 0.0, se_forward_bic = 0.0;
  std::vector<Mc2Record> records;
};

Mc2Result run_mc_experiment2(const SimSpec& spec, std::span<const double> alphas, int replicates,
                             int threads, const FitConfig& fit_config = {});

/// CSV tables: model_id,n,p,rho,alpha,statistic,mean,mc_se with 12 significant digits.
void write_mc1_csv(std::ostream& out, const SimSpec& spec, const std::vector<McResult>& results);
void write_mc2_csv(std::ostream& out, const SimSpec& spec, const Mc2Result& result);
/// One row per replicate and alpha.
void write_mc1_records_csv(std::ostream& out, const std::vector<McResult>& results);
void write_mc2_records_csv(std::ostream& out, const Mc2Result& result);

}  // namespace snpvscs

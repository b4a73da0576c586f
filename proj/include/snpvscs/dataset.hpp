#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace snpvscs {

/// Case-control genotype data: a binary phenotype, an n x p matrix of additive
/// SNP codes (0 = AA, 1 = Aa, 2 = aa) and an n x q matrix of covariates that
/// every model includes.
struct GenotypeDataset {
  Eigen::VectorXd y;
  Eigen::MatrixXd x;
  Eigen::MatrixXd z;
  std::vector<std::string> snp_names;
  std::vector<std::string> covariate_names;
  // Input rows dropped by the loader for missing cells.
  std::size_t rows_rejected = 0;

  int n() const { return static_cast<int>(y.size()); }
  int p() const { return static_cast<int>(x.cols()); }
  int q() const { return static_cast<int>(z.cols()); }

  /// Throws InputError subclasses when shapes, codes or responses are invalid,
  /// or when n <= p + q + 1.
  void validate() const;

  /// Rows in the given order. Does not re-check n > p + q + 1.
  GenotypeDataset subset(std::span<const int> rows) const;

  /// FNV-1a digest over shapes, responses, codes and covariate values.
  std::uint64_t fingerprint() const;
};

/// Builds a dataset with generated names "snp1".."snpP" and "cov1".."covQ".
GenotypeDataset make_dataset(Eigen::VectorXd y, Eigen::MatrixXd x,
                             Eigen::MatrixXd z = Eigen::MatrixXd());

}  // namespace snpvscs

#pragma once

#include <optional>
#include <span>
#include <vector>

#include "snpvscs/dataset.hpp"
#include "snpvscs/model_space.hpp"

namespace snpvscs {

/// Inclusion-importance statistics over a lower-boundary set.
///
/// Undefined entries (a conditioning predictor that never appears) are empty
/// optionals, which serialize as null.
struct IiReport {
  double alpha = 0.0;
  std::vector<double> marginal;
  std::vector<std::vector<double>> joint;
  // conditional[j][k] = II(j | k)
  std::vector<std::vector<std::optional<double>>> conditional;
  std::vector<std::vector<std::optional<double>>> standardized_co;
};

struct FiveNumberSummary {
  double min = 0.0;
  double q1 = 0.0;
  double median = 0.0;
  double q3 = 0.0;
  double max = 0.0;
};

struct LbmSummary {
  std::size_t vscs_size = 0;
  std::size_t lbm_size = 0;
  FiveNumberSummary size_five_number;
  double ahd = 0.0;
};

/// Fraction of LBMs containing predictor j. Throws EmptyLbmSet.
double ii_marginal(const LbmSet& lbms, int j);

/// Fraction of LBMs containing both j and k. Throws EmptyLbmSet.
double ii_joint(const LbmSet& lbms, int j, int k);

/// II(j, k) / II(k); empty when II(k) = 0.
std::optional<double> ii_conditional(const LbmSet& lbms, int j, int k);

/// II(j, k) / II(j or k); empty when neither predictor appears.
std::optional<double> standardized_co_importance(const LbmSet& lbms, int j, int k);

/// All of the above for every predictor and pair.
IiReport inclusion_importance(const LbmSet& lbms);

/// Plug-in mutual information (natural log) between two SNP columns from the
/// 3 x 3 genotype contingency table. Empty cells contribute zero.
double mutual_information(const GenotypeDataset& data, int j, int k);

/// p x p matrix of pairwise mutual information; the diagonal holds entropies.
std::vector<std::vector<double>> mutual_information_matrix(const GenotypeDataset& data);

/// Linear-interpolation quantiles (R type 7) of the values.
FiveNumberSummary five_number_summary(std::vector<double> values);

/// Cardinalities, LBM size spread and the average pairwise Hamming distance
/// (zero for a single LBM).
LbmSummary lbm_summary(const Vscs& vscs, const LbmSet& lbms);

/// Mean Hamming distance from each model to target. Throws DomainError on an empty set.
double avg_hamming_to_target(std::span<const ModelMask> models, const ModelMask& target);

}  // namespace snpvscs

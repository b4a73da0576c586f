#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "snpvscs/dataset.hpp"
#include "snpvscs/glm.hpp"
#include "snpvscs/model_mask.hpp"

namespace snpvscs {

/// ROC points from the strictest threshold to the loosest. The first point is
/// (0, 0) at threshold +infinity; tied scores form a single step.
struct RocCurve {
  std::vector<double> thresholds;
  std::vector<double> fpr;
  std::vector<double> tpr;
  double auc = 0.0;
};

/// Fold index in [0, k) for each of n subjects: a seeded shuffle dealt
/// round-robin, so fold sizes differ by at most one. Throws BadFoldCount
/// unless 2 <= k <= n.
std::vector<int> kfold_split(int n, int k, std::uint64_t seed);

/// ROC curve and trapezoid AUC of scores against 0/1 labels. Throws
/// DomainError when either class is absent.
RocCurve roc_curve(std::span<const double> scores, std::span<const double> labels);

/// Out-of-fold predicted probabilities for a fixed model, one per subject.
/// Throws DegenerateFold when a training split has a single response class.
std::vector<double> cv_scores(const GenotypeDataset& data, const ModelMask& mask, int k,
                              const FitConfig& fit_config, std::uint64_t seed);

/// Pooled k-fold cross-validated ROC curve of a fixed model.
RocCurve cv_roc(const GenotypeDataset& data, const ModelMask& mask, int k, const FitConfig& fit_config,
                std::uint64_t seed);

}  // namespace snpvscs

#pragma once

#include <string_view>
#include <vector>

#include "snpvscs/dataset.hpp"
#include "snpvscs/glm.hpp"
#include "snpvscs/model_space.hpp"

namespace snpvscs {

enum class Criterion { aic, bic };

std::string_view to_string(Criterion c);

/// Criterion value of a fitted model on n subjects.
double criterion_value(const GlmFit& fit, Criterion c, int n);

struct AggregationResult {
  ModelMask selected;
  int k_tilde = 0;
  // Predictors by descending II, ties by ascending index.
  std::vector<int> rank_order;
  // Criterion of the top-1, top-2, ... prefix models that were evaluated.
  std::vector<double> criterion_path;
  bool in_vscs = false;
  Criterion criterion = Criterion::aic;
};

/// Predictor order by descending marginal II, ties broken by ascending index.
std::vector<int> importance_rank(const std::vector<double>& marginal_ii);

/// Aggregated model from the II ranking.
///
/// Prefix models of the positive-II ranking are scored with the criterion,
/// starting from one predictor. Stepping stops at the first prefix whose
/// successor does not strictly improve the criterion and which is itself a
/// VSCS member (looked up, never refitted). When every positive-II predictor
/// is used without meeting that rule, the best-criterion prefix inside the
/// VSCS is returned, or the best prefix overall with in_vscs = false when no
/// prefix is a member. Throws NoPositiveImportance when every II is zero.
AggregationResult aggregate_lbm(const LbmSet& lbms, const Vscs& vscs, const GenotypeDataset& data,
                                Criterion criterion, const FitConfig& fit_config = {});

/// Greedy forward selection from the empty SNP set: add the predictor giving
/// the lowest criterion (ties to the lower index) while it strictly improves.
ModelMask forward_select(const GenotypeDataset& data, Criterion criterion,
                         const FitConfig& fit_config = {});

}  // namespace snpvscs

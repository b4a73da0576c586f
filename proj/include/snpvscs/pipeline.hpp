#pragma once

#include <cstdint>
#include <vector>

#include "snpvscs/dataset.hpp"
#include "snpvscs/glm.hpp"
#include "snpvscs/model_space.hpp"
#include "snpvscs/report.hpp"

namespace snpvscs {

struct AnalysisOptions {
  std::vector<double> alphas{0.05};
  int threads = 1;
  WarmStartPolicy warm_start = WarmStartPolicy::from_full;
  FitConfig fit;
  std::uint64_t seed = 0;
};

/// Screens the dataset once at the smallest requested alpha.
Vscs screen(const GenotypeDataset& data, const AnalysisOptions& options);

/// Report skeleton with VSCS/LBM cardinalities, LBMs and summaries for each
/// alpha (ascending). `widest` must have been screened at or below every alpha.
AnalysisReport build_vscs_report(const GenotypeDataset& data, const Vscs& widest, const AnalysisOptions& options);

/// Fills inclusion importance for every level from the stored LBMs, and the
/// mutual-information matrix when `data` is given.
void add_importance(AnalysisReport& report, const GenotypeDataset* data);

/// Fills AIC/BIC aggregation for every level plus the forward-selection
/// baselines, each with its LRT p-value against the full model.
void add_aggregation(AnalysisReport& report, const GenotypeDataset& data, const Vscs& widest,
                     const FitConfig& fit = {});

/// p-value of the likelihood-ratio test of `mask` against the full model,
/// reusing the VSCS log-likelihood when the mask is stored there.
double lrt_p_value(const GenotypeDataset& data, const Vscs& widest, const ModelMask& mask, const FitConfig& fit);

/// Throws InputError when the report or VSCS was produced from other data.
void check_fingerprint(const AnalysisReport& report, const GenotypeDataset& data);

}  // namespace snpvscs

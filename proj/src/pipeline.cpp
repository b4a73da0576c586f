#include "snpvscs/pipeline.hpp"

#include <algorithm>

#include "snpvscs/distributions.hpp"
#include "snpvscs/errors.hpp"
#include "snpvscs/importance.hpp"

namespace snpvscs {

Vscs screen(const GenotypeDataset& data, const AnalysisOptions& options) {
  if (options.alphas.empty()) throw DomainError("at least one alpha is required");
  ScreeningConfig sc;
  sc.alpha = *std::min_element(options.alphas.begin(), options.alphas.end());
  sc.parallel_chunks = options.threads;
  sc.warm_start_policy = options.warm_start;
  return enumerate_vscs(data, sc, options.fit);
}

AnalysisReport build_vscs_report(const GenotypeDataset& data, const Vscs& widest, const AnalysisOptions& options) {
  AnalysisReport report;
  report.seed = options.seed;
  report.dataset = {data.n(), data.p(), data.q(), data.fingerprint(), data.rows_rejected};
  report.snp_names = data.snp_names;
  report.covariate_names = data.covariate_names;
  std::vector<double> alphas = options.alphas;
  std::sort(alphas.begin(), alphas.end());
  alphas.erase(std::unique(alphas.begin(), alphas.end()), alphas.end());
  for (double alpha : alphas) {
    const Vscs vscs = alpha == widest.alpha() ? widest : widest.at_level(alpha);
    const LbmSet lbms = extract_lbms(vscs);
    LevelReport level;
    level.alpha = alpha;
    level.vscs_size = vscs.size();
    level.lbm_size = lbms.size();
    level.lbms = lbms.masks;
    level.summary = lbm_summary(vscs, lbms);
    report.levels.push_back(std::move(level));
  }
  return report;
}

namespace {

LbmSet lbm_set(const LevelReport& level, int p) { return LbmSet{level.lbms, level.alpha, p}; }

}  // namespace

void add_importance(AnalysisReport& report, const GenotypeDataset* data) {
  for (auto& level : report.levels) level.importance = inclusion_importance(lbm_set(level, report.dataset.p));
  if (data != nullptr) report.mutual_information = mutual_information_matrix(*data);
}

double lrt_p_value(const GenotypeDataset& data, const Vscs& widest, const ModelMask& mask, const FitConfig& fit) {
  double loglik;
  if (const VscsEntry* e = widest.find(mask)) {
    loglik = e->loglik;
  } else {
    loglik = fit_logistic(data, mask, fit).loglik;
  }
  const double d = std::max(0.0, 2.0 * (widest.full_fit().loglik - loglik));
  return chisq_upper_tail(d, data.p() - mask.size());
}

void add_aggregation(AnalysisReport& report, const GenotypeDataset& data, const Vscs& widest, const FitConfig& fit) {
  check_fingerprint(report, data);
  if (report.levels.empty() || report.levels.front().importance == std::nullopt) add_importance(report, nullptr);
  for (auto& level : report.levels) {
    const Vscs vscs = level.alpha == widest.alpha() ? widest : widest.at_level(level.alpha);
    const LbmSet lbms = lbm_set(level, data.p());
    // An empty-model LBM set has nothing to rank; that level keeps null aggregates.
    if (std::all_of(lbms.masks.begin(), lbms.masks.end(), [](const ModelMask& m) { return m.size() == 0; })) continue;
    for (Criterion c : {Criterion::aic, Criterion::bic}) {
      AggregateSelection s;
      s.result = aggregate_lbm(lbms, vscs, data, c, fit);
      s.lrt_p_value = lrt_p_value(data, widest, s.result.selected, fit);
      (c == Criterion::aic ? level.aic_aggregate : level.bic_aggregate) = std::move(s);
    }
  }
  for (Criterion c : {Criterion::aic, Criterion::bic}) {
    const ModelMask m = forward_select(data, c, fit);
    (c == Criterion::aic ? report.forward_aic : report.forward_bic) =
        ForwardSelection{m, lrt_p_value(data, widest, m, fit)};
  }
}

void check_fingerprint(const AnalysisReport& report, const GenotypeDataset& data) {
  if (report.dataset.hash != data.fingerprint() || report.dataset.p != data.p() || report.dataset.n != data.n()) {
    throw InputError("report was produced from a different dataset");
  }
}

}  // namespace snpvscs

#include "snpvscs/aggregate.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "snpvscs/errors.hpp"
#include "snpvscs/importance.hpp"

namespace snpvscs {

std::string_view to_string(Criterion c) { return c == Criterion::aic ? "AIC" : "BIC"; }

double criterion_value(const GlmFit& fit, Criterion c, int n) {
  return c == Criterion::aic ? aic(fit) : bic(fit, n);
}

std::vector<int> importance_rank(const std::vector<double>& marginal_ii) {
  std::vector<int> order(marginal_ii.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return marginal_ii[static_cast<std::size_t>(a)] > marginal_ii[static_cast<std::size_t>(b)];
  });
  return order;
}

AggregationResult aggregate_lbm(const LbmSet& lbms, const Vscs& vscs, const GenotypeDataset& data,
                                Criterion criterion, const FitConfig& fit_config) {
  if (lbms.empty()) throw EmptyLbmSet("lower boundary model set is empty");
  const int p = data.p();
  if (lbms.p != p || vscs.p() != p) throw DimensionMismatch("LBM set, VSCS and dataset widths differ");

  std::vector<double> marginal(static_cast<std::size_t>(p));
  for (int j = 0; j < p; ++j) marginal[static_cast<std::size_t>(j)] = ii_marginal(lbms, j);

  AggregationResult r;
  r.criterion = criterion;
  r.rank_order = importance_rank(marginal);
  const auto positive = static_cast<std::size_t>(
      std::count_if(marginal.begin(), marginal.end(), [](double v) { return v > 0.0; }));
  if (positive == 0) throw NoPositiveImportance("no predictor appears in any lower boundary model");

  std::vector<ModelMask> prefixes;
  ModelMask current = ModelMask::empty(p);
  const GlmFit* previous = nullptr;
  GlmFit last_fit;
  auto evaluate_prefix = [&](std::size_t k) {
    current = current.with(r.rank_order[k - 1]);
    GlmFit fit = fit_logistic(data, current, fit_config, previous);
    last_fit = std::move(fit);
    previous = &last_fit;
    prefixes.push_back(current);
    r.criterion_path.push_back(criterion_value(last_fit, criterion, data.n()));
  };

  auto finish = [&](std::size_t k, bool member) {
    r.k_tilde = static_cast<int>(k);
    r.selected = prefixes[k - 1];
    r.in_vscs = member;
    return r;
  };

  evaluate_prefix(1);
  for (std::size_t k = 1; k <= positive; ++k) {
    const bool member = vscs.contains(prefixes[k - 1]);
    if (k == positive) {
      if (member) return finish(k, true);
      break;
    }
    evaluate_prefix(k + 1);
    if (member && r.criterion_path[k] >= r.criterion_path[k - 1]) return finish(k, true);
  }

  // No prefix satisfied both clauses of the stopping rule.
  std::size_t best = 0;
  bool best_member = false;
  for (std::size_t k = 1; k <= prefixes.size(); ++k) {
    const bool member = vscs.contains(prefixes[k - 1]);
    const double value = r.criterion_path[k - 1];
    if (best == 0 || (member && !best_member) ||
        (member == best_member && value < r.criterion_path[best - 1])) {
      best = k;
      best_member = member;
    }
  }
  return finish(best, best_member);
}

ModelMask forward_select(const GenotypeDataset& data, Criterion criterion, const FitConfig& fit_config) {
  const int p = data.p();
  if (p < 1) throw DomainError("forward selection needs at least one predictor");
  const int n = data.n();
  ModelMask current = ModelMask::empty(p);
  GlmFit current_fit = fit_logistic(data, current, fit_config);
  double current_value = criterion_value(current_fit, criterion, n);
  while (current.size() < p) {
    int best_j = -1;
    double best_value = 0.0;
    GlmFit best_fit;
    for (int j = 0; j < p; ++j) {
      if (current.contains(j)) continue;
      GlmFit fit = fit_logistic(data, current.with(j), fit_config, &current_fit);
      const double value = criterion_value(fit, criterion, n);
      if (best_j < 0 || value < best_value) {
        best_j = j;
        best_value = value;
        best_fit = std::move(fit);
      }
    }
    if (!(best_value < current_value)) break;
    current = current.with(best_j);
    current_fit = std::move(best_fit);
    current_value = best_value;
  }
  return current;
}

}  // namespace snpvscs

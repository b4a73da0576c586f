#include "snpvscs/evaluate.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

#include "snpvscs/errors.hpp"
#include "snpvscs/random.hpp"

namespace snpvscs {

std::vector<int> kfold_split(int n, int k, std::uint64_t seed) {
  if (k < 2 || k > n) {
    throw BadFoldCount("fold count " + std::to_string(k) + " must satisfy 2 <= k <= n = " + std::to_string(n));
  }
  std::vector<int> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  StreamRng rng(seed, 0);
  for (std::size_t i = order.size() - 1; i > 0; --i) {
    std::swap(order[i], order[rng.below(i + 1)]);
  }
  std::vector<int> fold(static_cast<std::size_t>(n));
  for (std::size_t pos = 0; pos < order.size(); ++pos) {
    fold[static_cast<std::size_t>(order[pos])] = static_cast<int>(pos % static_cast<std::size_t>(k));
  }
  return fold;
}

RocCurve roc_curve(std::span<const double> scores, std::span<const double> labels) {
  if (scores.size() != labels.size()) throw DimensionMismatch("score and label counts differ");
  const auto positives = static_cast<double>(std::count(labels.begin(), labels.end(), 1.0));
  const double negatives = static_cast<double>(labels.size()) - positives;
  if (positives == 0.0 || negatives == 0.0) throw DomainError("ROC needs both response classes");

  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return scores[a] > scores[b]; });

  RocCurve roc;
  roc.thresholds.push_back(std::numeric_limits<double>::infinity());
  roc.fpr.push_back(0.0);
  roc.tpr.push_back(0.0);
  double tp = 0.0, fp = 0.0;
  for (std::size_t i = 0; i < order.size();) {
    const double threshold = scores[order[i]];
    for (; i < order.size() && scores[order[i]] == threshold; ++i) {
      (labels[order[i]] == 1.0 ? tp : fp) += 1.0;
    }
    const double x = fp / negatives, y = tp / positives;
    roc.auc += 0.5 * (x - roc.fpr.back()) * (y + roc.tpr.back());
    roc.thresholds.push_back(threshold);
    roc.fpr.push_back(x);
    roc.tpr.push_back(y);
  }
  return roc;
}

std::vector<double> cv_scores(const GenotypeDataset& data, const ModelMask& mask, int k,
                              const FitConfig& fit_config, std::uint64_t seed) {
  const auto fold = kfold_split(data.n(), k, seed);
  std::vector<double> scores(static_cast<std::size_t>(data.n()));
  for (int f = 0; f < k; ++f) {
    std::vector<int> train, test;
    for (int i = 0; i < data.n(); ++i) (fold[static_cast<std::size_t>(i)] == f ? test : train).push_back(i);
    const GenotypeDataset training = data.subset(train);
    const double cases = training.y.sum();
    if (cases == 0.0 || cases == training.n()) {
      throw DegenerateFold("training split for fold " + std::to_string(f) + " has a single response class");
    }
    const GlmFit fit = fit_logistic(training, mask, fit_config);
    const Eigen::VectorXd prob = predict_probability(fit, data.subset(test));
    for (std::size_t t = 0; t < test.size(); ++t) {
      scores[static_cast<std::size_t>(test[t])] = prob[static_cast<Eigen::Index>(t)];
    }
  }
  return scores;
}

RocCurve cv_roc(const GenotypeDataset& data, const ModelMask& mask, int k, const FitConfig& fit_config,
                std::uint64_t seed) {
  const auto scores = cv_scores(data, mask, k, fit_config, seed);
  return roc_curve(scores, std::span<const double>(data.y.data(), static_cast<std::size_t>(data.n())));
}

}  // namespace snpvscs

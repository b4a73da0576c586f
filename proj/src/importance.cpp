#include "snpvscs/importance.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "snpvscs/errors.hpp"

namespace snpvscs {

namespace {

void require_nonempty(const LbmSet& lbms) {
  if (lbms.empty()) throw EmptyLbmSet("lower boundary model set is empty");
}

double fraction(const LbmSet& lbms, std::uint64_t required) {
  require_nonempty(lbms);
  std::size_t hits = 0;
  for (const auto& m : lbms.masks) hits += (m.bits() & required) == required;
  return static_cast<double>(hits) / static_cast<double>(lbms.size());
}

std::uint64_t bit(int j) { return std::uint64_t{1} << j; }

}  // namespace

double ii_marginal(const LbmSet& lbms, int j) { return fraction(lbms, bit(j)); }

double ii_joint(const LbmSet& lbms, int j, int k) { return fraction(lbms, bit(j) | bit(k)); }

std::optional<double> ii_conditional(const LbmSet& lbms, int j, int k) {
  const double given = ii_marginal(lbms, k);
  if (given == 0.0) return std::nullopt;
  return ii_joint(lbms, j, k) / given;
}

std::optional<double> standardized_co_importance(const LbmSet& lbms, int j, int k) {
  const double both = ii_joint(lbms, j, k);
  const double either = ii_marginal(lbms, j) + ii_marginal(lbms, k) - both;
  if (either == 0.0) return std::nullopt;
  return both / either;
}

IiReport inclusion_importance(const LbmSet& lbms) {
  require_nonempty(lbms);
  const int p = lbms.p;
  const auto P = static_cast<std::size_t>(p);
  IiReport r;
  r.alpha = lbms.alpha;
  r.marginal.resize(P);
  r.joint.assign(P, std::vector<double>(P));
  r.conditional.assign(P, std::vector<std::optional<double>>(P));
  r.standardized_co.assign(P, std::vector<std::optional<double>>(P));
  for (int j = 0; j < p; ++j) r.marginal[static_cast<std::size_t>(j)] = ii_marginal(lbms, j);
  for (int j = 0; j < p; ++j) {
    for (int k = 0; k < p; ++k) {
      const auto J = static_cast<std::size_t>(j), K = static_cast<std::size_t>(k);
      r.joint[J][K] = ii_joint(lbms, j, k);
      if (r.marginal[K] > 0.0) r.conditional[J][K] = r.joint[J][K] / r.marginal[K];
      const double either = r.marginal[J] + r.marginal[K] - r.joint[J][K];
      if (either > 0.0) r.standardized_co[J][K] = r.joint[J][K] / either;
    }
  }
  return r;
}

double mutual_information(const GenotypeDataset& data, int j, int k) {
  const int n = data.n();
  if (n <= 0) throw DomainError("mutual information needs at least one subject");
  std::array<std::array<double, 3>, 3> joint{};
  std::array<double, 3> pj{}, pk{};
  for (int i = 0; i < n; ++i) {
    const auto a = static_cast<std::size_t>(data.x(i, j));
    const auto b = static_cast<std::size_t>(data.x(i, k));
    joint[a][b] += 1.0;
  }
  for (std::size_t a = 0; a < 3; ++a) {
    for (std::size_t b = 0; b < 3; ++b) {
      joint[a][b] /= n;
      pj[a] += joint[a][b];
      pk[b] += joint[a][b];
    }
  }
  double mi = 0.0;
  for (std::size_t a = 0; a < 3; ++a) {
    for (std::size_t b = 0; b < 3; ++b) {
      if (joint[a][b] > 0.0) mi += joint[a][b] * std::log(joint[a][b] / (pj[a] * pk[b]));
    }
  }
  return mi;
}

std::vector<std::vector<double>> mutual_information_matrix(const GenotypeDataset& data) {
  const auto P = static_cast<std::size_t>(data.p());
  std::vector<std::vector<double>> mi(P, std::vector<double>(P));
  for (int j = 0; j < data.p(); ++j) {
    for (int k = j; k < data.p(); ++k) {
      const double v = mutual_information(data, j, k);
      mi[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)] = v;
      mi[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)] = v;
    }
  }
  return mi;
}

FiveNumberSummary five_number_summary(std::vector<double> values) {
  if (values.empty()) throw DomainError("five-number summary of an empty sample");
  std::sort(values.begin(), values.end());
  auto quantile = [&](double prob) {
    const double h = prob * static_cast<double>(values.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(h));
    const auto hi = std::min(lo + 1, values.size() - 1);
    return values[lo] + (h - static_cast<double>(lo)) * (values[hi] - values[lo]);
  };
  return {values.front(), quantile(0.25), quantile(0.5), quantile(0.75), values.back()};
}

LbmSummary lbm_summary(const Vscs& vscs, const LbmSet& lbms) {
  require_nonempty(lbms);
  LbmSummary s;
  s.vscs_size = vscs.size();
  s.lbm_size = lbms.size();
  std::vector<double> sizes;
  for (const auto& m : lbms.masks) sizes.push_back(m.size());
  s.size_five_number = five_number_summary(std::move(sizes));
  if (lbms.size() > 1) {
    double total = 0.0;
    for (std::size_t a = 0; a < lbms.size(); ++a)
      for (std::size_t b = a + 1; b < lbms.size(); ++b) total += hamming_distance(lbms.masks[a], lbms.masks[b]);
    const double pairs = 0.5 * static_cast<double>(lbms.size()) * static_cast<double>(lbms.size() - 1);
    s.ahd = total / pairs;
  }
  return s;
}

double avg_hamming_to_target(std::span<const ModelMask> models, const ModelMask& target) {
  if (models.empty()) throw DomainError("average Hamming distance of an empty model set");
  double total = 0.0;
  for (const auto& m : models) total += hamming_distance(m, target);
  return total / static_cast<double>(models.size());
}

}  // namespace snpvscs

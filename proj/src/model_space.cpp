#include "snpvscs/model_space.hpp"

#include <algorithm>
#include <optional>
#include <string>

#include "snpvscs/distributions.hpp"
#include "snpvscs/errors.hpp"
#include "snpvscs/parallel.hpp"

namespace snpvscs {

void ScreeningConfig::validate() const {
  if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("alpha must lie in (0, 1)");
  if (parallel_chunks < 1) throw DomainError("parallel_chunks must be at least 1");
}

Vscs::Vscs(double alpha, int p, int n, int q, std::vector<VscsEntry> entries, GlmFit full_fit)
    : alpha_(alpha), p_(p), n_(n), q_(q), entries_(std::move(entries)), full_fit_(std::move(full_fit)) {
  if (p < 0 || p > kMaxEnumerationWidth) throw TooManyPredictors("VSCS width exceeds 25 predictors");
  std::sort(entries_.begin(), entries_.end(),
            [](const VscsEntry& a, const VscsEntry& b) { return a.mask.bits() < b.mask.bits(); });
  member_.assign(std::size_t{1} << p, false);
  for (const auto& e : entries_) {
    if (e.mask.width() != p) throw DimensionMismatch("VSCS entry width differs from p");
    member_[e.mask.bits()] = true;
  }
}

bool Vscs::contains(const ModelMask& mask) const {
  if (mask.width() != p_) throw DimensionMismatch("mask width differs from VSCS width");
  return member_[mask.bits()];
}

const VscsEntry* Vscs::find(const ModelMask& mask) const {
  if (!contains(mask)) return nullptr;
  auto it = std::lower_bound(entries_.begin(), entries_.end(), mask.bits(),
                             [](const VscsEntry& e, std::uint64_t b) { return e.mask.bits() < b; });
  return &*it;
}

Vscs Vscs::at_level(double alpha2) const {
  if (!(alpha2 >= alpha_ && alpha2 < 1.0)) {
    throw DomainError("a VSCS can only be narrowed to a level in [alpha, 1)");
  }
  std::vector<double> quantile(static_cast<std::size_t>(p_) + 1);
  for (int nu = 1; nu <= p_; ++nu) quantile[static_cast<std::size_t>(nu)] = chisq_quantile(alpha2, nu);
  std::vector<VscsEntry> kept;
  for (const auto& e : entries_) {
    const int nu = p_ - e.mask.size();
    if (nu == 0 || e.d_stat < quantile[static_cast<std::size_t>(nu)]) kept.push_back(e);
  }
  return Vscs(alpha2, p_, n_, q_, std::move(kept), full_fit_);
}

double lrt_statistic(const GlmFit& fit_m, const GlmFit& fit_full) {
  if (!fit_m.mask.is_subset_of(fit_full.mask)) {
    throw MaskNotNested("model " + fit_m.mask.to_string() + " is not nested in " +
                        fit_full.mask.to_string());
  }
  return std::max(0.0, 2.0 * (fit_full.loglik - fit_m.loglik));
}

namespace {

// Masks are processed in blocks sharing their high bits; within a block masks
// run in decreasing order so a mask's parent (lowest missing bit added) is
// fitted before it whenever both fall in the same block.
constexpr int kBlockBits = 8;

VscsEntry make_entry(const GlmFit& fit, const GlmFit& full, int n) {
  return VscsEntry{fit.mask, lrt_statistic(fit, full), fit.loglik, aic(fit), bic(fit, n),
                   fit.converged, fit.separation_flag};
}

}  // namespace

Vscs enumerate_vscs(const GenotypeDataset& data, const ScreeningConfig& config,
                    const FitConfig& fit_config) {
  config.validate();
  fit_config.validate();
  const int p = data.p();
  if (p > kMaxEnumerationWidth) {
    throw TooManyPredictors("exhaustive enumeration supports at most 25 predictors, got " +
                            std::to_string(p));
  }
  data.validate();

  const ModelMask full_mask = ModelMask::full(p);
  const GlmFit full_fit = fit_logistic(data, full_mask, fit_config);
  const int n = data.n();

  std::vector<double> threshold(static_cast<std::size_t>(p) + 1, 0.0);
  for (int nu = 1; nu <= p; ++nu) threshold[static_cast<std::size_t>(nu)] = chisq_quantile(config.alpha, nu);

  const int block_bits = std::min(p, kBlockBits);
  const std::uint64_t block_size = std::uint64_t{1} << block_bits;
  const std::uint64_t block_count = (std::uint64_t{1} << p) >> block_bits;
  std::vector<std::vector<VscsEntry>> per_block(block_count);

  parallel_for(block_count, config.parallel_chunks, [&](std::size_t block) {
    const std::uint64_t base = static_cast<std::uint64_t>(block) << block_bits;
    std::vector<std::optional<GlmFit>> local;
    if (config.warm_start_policy == WarmStartPolicy::from_parent) local.resize(block_size);
    auto& out = per_block[block];
    for (std::uint64_t offset = block_size; offset-- > 0;) {
      const std::uint64_t bits = base | offset;
      const ModelMask mask(p, bits);
      const int nu = p - mask.size();
      if (nu == 0) {
        out.push_back(make_entry(full_fit, full_fit, n));
        if (!local.empty()) local[offset] = full_fit;
        continue;
      }
      const GlmFit* warm = nullptr;
      switch (config.warm_start_policy) {
        case WarmStartPolicy::none:
          break;
        case WarmStartPolicy::from_full:
          warm = &full_fit;
          break;
        case WarmStartPolicy::from_parent: {
          const std::uint64_t missing = ~bits & full_mask.bits();
          const std::uint64_t parent_offset = (bits | (missing & (~missing + 1))) - base;
          warm = parent_offset < block_size && local[parent_offset] ? &*local[parent_offset] : &full_fit;
          break;
        }
      }
      GlmFit fit = fit_logistic(data, mask, fit_config, warm);
      const double d = std::max(0.0, 2.0 * (full_fit.loglik - fit.loglik));
      if (d < threshold[static_cast<std::size_t>(nu)]) {
        out.push_back(VscsEntry{mask, d, fit.loglik, aic(fit), bic(fit, n), fit.converged,
                                fit.separation_flag});
      }
      if (!local.empty()) local[offset] = std::move(fit);
    }
  });

  std::vector<VscsEntry> entries;
  for (auto& block : per_block) entries.insert(entries.end(), block.begin(), block.end());
  return Vscs(config.alpha, p, n, data.q(), std::move(entries), full_fit);
}

LbmSet extract_lbms(const Vscs& vscs) {
  const int p = vscs.p();
  const std::uint64_t total = std::uint64_t{1} << p;
  // covered[m]: some proper subset of m is a VSCS member. Every m \ {j} is
  // numerically smaller than m, so ascending order visits subsets first.
  std::vector<bool> covered(total, false);
  LbmSet out;
  out.alpha = vscs.alpha();
  out.p = p;
  for (std::uint64_t m = 0; m < total; ++m) {
    bool c = false;
    for (std::uint64_t rest = m; rest != 0 && !c; rest &= rest - 1) {
      const std::uint64_t sub = m & ~(rest & (~rest + 1));
      c = vscs.contains_bits(sub) || covered[sub];
    }
    covered[m] = c;
    if (!c && vscs.contains_bits(m)) out.masks.emplace_back(p, m);
  }
  return out;
}

bool is_antichain(const std::vector<ModelMask>& masks) {
  for (std::size_t a = 0; a < masks.size(); ++a) {
    for (std::size_t b = 0; b < masks.size(); ++b) {
      if (a != b && masks[a].is_subset_of(masks[b])) return false;
    }
  }
  return true;
}

}  // namespace snpvscs

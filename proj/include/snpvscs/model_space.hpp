#pragma once

#include <cstdint>
#include <vector>

#include "snpvscs/dataset.hpp"
#include "snpvscs/glm.hpp"
#include "snpvscs/model_mask.hpp"

namespace snpvscs {

// Exhaustive enumeration limit on the number of SNP predictors.
inline constexpr int kMaxEnumerationWidth = 25;

enum class WarmStartPolicy {
  none,       // every fit starts cold
  from_full,  // full-model coefficients restricted to the mask
  from_parent // fit of the mask with its lowest missing predictor added
};

struct ScreeningConfig {
  double alpha = 0.05;
  // Worker threads used for enumeration. Results do not depend on it.
  int parallel_chunks = 1;
  WarmStartPolicy warm_start_policy = WarmStartPolicy::from_full;

  void validate() const;
};

struct VscsEntry {
  ModelMask mask;
  double d_stat = 0.0;
  double loglik = 0.0;
  double aic = 0.0;
  double bic = 0.0;
  bool converged = true;
  bool separation = false;
};

/// Variable selection confidence set: the submodels whose likelihood-ratio
/// statistic against the full model stays below the chi-square(alpha, p - p_m)
/// quantile, plus the full model itself.
///
/// Entries are sorted by mask value. A 2^p membership bitmap is kept alongside
/// for constant-time lookup and for the lower-boundary pass.
class Vscs {
 public:
  Vscs() = default;
  Vscs(double alpha, int p, int n, int q, std::vector<VscsEntry> entries, GlmFit full_fit);

  double alpha() const { return alpha_; }
  int p() const { return p_; }
  int n() const { return n_; }
  int q() const { return q_; }
  const std::vector<VscsEntry>& entries() const { return entries_; }
  const GlmFit& full_fit() const { return full_fit_; }
  std::size_t size() const { return entries_.size(); }

  bool contains(const ModelMask& mask) const;
  bool contains_bits(std::uint64_t bits) const { return member_[bits]; }
  /// Entry for mask, or nullptr when the mask did not survive screening.
  const VscsEntry* find(const ModelMask& mask) const;

  /// The confidence set at a larger level alpha2 >= alpha(), obtained by
  /// re-screening the stored statistics. Exact because the quantile is
  /// decreasing in alpha.
  Vscs at_level(double alpha2) const;

 private:
  double alpha_ = 0.0;
  int p_ = 0;
  int n_ = 0;
  int q_ = 0;
  std::vector<VscsEntry> entries_;
  std::vector<bool> member_;
  GlmFit full_fit_;
};

/// Lower boundary models: the VSCS members with no proper submodel in the VSCS.
struct LbmSet {
  std::vector<ModelMask> masks;
  double alpha = 0.0;
  int p = 0;

  std::size_t size() const { return masks.size(); }
  bool empty() const { return masks.empty(); }
};

/// 2 (loglik(full) - loglik(m)), clamped at zero. Throws MaskNotNested when
/// fit_m's mask is not contained in fit_full's.
double lrt_statistic(const GlmFit& fit_m, const GlmFit& fit_full);

/// Screens all 2^p submodels. Throws TooManyPredictors when p > 25.
Vscs enumerate_vscs(const GenotypeDataset& data, const ScreeningConfig& config,
                    const FitConfig& fit_config = {});

/// Minimal elements of the VSCS under set inclusion, in ascending mask order.
LbmSet extract_lbms(const Vscs& vscs);

/// True when no mask is a subset of another.
bool is_antichain(const std::vector<ModelMask>& masks);

}  // namespace snpvscs

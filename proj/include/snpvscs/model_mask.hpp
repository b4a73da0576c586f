#pragma once

#include <bit>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

namespace snpvscs {

/// A submodel of the full model, encoded as one bit per SNP predictor.
///
/// The intercept and the forced covariates are implicit and always present.
/// Bit j (0-based) set means SNP j is included. Width is the total number of
/// candidate SNPs p and must match the dataset the mask is used with.
class ModelMask {
 public:
  static constexpr int kMaxWidth = 64;

  ModelMask() = default;
  ModelMask(int width, std::uint64_t bits);

  static ModelMask empty(int width) { return ModelMask(width, 0); }
  static ModelMask full(int width);
  static ModelMask from_indices(int width, const std::vector<int>& indices);
  static ModelMask from_indices(int width, std::initializer_list<int> indices) {
    return from_indices(width, std::vector<int>(indices));
  }

  int width() const noexcept { return width_; }
  std::uint64_t bits() const noexcept { return bits_; }
  int size() const noexcept { return std::popcount(bits_); }
  bool is_full() const noexcept { return *this == full(width_); }

  bool contains(int j) const noexcept { return (bits_ >> j) & 1U; }
  ModelMask with(int j) const { return {width_, bits_ | (std::uint64_t{1} << j)}; }
  ModelMask without(int j) const { return {width_, bits_ & ~(std::uint64_t{1} << j)}; }

  /// True when every predictor of *this is also in other. Widths must agree.
  bool is_subset_of(const ModelMask& other) const;

  /// Included predictor indices in ascending order.
  std::vector<int> indices() const;

  /// Compact "{0,3,5}" rendering, 0-based.
  std::string to_string() const;

  friend bool operator==(const ModelMask&, const ModelMask&) = default;
  friend auto operator<=>(const ModelMask& a, const ModelMask& b) {
    if (auto c = a.width_ <=> b.width_; c != 0) return c;
    return a.bits_ <=> b.bits_;
  }

 private:
  int width_ = 0;
  std::uint64_t bits_ = 0;
};

/// Number of predictors on which the two models differ.
int hamming_distance(const ModelMask& a, const ModelMask& b);

}  // namespace snpvscs

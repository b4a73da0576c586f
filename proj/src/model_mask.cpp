#include "snpvscs/model_mask.hpp"

#include "snpvscs/errors.hpp"

namespace snpvscs {

namespace {

std::uint64_t width_mask(int width) {
  return width == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << width) - 1;
}

}  // namespace

ModelMask::ModelMask(int width, std::uint64_t bits) : width_(width), bits_(bits) {
  if (width < 0 || width > kMaxWidth) {
    throw DomainError("mask width " + std::to_string(width) + " outside [0, 64]");
  }
  if ((bits & ~width_mask(width)) != 0) {
    throw DimensionMismatch("mask bits exceed width " + std::to_string(width));
  }
}

ModelMask ModelMask::full(int width) { return ModelMask(width, width_mask(width)); }

ModelMask ModelMask::from_indices(int width, const std::vector<int>& indices) {
  std::uint64_t bits = 0;
  for (int j : indices) {
    if (j < 0 || j >= width) {
      throw DimensionMismatch("predictor index " + std::to_string(j) + " outside mask width " +
                              std::to_string(width));
    }
    bits |= std::uint64_t{1} << j;
  }
  return ModelMask(width, bits);
}

bool ModelMask::is_subset_of(const ModelMask& other) const {
  if (width_ != other.width_) throw DimensionMismatch("mask widths differ");
  return (bits_ & ~other.bits_) == 0;
}

std::vector<int> ModelMask::indices() const {
  std::vector<int> out;
  out.reserve(static_cast<std::size_t>(size()));
  for (std::uint64_t rest = bits_; rest != 0; rest &= rest - 1) {
    out.push_back(std::countr_zero(rest));
  }
  return out;
}

std::string ModelMask::to_string() const {
  std::string s = "{";
  bool first = true;
  for (int j : indices()) {
    if (!first) s += ',';
    s += std::to_string(j);
    first = false;
  }
  return s + "}";
}

int hamming_distance(const ModelMask& a, const ModelMask& b) {
  if (a.width() != b.width()) throw DimensionMismatch("mask widths differ");
  return std::popcount(a.bits() ^ b.bits());
}

}  // namespace snpvscs

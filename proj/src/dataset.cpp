#include "snpvscs/dataset.hpp"

#include <bit>
#include <cmath>

#include "snpvscs/errors.hpp"

namespace snpvscs {

void GenotypeDataset::validate() const {
  const auto rows = y.size();
  if (x.rows() != rows || (z.size() != 0 && z.rows() != rows)) {
    throw DimensionMismatch("phenotype, genotype and covariate row counts differ");
  }
  if (static_cast<int>(snp_names.size()) != p() || static_cast<int>(covariate_names.size()) != q()) {
    throw DimensionMismatch("column name count does not match matrix width");
  }
  for (Eigen::Index i = 0; i < rows; ++i) {
    if (y[i] != 0.0 && y[i] != 1.0) {
      throw DomainError("phenotype at row " + std::to_string(i + 1) + " is not 0/1");
    }
  }
  for (Eigen::Index j = 0; j < x.cols(); ++j) {
    for (Eigen::Index i = 0; i < rows; ++i) {
      const double v = x(i, j);
      if (v != 0.0 && v != 1.0 && v != 2.0) {
        throw InvalidGenotype("genotype code at row " + std::to_string(i + 1) + ", SNP " +
                              snp_names[static_cast<std::size_t>(j)] + " is not 0/1/2");
      }
    }
  }
  if (!z.allFinite()) throw MissingValue("covariates contain non-finite values");
  if (n() <= p() + q() + 1) {
    throw DomainError("need n > p + q + 1 (n=" + std::to_string(n()) + ", p=" + std::to_string(p()) +
                      ", q=" + std::to_string(q()) + ")");
  }
}

GenotypeDataset GenotypeDataset::subset(std::span<const int> rows) const {
  GenotypeDataset out;
  const auto m = static_cast<Eigen::Index>(rows.size());
  out.y.resize(m);
  out.x.resize(m, x.cols());
  out.z.resize(m, z.cols());
  for (Eigen::Index r = 0; r < m; ++r) {
    const auto i = rows[static_cast<std::size_t>(r)];
    out.y[r] = y[i];
    out.x.row(r) = x.row(i);
    if (z.cols() > 0) out.z.row(r) = z.row(i);
  }
  out.snp_names = snp_names;
  out.covariate_names = covariate_names;
  return out;
}

namespace {

struct Fnv1a {
  std::uint64_t state = 1469598103934665603ULL;
  void bytes(std::uint64_t v) {
    for (int b = 0; b < 8; ++b) {
      state ^= (v >> (8 * b)) & 0xffU;
      state *= 1099511628211ULL;
    }
  }
  void real(double v) { bytes(std::bit_cast<std::uint64_t>(v == 0.0 ? 0.0 : v)); }
};

}  // namespace

std::uint64_t GenotypeDataset::fingerprint() const {
  Fnv1a h;
  h.bytes(static_cast<std::uint64_t>(n()));
  h.bytes(static_cast<std::uint64_t>(p()));
  h.bytes(static_cast<std::uint64_t>(q()));
  for (Eigen::Index i = 0; i < y.size(); ++i) h.real(y[i]);
  for (Eigen::Index j = 0; j < x.cols(); ++j)
    for (Eigen::Index i = 0; i < x.rows(); ++i) h.real(x(i, j));
  for (Eigen::Index j = 0; j < z.cols(); ++j)
    for (Eigen::Index i = 0; i < z.rows(); ++i) h.real(z(i, j));
  return h.state;
}

GenotypeDataset make_dataset(Eigen::VectorXd y, Eigen::MatrixXd x, Eigen::MatrixXd z) {
  GenotypeDataset d;
  if (z.size() == 0) z.resize(y.size(), 0);
  d.y = std::move(y);
  d.x = std::move(x);
  d.z = std::move(z);
  for (int j = 0; j < d.p(); ++j) d.snp_names.push_back("snp" + std::to_string(j + 1));
  for (int j = 0; j < d.q(); ++j) d.covariate_names.push_back("cov" + std::to_string(j + 1));
  return d;
}

}  // namespace snpvscs

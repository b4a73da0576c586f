#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>

#include "snpvscs/dataset.hpp"
#include "snpvscs/model_space.hpp"

namespace snpvscs {

enum class MissingPolicy {
  reject_rows,  // drop incomplete rows and count them in GenotypeDataset::rows_rejected
  fail          // throw MissingValue on the first incomplete row
};

/// Layout of a dataset CSV: `id,phenotype,<covariate...>,<snp...>` with a
/// header row. The first `covariate_columns` columns after the phenotype are
/// covariates, the remainder are SNPs.
struct FormatConfig {
  int covariate_columns = 0;
  MissingPolicy missing = MissingPolicy::reject_rows;
};

/// Parses a dataset. SNP cells accept 0/1/2 or AA/Aa/aA/aa (A is the
/// reference allele). Empty, NA and "." cells count as missing. Throws
/// ParseError, InvalidGenotype or MissingValue; validates the result.
GenotypeDataset read_dataset(std::istream& in, const FormatConfig& config = {});
GenotypeDataset load_dataset(const std::filesystem::path& path, const FormatConfig& config = {});

/// Writes the CSV layout read_dataset expects, with numeric SNP codes and
/// covariates printed to 17 significant digits.
void write_dataset(std::ostream& out, const GenotypeDataset& data);

/// VSCS entries as CSV, preceded by a `#` metadata line. Doubles use 17
/// significant digits so read_vscs reproduces them exactly.
void write_vscs(std::ostream& out, const Vscs& vscs, std::uint64_t fingerprint);

struct LoadedVscs {
  Vscs vscs;
  std::uint64_t fingerprint = 0;
};

/// Reads write_vscs output. The restored full fit carries the mask and
/// log-likelihood only.
LoadedVscs read_vscs(std::istream& in);

/// Renders a 64-bit value as 16 lowercase hex digits.
std::string hex64(std::uint64_t v);

}  // namespace snpvscs

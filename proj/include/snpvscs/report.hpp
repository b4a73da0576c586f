#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "snpvscs/aggregate.hpp"
#include "snpvscs/importance.hpp"
#include "snpvscs/model_mask.hpp"

namespace snpvscs {

inline constexpr std::string_view kToolVersion = "0.1.0";

struct DatasetFingerprint {
  int n = 0;
  int p = 0;
  int q = 0;
  std::uint64_t hash = 0;
  std::size_t rows_rejected = 0;
};

struct AggregateSelection {
  AggregationResult result;
  // LRT of the selected model against the full model.
  double lrt_p_value = 1.0;
};

struct ForwardSelection {
  ModelMask mask;
  double lrt_p_value = 1.0;
};

/// Everything computed for one confidence level.
struct LevelReport {
  double alpha = 0.0;
  std::size_t vscs_size = 0;
  std::size_t lbm_size = 0;
  std::vector<ModelMask> lbms;
  LbmSummary summary;
  std::optional<IiReport> importance;
  std::optional<AggregateSelection> aic_aggregate;
  std::optional<AggregateSelection> bic_aggregate;
};

/// Serializable result of an analysis. Sections a command did not compute are
/// left empty and written as null.
struct AnalysisReport {
  std::string tool_version{kToolVersion};
  std::uint64_t seed = 0;
  DatasetFingerprint dataset;
  std::vector<std::string> snp_names;
  std::vector<std::string> covariate_names;
  std::vector<LevelReport> levels;
  std::optional<ForwardSelection> forward_aic;
  std::optional<ForwardSelection> forward_bic;
  std::optional<std::vector<std::vector<double>>> mutual_information;

  /// Level whose alpha equals the argument; nullptr when absent.
  const LevelReport* level(double alpha) const;
};

/// Pretty-printed JSON with round-trip precision for every double.
std::string to_json_string(const AnalysisReport& report);
/// Throws ParseError on malformed JSON or missing fields.
AnalysisReport parse_report(std::string_view json);

/// Directed inclusion-importance graph in Graphviz DOT.
///
/// One node per SNP with positive II, sized by its II. An edge k -> j carries
/// II(j | k) and is kept when that value is defined and at least `threshold`.
/// Nodes and edges are emitted in index order.
std::string export_ii_graph(const IiReport& importance, const std::vector<std::string>& snp_names,
                            double threshold = 0.7);

/// Graph for the level `alpha` of the report. Throws DomainError when that
/// level has no importance section.
std::string export_ii_graph(const AnalysisReport& report, double alpha, double threshold = 0.7);

}  // namespace snpvscs

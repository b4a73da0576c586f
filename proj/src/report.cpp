#include "snpvscs/report.hpp"

#include <cstdio>
#include <sstream>

#include "json.hpp"
#include "snpvscs/errors.hpp"
#include "snpvscs/io.hpp"

namespace snpvscs {

using nlohmann::json;

namespace {

json mask_json(const ModelMask& m) { return m.indices(); }

ModelMask mask_from(const json& j, int p) { return ModelMask::from_indices(p, j.get<std::vector<int>>()); }

template <typename T>
json optional_json(const std::optional<T>& v) {
  return v ? json(*v) : json(nullptr);
}

json matrix_optional(const std::vector<std::vector<std::optional<double>>>& m) {
  json out = json::array();
  for (const auto& row : m) {
    json r = json::array();
    for (const auto& v : row) r.push_back(optional_json(v));
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<std::vector<std::optional<double>>> matrix_optional_from(const json& j) {
  std::vector<std::vector<std::optional<double>>> out;
  for (const auto& row : j) {
    auto& r = out.emplace_back();
    for (const auto& v : row) r.push_back(v.is_null() ? std::nullopt : std::optional<double>(v.get<double>()));
  }
  return out;
}

json aggregate_json(const AggregateSelection& s) {
  const auto& r = s.result;
  return {{"criterion", std::string(to_string(r.criterion))},
          {"snps", mask_json(r.selected)},
          {"k_tilde", r.k_tilde},
          {"rank_order", r.rank_order},
          {"criterion_path", r.criterion_path},
          {"in_vscs", r.in_vscs},
          {"lrt_p_value", s.lrt_p_value}};
}

AggregateSelection aggregate_from(const json& j, int p) {
  AggregateSelection s;
  auto& r = s.result;
  r.criterion = j.at("criterion").get<std::string>() == "BIC" ? Criterion::bic : Criterion::aic;
  r.selected = mask_from(j.at("snps"), p);
  r.k_tilde = j.at("k_tilde").get<int>();
  r.rank_order = j.at("rank_order").get<std::vector<int>>();
  r.criterion_path = j.at("criterion_path").get<std::vector<double>>();
  r.in_vscs = j.at("in_vscs").get<bool>();
  s.lrt_p_value = j.at("lrt_p_value").get<double>();
  return s;
}

json importance_json(const IiReport& r) {
  return {{"alpha", r.alpha},
          {"marginal", r.marginal},
          {"joint", r.joint},
          {"conditional", matrix_optional(r.conditional)},
          {"standardized_co", matrix_optional(r.standardized_co)}};
}

IiReport importance_from(const json& j) {
  IiReport r;
  r.alpha = j.at("alpha").get<double>();
  r.marginal = j.at("marginal").get<std::vector<double>>();
  r.joint = j.at("joint").get<std::vector<std::vector<double>>>();
  r.conditional = matrix_optional_from(j.at("conditional"));
  r.standardized_co = matrix_optional_from(j.at("standardized_co"));
  return r;
}

json forward_json(const std::optional<ForwardSelection>& f) {
  if (!f) return nullptr;
  return {{"snps", mask_json(f->mask)}, {"lrt_p_value", f->lrt_p_value}};
}

std::optional<ForwardSelection> forward_from(const json& j, int p) {
  if (j.is_null()) return std::nullopt;
  return ForwardSelection{mask_from(j.at("snps"), p), j.at("lrt_p_value").get<double>()};
}

}  // namespace

const LevelReport* AnalysisReport::level(double alpha) const {
  for (const auto& l : levels) {
    if (l.alpha == alpha) return &l;
  }
  return nullptr;
}

std::string to_json_string(const AnalysisReport& report) {
  json levels = json::array();
  for (const auto& l : report.levels) {
    json lbms = json::array();
    for (const auto& m : l.lbms) lbms.push_back(mask_json(m));
    const auto& f = l.summary.size_five_number;
    levels.push_back({{"alpha", l.alpha},
                      {"vscs_size", l.vscs_size},
                      {"lbm_size", l.lbm_size},
                      {"lbms", std::move(lbms)},
                      {"summary",
                       {{"lbm_predictors_min", f.min},
                        {"lbm_predictors_q1", f.q1},
                        {"lbm_predictors_median", f.median},
                        {"lbm_predictors_q3", f.q3},
                        {"lbm_predictors_max", f.max},
                        {"ahd", l.summary.ahd}}},
                      {"importance", l.importance ? importance_json(*l.importance) : json(nullptr)},
                      {"aic_aggregate", l.aic_aggregate ? aggregate_json(*l.aic_aggregate) : json(nullptr)},
                      {"bic_aggregate", l.bic_aggregate ? aggregate_json(*l.bic_aggregate) : json(nullptr)}});
  }
  const json j = {
      {"tool", "snpvscs"},
      {"tool_version", report.tool_version},
      {"seed", report.seed},
      {"dataset",
       {{"n", report.dataset.n},
        {"p", report.dataset.p},
        {"q", report.dataset.q},
        {"fingerprint", hex64(report.dataset.hash)},
        {"rows_rejected", report.dataset.rows_rejected},
        {"snp_names", report.snp_names},
        {"covariate_names", report.covariate_names}}},
      {"levels", std::move(levels)},
      {"forward_aic", forward_json(report.forward_aic)},
      {"forward_bic", forward_json(report.forward_bic)},
      {"mutual_information", optional_json(report.mutual_information)}};
  return j.dump(2) + "\n";
}

AnalysisReport parse_report(std::string_view text) {
  try {
    const json j = json::parse(text);
    AnalysisReport r;
    r.tool_version = j.at("tool_version").get<std::string>();
    r.seed = j.at("seed").get<std::uint64_t>();
    const auto& d = j.at("dataset");
    r.dataset.n = d.at("n").get<int>();
    r.dataset.p = d.at("p").get<int>();
    r.dataset.q = d.at("q").get<int>();
    r.dataset.hash = std::stoull(d.at("fingerprint").get<std::string>(), nullptr, 16);
    r.dataset.rows_rejected = d.at("rows_rejected").get<std::size_t>();
    r.snp_names = d.at("snp_names").get<std::vector<std::string>>();
    r.covariate_names = d.at("covariate_names").get<std::vector<std::string>>();
    const int p = r.dataset.p;
    for (const auto& lj : j.at("levels")) {
      LevelReport l;
      l.alpha = lj.at("alpha").get<double>();
      l.vscs_size = lj.at("vscs_size").get<std::size_t>();
      l.lbm_size = lj.at("lbm_size").get<std::size_t>();
      for (const auto& m : lj.at("lbms")) l.lbms.push_back(mask_from(m, p));
      const auto& s = lj.at("summary");
      l.summary.vscs_size = l.vscs_size;
      l.summary.lbm_size = l.lbm_size;
      l.summary.size_five_number = {s.at("lbm_predictors_min").get<double>(), s.at("lbm_predictors_q1").get<double>(),
                                    s.at("lbm_predictors_median").get<double>(),
                                    s.at("lbm_predictors_q3").get<double>(), s.at("lbm_predictors_max").get<double>()};
      l.summary.ahd = s.at("ahd").get<double>();
      if (!lj.at("importance").is_null()) l.importance = importance_from(lj.at("importance"));
      if (!lj.at("aic_aggregate").is_null()) l.aic_aggregate = aggregate_from(lj.at("aic_aggregate"), p);
      if (!lj.at("bic_aggregate").is_null()) l.bic_aggregate = aggregate_from(lj.at("bic_aggregate"), p);
      r.levels.push_back(std::move(l));
    }
    r.forward_aic = forward_from(j.at("forward_aic"), p);
    r.forward_bic = forward_from(j.at("forward_bic"), p);
    if (!j.at("mutual_information").is_null()) {
      r.mutual_information = j.at("mutual_information").get<std::vector<std::vector<double>>>();
    }
    return r;
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed report: ") + e.what(), 1, 1);
  }
}

namespace {

std::string quoted(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4f", v);
  return buf;
}

}  // namespace

std::string export_ii_graph(const IiReport& importance, const std::vector<std::string>& snp_names,
                            double threshold) {
  const auto p = importance.marginal.size();
  if (snp_names.size() != p) throw DimensionMismatch("SNP name count differs from importance width");
  std::ostringstream out;
  out << "digraph inclusion_importance {\n";
  out << "  graph [comment=" << quoted("alpha=" + num(importance.alpha) + " threshold=" + num(threshold)) << "];\n";
  out << "  node [shape=circle, fixedsize=true];\n";
  for (std::size_t j = 0; j < p; ++j) {
    const double ii = importance.marginal[j];
    if (ii <= 0.0) continue;
    out << "  " << quoted(snp_names[j]) << " [width=" << num(1.5 * ii) << ", label=" << quoted(snp_names[j] + "\\n" + num(ii)) << "];\n";
  }
  for (std::size_t k = 0; k < p; ++k) {
    for (std::size_t j = 0; j < p; ++j) {
      if (j == k) continue;
      const auto& cond = importance.conditional[j][k];
      if (!cond || *cond < threshold) continue;
      out << "  " << quoted(snp_names[k]) << " -> " << quoted(snp_names[j]) << " [weight=" << num(*cond)
          << ", penwidth=" << num(4.0 * *cond) << "];\n";
    }
  }
  out << "}\n";
  return out.str();
}

std::string export_ii_graph(const AnalysisReport& report, double alpha, double threshold) {
  const LevelReport* level = report.level(alpha);
  if (level == nullptr || !level->importance) {
    throw DomainError("report has no importance statistics at alpha " + std::to_string(alpha));
  }
  return export_ii_graph(*level->importance, report.snp_names, threshold);
}

}  // namespace snpvscs

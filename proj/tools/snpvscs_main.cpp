// Command-line front end: simulation, screening, ranking, aggregation, graph
// export, cross-validated ROC and the Monte Carlo harnesses.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "snpvscs/aggregate.hpp"
#include "snpvscs/errors.hpp"
#include "snpvscs/evaluate.hpp"
#include "snpvscs/io.hpp"
#include "snpvscs/pipeline.hpp"
#include "snpvscs/report.hpp"
#include "snpvscs/simulate.hpp"

namespace {

using namespace snpvscs;

int default_threads() {
  if (const char* env = std::getenv("SNPVSCS_THREADS")) {
    const int t = std::atoi(env);
    if (t > 0) return t;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

std::string g12(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

// Writes to --out when given, stdout otherwise.
void emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path);
  out << text;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct Common {
  std::string data;
  int covariates = 0;
  std::vector<double> alphas;
  std::uint64_t seed = 1;
  int threads = default_threads();
  std::string format;
  std::string out;
};

// Each subcommand has its own default format; resolved after parsing.
std::map<const CLI::App*, std::string>& format_defaults() {
  static std::map<const CLI::App*, std::string> defaults;
  return defaults;
}

void add_data_options(CLI::App* cmd, Common& c, bool required = true) {
  auto* opt = cmd->add_option("--data", c.data, "Dataset CSV (id,phenotype,<covariates>,<snps>)");
  if (required) opt->required();
  cmd->add_option("--covariates", c.covariates, "Number of covariate columns after the phenotype")
      ->check(CLI::NonNegativeNumber);
}

void add_output_options(CLI::App* cmd, Common& c, const std::string& default_format) {
  format_defaults()[cmd] = default_format;
  cmd->add_option("--format", c.format, "Output format (default: " + default_format + ")")->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("--out", c.out, "Output path (default: stdout)");
}

void add_alpha_option(CLI::App* cmd, Common& c) {
  cmd->add_option("--alpha", c.alphas, "Significance level (repeatable)")->check(CLI::Range(0.0, 1.0));
}

void add_run_options(CLI::App* cmd, Common& c) {
  cmd->add_option("--seed", c.seed, "Random seed");
  cmd->add_option("--threads", c.threads, "Worker threads (default: $SNPVSCS_THREADS or all cores)")
      ->check(CLI::PositiveNumber);
}

std::vector<double> alphas_or_default(const Common& c) {
  std::vector<double> a = c.alphas.empty() ? std::vector<double>{0.05} : c.alphas;
  for (double v : a) {
    if (!(v > 0.0 && v < 1.0)) throw DomainError("alpha must lie in (0, 1)");
  }
  return a;
}

GenotypeDataset load(const Common& c) {
  FormatConfig fc;
  fc.covariate_columns = c.covariates;
  return load_dataset(c.data, fc);
}

AnalysisOptions analysis_options(const Common& c, WarmStartPolicy warm) {
  AnalysisOptions o;
  o.alphas = alphas_or_default(c);
  o.threads = c.threads;
  o.seed = c.seed;
  o.warm_start = warm;
  return o;
}

std::string join_names(const ModelMask& m, const std::vector<std::string>& names) {
  std::string s;
  for (int j : m.indices()) {
    if (!s.empty()) s += ';';
    s += names[static_cast<std::size_t>(j)];
  }
  return s;
}

std::string vscs_csv(const AnalysisReport& r) {
  std::ostringstream out;
  out << "alpha,vscs_size,lbm_size,lbm_predictors_min,lbm_predictors_q1,lbm_predictors_median,"
         "lbm_predictors_q3,lbm_predictors_max,ahd\n";
  for (const auto& l : r.levels) {
    const auto& f = l.summary.size_five_number;
    out << g12(l.alpha) << ',' << l.vscs_size << ',' << l.lbm_size << ',' << g12(f.min) << ',' << g12(f.q1) << ','
        << g12(f.median) << ',' << g12(f.q3) << ',' << g12(f.max) << ',' << g12(l.summary.ahd) << '\n';
  }
  return out.str();
}

std::string rank_csv(const AnalysisReport& r) {
  std::ostringstream out;
  out << "statistic,alpha,snp_j,snp_k,value\n";
  const auto& names = r.snp_names;
  const auto cell = [](const std::optional<double>& v) { return v ? g12(*v) : std::string("NA"); };
  for (const auto& l : r.levels) {
    if (!l.importance) continue;
    const auto& ii = *l.importance;
    const auto a = g12(l.alpha);
    for (std::size_t j = 0; j < names.size(); ++j) out << "marginal," << a << ',' << names[j] << ",," << g12(ii.marginal[j]) << '\n';
    for (std::size_t j = 0; j < names.size(); ++j) {
      for (std::size_t k = 0; k < names.size(); ++k) {
        out << "joint," << a << ',' << names[j] << ',' << names[k] << ',' << g12(ii.joint[j][k]) << '\n';
        out << "conditional," << a << ',' << names[j] << ',' << names[k] << ',' << cell(ii.conditional[j][k]) << '\n';
        out << "standardized_co," << a << ',' << names[j] << ',' << names[k] << ',' << cell(ii.standardized_co[j][k])
            << '\n';
      }
    }
  }
  if (r.mutual_information) {
    for (std::size_t j = 0; j < names.size(); ++j)
      for (std::size_t k = 0; k < names.size(); ++k)
        out << "mutual_information,NA," << names[j] << ',' << names[k] << ',' << g12((*r.mutual_information)[j][k])
            << '\n';
  }
  return out.str();
}

std::string aggregate_csv(const AnalysisReport& r) {
  std::ostringstream out;
  out << "method,alpha,k,snps,in_vscs,lrt_p_value\n";
  for (const auto& l : r.levels) {
    for (const auto* s : {&l.aic_aggregate, &l.bic_aggregate}) {
      if (!*s) continue;
      const auto& a = (*s)->result;
      out << to_string(a.criterion) << "-LBM," << g12(l.alpha) << ',' << a.k_tilde << ','
          << join_names(a.selected, r.snp_names) << ',' << (a.in_vscs ? 1 : 0) << ',' << g12((*s)->lrt_p_value)
          << '\n';
    }
  }
  for (const auto& [name, f] : {std::pair{"F-AIC", &r.forward_aic}, std::pair{"F-BIC", &r.forward_bic}}) {
    if (!*f) continue;
    out << name << ",NA," << (*f)->mask.size() << ',' << join_names((*f)->mask, r.snp_names) << ",NA,"
        << g12((*f)->lrt_p_value) << '\n';
  }
  return out.str();
}

std::string render_report(const AnalysisReport& r, const std::string& format, std::string (*csv)(const AnalysisReport&)) {
  return format == "csv" ? csv(r) : to_json_string(r);
}

WarmStartPolicy parse_warm(const std::string& s) {
  if (s == "none") return WarmStartPolicy::none;
  if (s == "from_parent") return WarmStartPolicy::from_parent;
  return WarmStartPolicy::from_full;
}

// "label=snpA,snpB" (names, or 0-based indices); an empty list is the null model.
std::pair<std::string, ModelMask> parse_mask_spec(const std::string& spec, const GenotypeDataset& data) {
  const auto eq = spec.find('=');
  if (eq == std::string::npos) throw InputError("mask must look like label=snp1,snp2: " + spec);
  const std::string label = spec.substr(0, eq);
  ModelMask mask = ModelMask::empty(data.p());
  std::stringstream items(spec.substr(eq + 1));
  std::string item;
  while (std::getline(items, item, ',')) {
    if (item.empty()) continue;
    int index = -1;
    for (int j = 0; j < data.p(); ++j) {
      if (data.snp_names[static_cast<std::size_t>(j)] == item) index = j;
    }
    if (index < 0 && item.find_first_not_of("0123456789") == std::string::npos) index = std::stoi(item);
    if (index < 0 || index >= data.p()) throw InputError("unknown SNP '" + item + "' in mask " + label);
    mask = mask.with(index);
  }
  return {label, mask};
}

std::string mc1_json(const SimSpec& spec, const std::vector<McResult>& results) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& m : results) {
    const std::pair<const char*, std::pair<double, double>> stats[] = {
        {"coverage", {m.coverage, m.se_coverage}},
        {"vscs_size", {m.mean_vscs_size, m.se_vscs_size}},
        {"lbm_size", {m.mean_lbm_size, m.se_lbm_size}},
        {"avg_lbm_predictors", {m.mean_avg_lbm_predictors, m.se_avg_lbm_predictors}},
        {"lbm_hamming_to_truth", {m.mean_lbm_hamming, m.se_lbm_hamming}},
        {"vscs_hamming_to_truth", {m.mean_vscs_hamming, m.se_vscs_hamming}}};
    for (const auto& [name, v] : stats) {
      rows.push_back({{"model_id", spec.model_id}, {"n", spec.n}, {"p", spec.p}, {"rho", spec.rho},
                      {"alpha", m.alpha}, {"statistic", name}, {"mean", v.first}, {"mc_se", v.second}});
    }
  }
  return rows.dump(2) + "\n";
}

std::string mc2_json(const SimSpec& spec, const Mc2Result& r) {
  nlohmann::json rows = nlohmann::json::array();
  auto row = [&](nlohmann::json alpha, const char* name, double mean, double se) {
    rows.push_back({{"model_id", spec.model_id}, {"n", spec.n}, {"p", spec.p}, {"rho", spec.rho},
                    {"alpha", alpha}, {"statistic", name}, {"mean", mean}, {"mc_se", se}});
  };
  for (std::size_t a = 0; a < r.alphas.size(); ++a) {
    row(r.alphas[a], "hamming_aic_lbm", r.mean_aic_lbm[a], r.se_aic_lbm[a]);
    row(r.alphas[a], "hamming_bic_lbm", r.mean_bic_lbm[a], r.se_bic_lbm[a]);
  }
  row(nullptr, "hamming_forward_aic", r.mean_forward_aic, r.se_forward_aic);
  row(nullptr, "hamming_forward_bic", r.mean_forward_bic, r.se_forward_bic);
  return rows.dump(2) + "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Variable selection confidence sets for SNP logistic regression"};
  app.set_version_flag("--version", std::string(kToolVersion));
  app.require_subcommand(1);

  Common c;
  std::string warm = "from_full";

  // simulate
  SimSpec sim;
  std::uint64_t stream = 0;
  std::string preset = "model";
  auto* simulate = app.add_subcommand("simulate", "Write a simulated dataset as CSV");
  simulate->add_option("--model", sim.model_id, "Generating model (1-4)")->check(CLI::Range(1, 4));
  simulate->add_option("--n", sim.n, "Subjects");
  simulate->add_option("--p", sim.p, "SNP predictors");
  simulate->add_option("--rho", sim.rho, "Latent correlation");
  simulate->add_option("--stream", stream, "Replicate stream index");
  simulate->add_option("--preset", preset, "'model' (default) or 'standin' for the 20-SNP case-control stand-in")
      ->check(CLI::IsMember({"model", "standin"}));
  simulate->add_option("--seed", c.seed, "Random seed");
  simulate->add_option("--out", c.out, "Output path (default: stdout)");

  // vscs
  std::string vscs_out;
  auto* vscs = app.add_subcommand("vscs", "Screen all submodels and report VSCS/LBM statistics");
  add_data_options(vscs, c);
  add_alpha_option(vscs, c);
  add_run_options(vscs, c);
  add_output_options(vscs, c, "json");
  vscs->add_option("--vscs-out", vscs_out, "Also write the VSCS at the smallest alpha as CSV");
  vscs->add_option("--warm-start", warm, "IRLS warm start policy")
      ->check(CLI::IsMember({"none", "from_full", "from_parent"}));

  // rank
  std::string report_in, vscs_in;
  auto* rank = app.add_subcommand("rank", "Inclusion importance statistics and mutual information");
  add_data_options(rank, c);
  add_alpha_option(rank, c);
  add_run_options(rank, c);
  add_output_options(rank, c, "json");
  rank->add_option("--report", report_in, "Reuse the LBMs of a report from 'vscs'");

  // aggregate
  auto* aggregate = app.add_subcommand("aggregate", "AIC/BIC LBM aggregation and forward-selection baselines");
  add_data_options(aggregate, c);
  add_alpha_option(aggregate, c);
  add_run_options(aggregate, c);
  add_output_options(aggregate, c, "json");
  aggregate->add_option("--report", report_in, "Reuse a report from 'vscs' or 'rank'");
  aggregate->add_option("--vscs", vscs_in, "VSCS CSV written by 'vscs --vscs-out' (required with --report)");

  // graph
  double threshold = 0.7;
  double graph_alpha = -1.0;
  auto* graph = app.add_subcommand("graph", "Conditional inclusion-importance graph in DOT");
  add_data_options(graph, c, false);
  add_run_options(graph, c);
  graph->add_option("--report", report_in, "Report with importance statistics");
  graph->add_option("--alpha", graph_alpha, "Level to draw (default: 0.05 if present, else the first level)");
  graph->add_option("--threshold", threshold, "Minimum conditional II for an edge")->check(CLI::Range(0.0, 1.0));
  graph->add_option("--out", c.out, "Output path (default: stdout)");

  // roc
  std::vector<std::string> mask_specs;
  bool include_full = false;
  int folds = 5;
  double roc_alpha = 0.05;
  std::string auc_out;
  auto* roc = app.add_subcommand("roc", "Cross-validated ROC curves for fixed models");
  add_data_options(roc, c);
  add_run_options(roc, c);
  add_output_options(roc, c, "csv");
  roc->add_option("--mask", mask_specs, "Model as label=snpA,snpB (repeatable)");
  roc->add_option("--report", report_in, "Add the aggregated and forward-selected models of a report");
  roc->add_option("--report-alpha", roc_alpha, "Level of the aggregated models taken from --report");
  roc->add_flag("--full", include_full, "Include the full model");
  roc->add_option("--folds", folds, "Cross-validation folds");
  roc->add_option("--auc-out", auc_out, "AUC summary path (default: stderr)");

  // mc1 / mc2
  int replicates = 500;
  std::string records_out;
  auto* mc1 = app.add_subcommand("mc1", "Coverage and cardinality Monte Carlo experiment");
  auto* mc2 = app.add_subcommand("mc2", "Aggregation Hamming-distance Monte Carlo experiment");
  for (auto* mc : {mc1, mc2}) {
    mc->add_option("--model", sim.model_id, "Generating model (1-4)")->check(CLI::Range(1, 4));
    mc->add_option("--n", sim.n, "Subjects");
    mc->add_option("--p", sim.p, "SNP predictors");
    mc->add_option("--rho", sim.rho, "Latent correlation");
    mc->add_option("--replicates", replicates, "Monte Carlo replicates")->check(CLI::PositiveNumber);
    mc->add_option("--records", records_out, "Per-replicate records CSV");
    add_alpha_option(mc, c);
    add_run_options(mc, c);
    add_output_options(mc, c, "csv");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  if (c.format.empty()) {
    for (const auto& [cmd, fmt] : format_defaults())
      if (cmd->parsed()) c.format = fmt;
  }

  try {
    if (simulate->parsed()) {
      sim.seed = c.seed;
      std::ostringstream out;
      write_dataset(out, preset == "standin" ? simulate_standin(c.seed) : simulate_dataset(sim, stream));
      emit(c.out, out.str());
    } else if (vscs->parsed()) {
      const auto data = load(c);
      const auto options = analysis_options(c, parse_warm(warm));
      const Vscs widest = screen(data, options);
      if (!vscs_out.empty()) {
        std::ostringstream v;
        write_vscs(v, widest, data.fingerprint());
        emit(vscs_out, v.str());
      }
      emit(c.out, render_report(build_vscs_report(data, widest, options), c.format, vscs_csv));
    } else if (rank->parsed()) {
      const auto data = load(c);
      AnalysisReport report;
      if (!report_in.empty()) {
        report = parse_report(read_file(report_in));
        check_fingerprint(report, data);
      } else {
        const auto options = analysis_options(c, WarmStartPolicy::from_full);
        report = build_vscs_report(data, screen(data, options), options);
      }
      add_importance(report, &data);
      emit(c.out, render_report(report, c.format, rank_csv));
    } else if (aggregate->parsed()) {
      const auto data = load(c);
      AnalysisReport report;
      Vscs widest;
      if (!report_in.empty()) {
        if (vscs_in.empty()) throw InputError("--report needs the matching --vscs file");
        report = parse_report(read_file(report_in));
        std::istringstream vin(read_file(vscs_in));
        auto loaded = read_vscs(vin);
        if (loaded.fingerprint != data.fingerprint()) throw InputError("VSCS file was produced from other data");
        widest = std::move(loaded.vscs);
      } else {
        const auto options = analysis_options(c, WarmStartPolicy::from_full);
        widest = screen(data, options);
        report = build_vscs_report(data, widest, options);
      }
      add_aggregation(report, data, widest);
      emit(c.out, render_report(report, c.format, aggregate_csv));
    } else if (graph->parsed()) {
      AnalysisReport report;
      if (!report_in.empty()) {
        report = parse_report(read_file(report_in));
      } else if (!c.data.empty()) {
        const auto data = load(c);
        AnalysisOptions options = analysis_options(c, WarmStartPolicy::from_full);
        if (graph_alpha > 0.0) options.alphas = {graph_alpha};
        report = build_vscs_report(data, screen(data, options), options);
      } else {
        throw InputError("graph needs --report or --data");
      }
      if (!report.levels.empty() && !report.levels.front().importance) add_importance(report, nullptr);
      double alpha = graph_alpha;
      if (alpha <= 0.0) alpha = report.level(0.05) != nullptr || report.levels.empty() ? 0.05 : report.levels.front().alpha;
      emit(c.out, export_ii_graph(report, alpha, threshold));
    } else if (roc->parsed()) {
      const auto data = load(c);
      std::vector<std::pair<std::string, ModelMask>> models;
      for (const auto& s : mask_specs) models.push_back(parse_mask_spec(s, data));
      if (!report_in.empty()) {
        const auto report = parse_report(read_file(report_in));
        check_fingerprint(report, data);
        if (const auto* level = report.level(roc_alpha)) {
          if (level->aic_aggregate) models.emplace_back("AIC-LBM", level->aic_aggregate->result.selected);
          if (level->bic_aggregate) models.emplace_back("BIC-LBM", level->bic_aggregate->result.selected);
        }
        if (report.forward_aic) models.emplace_back("F-AIC", report.forward_aic->mask);
        if (report.forward_bic) models.emplace_back("F-BIC", report.forward_bic->mask);
      }
      if (include_full) models.emplace_back("full", ModelMask::full(data.p()));
      if (models.empty()) throw InputError("roc needs at least one --mask, --report or --full");

      std::ostringstream points, aucs;
      nlohmann::json js = nlohmann::json::array();
      points << "model,threshold,fpr,tpr\n";
      aucs << "model,auc\n";
      for (const auto& [label, mask] : models) {
        const RocCurve curve = cv_roc(data, mask, folds, FitConfig{}, c.seed);
        aucs << label << ',' << g12(curve.auc) << '\n';
        nlohmann::json pts = nlohmann::json::array();
        for (std::size_t i = 0; i < curve.fpr.size(); ++i) {
          points << label << ',' << (i == 0 ? std::string("inf") : g12(curve.thresholds[i])) << ','
                 << g12(curve.fpr[i]) << ',' << g12(curve.tpr[i]) << '\n';
          pts.push_back({{"threshold", i == 0 ? nlohmann::json(nullptr) : nlohmann::json(curve.thresholds[i])},
                         {"fpr", curve.fpr[i]},
                         {"tpr", curve.tpr[i]}});
        }
        js.push_back({{"model", label}, {"snps", join_names(mask, data.snp_names)}, {"auc", curve.auc},
                      {"points", std::move(pts)}});
      }
      emit(c.out, c.format == "csv" ? points.str() : js.dump(2) + "\n");
      if (auc_out.empty()) {
        std::cerr << aucs.str();
      } else {
        emit(auc_out, aucs.str());
      }
    } else if (mc1->parsed() || mc2->parsed()) {
      sim.seed = c.seed;
      const auto alphas = alphas_or_default(c);
      std::ostringstream table, records;
      if (mc1->parsed()) {
        const auto results = run_mc_experiment1(sim, alphas, replicates, c.threads);
        if (c.format == "csv") write_mc1_csv(table, sim, results);
        else table << mc1_json(sim, results);
        write_mc1_records_csv(records, results);
      } else {
        const auto result = run_mc_experiment2(sim, alphas, replicates, c.threads);
        if (c.format == "csv") write_mc2_csv(table, sim, result);
        else table << mc2_json(sim, result);
        write_mc2_records_csv(records, result);
      }
      emit(c.out, table.str());
      if (!records_out.empty()) emit(records_out, records.str());
    }
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return 3;
  }
  return 0;
}

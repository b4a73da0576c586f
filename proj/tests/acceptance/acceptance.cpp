// End-to-end acceptance checks. Each criterion prints one PASS/FAIL line;
// `--criterion N` runs a single one. The exit status is non-zero when any
// selected criterion fails.

#include <sys/wait.h>

#include <boost/math/distributions/students_t.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "../dot_grammar.hpp"
#include "../oracles.hpp"
#include "snpvscs/aggregate.hpp"
#include "snpvscs/distributions.hpp"
#include "snpvscs/evaluate.hpp"
#include "snpvscs/importance.hpp"
#include "snpvscs/model_space.hpp"
#include "snpvscs/random.hpp"
#include "snpvscs/report.hpp"
#include "snpvscs/simulate.hpp"

namespace fs = std::filesystem;
using namespace snpvscs;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

// Collects failed sub-checks; the first few are reported.
struct Checks {
  int failures = 0;
  std::ostringstream notes;
  void require(bool ok, const std::string& what) {
    if (ok) return;
    if (failures < 5) notes << (failures ? "; " : "") << what;
    ++failures;
  }
};

std::string fmt(double v, int digits = 4) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int run(const std::string& cmd) {
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

fs::path workdir(const std::string& name) {
  fs::path dir = fs::path(SNPVSCS_ACCEPTANCE_DIR) / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

SimSpec model1(int n, int p, std::uint64_t seed) {
  SimSpec spec;
  spec.model_id = 1;
  spec.n = n;
  spec.p = p;
  spec.rho = 0.0;
  spec.seed = seed;
  return spec;
}

// Table 1 cell shared by criteria 1 and 2.
const std::vector<McResult>& table1_runs() {
  static const std::vector<McResult> results = [] {
    const std::vector<double> alphas{0.10, 0.05, 0.01};
    return run_mc_experiment1(model1(200, 8, 1), alphas, 500, 1);
  }();
  return results;
}

Outcome coverage() {
  Outcome o;
  for (const auto& r : table1_runs()) {
    const double bound = 1.0 - r.alpha - 0.04;
    o.detail += "alpha=" + fmt(r.alpha) + " coverage=" + fmt(r.coverage) + " (>= " + fmt(bound) + ") ";
    o.pass = o.pass && r.coverage >= bound;
  }
  return o;
}

Outcome cardinality() {
  Outcome o;
  const auto& runs = table1_runs();  // alpha 0.10, 0.05, 0.01
  for (std::size_t i = 1; i < runs.size(); ++i) o.pass = o.pass && runs[i].mean_vscs_size > runs[i - 1].mean_vscs_size;
  for (const auto& r : runs) {
    o.detail += "alpha=" + fmt(r.alpha) + " |M|=" + fmt(r.mean_vscs_size) + " |B|=" + fmt(r.mean_lbm_size) + " ";
    o.pass = o.pass && r.mean_lbm_size <= 0.10 * 256.0;
  }
  // Paper magnitude at alpha = 0.05: 15.9, within +-50%.
  const double m05 = runs[1].mean_vscs_size;
  o.pass = o.pass && m05 >= 0.5 * 15.9 && m05 <= 1.5 * 15.9;
  o.detail += "(|M| at 0.05 vs 15.9 +-50%)";
  return o;
}

Outcome aggregation_dominance() {
  const std::vector<double> alphas{0.05};
  const auto r = run_mc_experiment2(model1(200, 12, 1), alphas, 200, 1);
  std::vector<double> diff;
  for (const auto& rec : r.records) diff.push_back(rec.forward_aic - rec.aic_lbm[0]);
  const double n = static_cast<double>(diff.size());
  const double mean = std::accumulate(diff.begin(), diff.end(), 0.0) / n;
  double ss = 0.0;
  for (double d : diff) ss += (d - mean) * (d - mean);
  const double se = std::sqrt(ss / (n - 1.0) / n);
  const double t = se > 0.0 ? mean / se : (mean > 0.0 ? INFINITY : 0.0);
  const boost::math::students_t dist(n - 1.0);
  const double p_value = std::isinf(t) ? 0.0 : boost::math::cdf(boost::math::complement(dist, t));
  Outcome o;
  o.pass = r.mean_aic_lbm[0] < r.mean_forward_aic && p_value < 0.01;
  o.detail = "AIC-LBM=" + fmt(r.mean_aic_lbm[0]) + " F-AIC=" + fmt(r.mean_forward_aic) + " paired t=" + fmt(t) +
             " one-sided p=" + fmt(p_value, 3);
  return o;
}

Outcome exactness() {
  Checks c;
  // VSCS nesting in alpha, full-model membership, LBM antichain and cover.
  for (std::uint64_t rep = 0; rep < 10; ++rep) {
    const auto data = simulate_dataset(model1(100, 8, 300), rep);
    std::vector<Vscs> sets;
    for (double a : {0.01, 0.05, 0.10}) {
      ScreeningConfig cfg;
      cfg.alpha = a;
      sets.push_back(enumerate_vscs(data, cfg));
    }
    for (std::size_t i = 0; i < sets.size(); ++i) {
      c.require(sets[i].contains(ModelMask::full(8)), "full model missing");
      const LbmSet lbms = extract_lbms(sets[i]);
      c.require(is_antichain(lbms.masks), "LBM set is not an antichain");
      for (const auto& e : sets[i].entries()) {
        bool covered = false;
        for (const auto& l : lbms.masks) covered = covered || l.is_subset_of(e.mask);
        c.require(covered, "VSCS member without an LBM below it");
      }
      if (i > 0) {
        for (const auto& e : sets[i].entries()) c.require(sets[i - 1].contains(e.mask), "alpha nesting violated");
      }
    }
  }
  // LBM dynamic program against the pairwise brute force.
  StreamRng rng(4, 4);
  for (int instance = 0; instance < 200; ++instance) {
    const int p = 1 + static_cast<int>(rng.below(10));
    const double density = rng.uniform();
    std::vector<VscsEntry> entries;
    std::vector<std::uint64_t> bits;
    const std::uint64_t full = (std::uint64_t{1} << p) - 1;
    for (std::uint64_t b = 0; b <= full; ++b) {
      if (b == full || rng.uniform() < density) {
        entries.push_back(VscsEntry{ModelMask(p, b)});
        bits.push_back(b);
      }
    }
    GlmFit ff;
    ff.mask = ModelMask::full(p);
    const LbmSet lbms = extract_lbms(Vscs(0.05, p, 100, 0, entries, ff));
    std::vector<std::uint64_t> got;
    for (const auto& m : lbms.masks) got.push_back(m.bits());
    c.require(got == oracle::minimal_elements(bits), "LBM DP differs from brute force");
  }
  // Hamming distance against a bit scan.
  for (int t = 0; t < 10000; ++t) {
    const std::uint64_t a = rng(), b = rng();
    c.require(hamming_distance(ModelMask(64, a), ModelMask(64, b)) == oracle::bit_scan_distance(a, b, 64),
              "Hamming distance differs from bit scan");
  }
  // Inclusion-importance identities.
  for (int t = 0; t < 300; ++t) {
    const int p = 2 + static_cast<int>(rng.below(10));
    LbmSet s;
    s.p = p;
    const int count = 1 + static_cast<int>(rng.below(10));
    for (int i = 0; i < count; ++i) s.masks.emplace_back(p, rng.below(std::uint64_t{1} << p));
    const IiReport r = inclusion_importance(s);
    for (std::size_t j = 0; j < static_cast<std::size_t>(p); ++j) {
      for (std::size_t k = 0; k < static_cast<std::size_t>(p); ++k) {
        c.require(r.joint[j][k] <= std::min(r.marginal[j], r.marginal[k]), "joint II above min marginal");
        if (r.conditional[j][k]) {
          c.require(std::fabs(*r.conditional[j][k] * r.marginal[k] - r.joint[j][k]) <= 1e-12,
                    "conditional * marginal != joint");
        }
      }
    }
  }
  // Trapezoid AUC against pairwise concordance.
  for (int t = 0; t < 200; ++t) {
    const int n = 2 + static_cast<int>(rng.below(300));
    std::vector<double> scores, labels;
    for (int i = 0; i < n; ++i) {
      scores.push_back(t % 2 ? rng.uniform() : static_cast<double>(rng.below(5)));
      labels.push_back(i == 0 ? 1.0 : (i == 1 ? 0.0 : (rng.bernoulli(0.5) ? 1.0 : 0.0)));
    }
    c.require(std::fabs(roc_curve(scores, labels).auc - oracle::pairwise_auc(scores, labels)) <= 1e-10,
              "AUC differs from pairwise oracle");
  }
  Outcome o;
  o.pass = c.failures == 0;
  o.detail = o.pass ? "nesting, full membership, antichain, DP vs brute force (200), d_H, II identities, AUC"
                    : std::to_string(c.failures) + " violations: " + c.notes.str();
  return o;
}

Outcome numerics() {
  Checks c;
  double worst_score = 0.0, worst_fd = 0.0, worst_chisq = 0.0;
  StreamRng rng(5, 5);
  for (int inst = 0; inst < 50; ++inst) {
    const int p = 4 + 2 * static_cast<int>(rng.below(4));
    const auto data = simulate_dataset(model1(80 + static_cast<int>(rng.below(300)), p, 500), static_cast<std::uint64_t>(inst));
    const ModelMask m(p, rng.below(std::uint64_t{1} << p));
    const GlmFit fit = fit_logistic(data, m);
    const double s = score_vector(fit, data).lpNorm<Eigen::Infinity>();
    worst_score = std::max(worst_score, s);
    c.require(fit.converged && s < 1e-6, "score max-norm too large");

    GlmFit moved = fit;
    moved.beta0 += rng.normal() * 0.3;
    for (auto& b : moved.beta) b += rng.normal() * 0.3;
    const Eigen::VectorXd analytic = score_vector(moved, data);
    const Eigen::MatrixXd X = design_matrix(data, m);
    const Eigen::VectorXd theta = moved.coefficients();
    for (Eigen::Index k = 0; k < theta.size(); ++k) {
      const double h = 1e-5;
      Eigen::VectorXd up = theta, down = theta;
      up[k] += h;
      down[k] -= h;
      const double numeric = (bernoulli_loglik(data.y, X * up) - bernoulli_loglik(data.y, X * down)) / (2.0 * h);
      const double rel = std::fabs(numeric - analytic[k]) / std::max(1.0, std::fabs(analytic[k]));
      worst_fd = std::max(worst_fd, rel);
      c.require(rel < 1e-4, "finite-difference mismatch");
    }
  }
  for (double a : {0.10, 0.05, 0.01}) {
    for (int nu = 1; nu <= 30; ++nu) {
      const double err = std::fabs(chisq_quantile(a, nu) - oracle::chisq_upper_quantile(a, nu));
      worst_chisq = std::max(worst_chisq, err);
      c.require(err < 1e-3, "chi-square quantile off");
    }
  }
  Outcome o;
  o.pass = c.failures == 0;
  o.detail = "max score=" + fmt(worst_score, 3) + " max FD rel err=" + fmt(worst_fd, 3) +
             " max chisq err=" + fmt(worst_chisq, 3);
  if (!o.pass) o.detail += " : " + c.notes.str();
  return o;
}

Outcome determinism() {
  const fs::path dir = workdir("criterion6");
  const std::string cli = SNPVSCS_CLI_PATH;
  std::vector<std::string> tables, records;
  Outcome o;
  for (int threads : {1, 4, 8}) {
    const auto out = dir / ("mc1_t" + std::to_string(threads) + ".csv");
    const auto rec = dir / ("mc1_t" + std::to_string(threads) + "_records.csv");
    const int code = run(cli + " mc1 --model 1 --n 200 --p 8 --rho 0 --alpha 0.1 --alpha 0.05 --alpha 0.01" +
                         " --replicates 100 --seed 7 --threads " + std::to_string(threads) + " --out " +
                         out.string() + " --records " + rec.string());
    if (code != 0) {
      o.pass = false;
      o.detail = "mc1 exited with " + std::to_string(code);
      return o;
    }
    tables.push_back(slurp(out));
    records.push_back(slurp(rec));
  }
  o.pass = !tables[0].empty() && tables[0] == tables[1] && tables[0] == tables[2] && records[0] == records[1] &&
           records[0] == records[2];
  o.detail = "mc1 CSV at 1/4/8 threads " + std::string(o.pass ? "byte-identical" : "differs") + " (" +
             std::to_string(tables[0].size()) + " bytes)";
  return o;
}

Outcome lbm_curves() {
  const std::vector<int> sizes{100, 200, 400, 800, 1600};
  const std::vector<double> alphas{0.05};
  std::vector<double> lbm_mean, ham_mean;
  double single_at_max = 0.0;
  for (int n : sizes) {
    const auto r = run_mc_experiment1(model1(n, 10, 1), alphas, 100, 1)[0];
    lbm_mean.push_back(r.mean_lbm_size);
    ham_mean.push_back(r.mean_lbm_hamming);
    if (n == sizes.back()) {
      int single = 0;
      for (const auto& rec : r.records) single += rec.lbm_size == 1;
      single_at_max = single / static_cast<double>(r.records.size());
    }
  }
  Outcome o;
  for (std::size_t i = 1; i < sizes.size(); ++i) {
    o.pass = o.pass && lbm_mean[i] <= lbm_mean[i - 1] && ham_mean[i] < ham_mean[i - 1];
  }
  o.pass = o.pass && single_at_max >= 0.8;
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    o.detail += "n=" + std::to_string(sizes[i]) + " |B|=" + fmt(lbm_mean[i]) + " dH=" + fmt(ham_mean[i]) + " ";
  }
  o.detail += "|B|=1 at n=1600 in " + fmt(100.0 * single_at_max) + "% of runs";
  return o;
}

Outcome standin_pipeline() {
  const fs::path dir = workdir("criterion8");
  const std::string cli = SNPVSCS_CLI_PATH;
  const std::string data = (dir / "standin.csv").string();
  const std::string common = " --data " + data + " --covariates 2";
  const auto start = std::chrono::steady_clock::now();
  const std::vector<std::pair<std::string, std::string>> steps = {
      {"simulate", cli + " simulate --preset standin --seed 2024 --out " + data},
      {"vscs", cli + " vscs" + common + " --alpha 0.1 --alpha 0.05 --alpha 0.01 --seed 2024 --out " +
                   (dir / "vscs.json").string() + " --vscs-out " + (dir / "vscs.csv").string()},
      {"rank", cli + " rank" + common + " --report " + (dir / "vscs.json").string() + " --out " +
                   (dir / "rank.json").string()},
      {"aggregate", cli + " aggregate" + common + " --report " + (dir / "rank.json").string() + " --vscs " +
                        (dir / "vscs.csv").string() + " --out " + (dir / "report.json").string()},
      {"graph", cli + " graph --report " + (dir / "report.json").string() + " --alpha 0.05 --out " +
                    (dir / "ii.dot").string()},
      {"roc", cli + " roc" + common + " --report " + (dir / "report.json").string() + " --full --folds 5 --seed 2024" +
                  " --out " + (dir / "roc.csv").string() + " --auc-out " + (dir / "auc.csv").string()},
  };
  Outcome o;
  for (const auto& [name, cmd] : steps) {
    const int code = run(cmd);
    if (code != 0) {
      o.pass = false;
      o.detail = name + " exited with " + std::to_string(code);
      return o;
    }
  }
  const double minutes = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count() / 60.0;

  const AnalysisReport report = parse_report(slurp(dir / "report.json"));
  const LevelReport* level = report.level(0.05);
  Checks c;
  c.require(minutes < 60.0, "pipeline took " + fmt(minutes) + " min");
  c.require(level != nullptr && level->importance && level->aic_aggregate && level->bic_aggregate,
            "report lacks the 0.05 level results");
  std::string agg_detail;
  if (c.failures == 0) {
    for (const auto* s : {&*level->aic_aggregate, &*level->bic_aggregate}) {
      c.require(s->result.in_vscs && s->lrt_p_value > 0.05,
                std::string(to_string(s->result.criterion)) + " aggregate outside the VSCS");
      agg_detail += std::string(to_string(s->result.criterion)) + "-LBM " + s->result.selected.to_string() +
                    " p=" + fmt(s->lrt_p_value, 3) + " ";
    }
    // A planted SNP is in the top half when fewer than p/2 SNPs have strictly larger II.
    const auto& ii = level->importance->marginal;
    const ModelMask planted = planted_standin_mask();
    int outside = 0;
    for (int j : planted.indices()) {
      int above = 0;
      for (double v : ii) above += v > ii[static_cast<std::size_t>(j)];
      if (above >= static_cast<int>(ii.size()) / 2) ++outside;
    }
    c.require(outside == 0, std::to_string(outside) + " planted SNPs outside the top half by II");
    agg_detail += "planted in top half: " + std::to_string(planted.size() - outside) + "/" +
                  std::to_string(planted.size()) + " ";
  }
  c.require(dot::validate(slurp(dir / "ii.dot")).empty(), "graph output is not valid DOT");
  c.require(slurp(dir / "auc.csv").find("full,") != std::string::npos, "ROC summary lacks the full model");
  o.pass = c.failures == 0;
  o.detail = agg_detail + "runtime=" + fmt(minutes, 3) + " min";
  if (!o.pass) o.detail += " : " + c.notes.str();
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"coverage (Model 1, n=200, p=8)", coverage},
      {"VSCS/LBM cardinality trend", cardinality},
      {"aggregation beats forward AIC", aggregation_dominance},
      {"exactness invariants", exactness},
      {"numerical checks", numerics},
      {"mc1 determinism across threads", determinism},
      {"LBM curves in n", lbm_curves},
      {"stand-in pipeline", standin_pipeline},
  };
  int only = 0;
  for (int i = 1; i + 1 < argc; ++i) {
    if (std::string(argv[i]) == "--criterion") only = std::atoi(argv[i + 1]);
  }
  if (only < 0 || only > static_cast<int>(criteria.size())) {
    std::cerr << "unknown criterion " << only << '\n';
    return 2;
  }
  bool all_pass = true;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    if (only != 0 && static_cast<int>(i) + 1 != only) continue;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::cout << "criterion " << i + 1 << " [" << criteria[i].first << "]: " << (o.pass ? "PASS" : "FAIL") << " - "
              << o.detail << " (" << fmt(secs, 3) << " s)" << std::endl;
    all_pass = all_pass && o.pass;
  }
  return all_pass ? 0 : 1;
}

#include "snpvscs/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <string>

#include "snpvscs/aggregate.hpp"
#include "snpvscs/distributions.hpp"
#include "snpvscs/errors.hpp"
#include "snpvscs/importance.hpp"
#include "snpvscs/model_space.hpp"
#include "snpvscs/parallel.hpp"

namespace snpvscs {

Eigen::MatrixXd CovStructure::matrix(int p) const {
  Eigen::MatrixXd sigma = Eigen::MatrixXd::Identity(p, p);
  const int block = std::max(1, p / 4);
  for (int i = 0; i < p; ++i) {
    for (int j = 0; j < p; ++j) {
      if (i == j) continue;
      if (kind == CovKind::toeplitz) {
        sigma(i, j) = std::pow(rho, std::abs(i - j));
      } else if (i / block == j / block) {
        sigma(i, j) = rho;
      }
    }
  }
  return sigma;
}

void SimSpec::validate() const {
  if (model_id < 1 || model_id > 4) throw DomainError("model_id must be 1, 2, 3 or 4");
  if (p < 2 || p % 2 != 0) throw DomainError("p must be even and at least 2");
  if ((model_id == 2 || model_id == 4) && p % 4 != 0) {
    throw DomainError("block-covariance models need p divisible by 4");
  }
  if (!(rho >= 0.0 && rho < 1.0)) throw DomainError("rho must lie in [0, 1)");
  if (n < 1) throw DomainError("n must be positive");
}

CovStructure SimSpec::covariance() const {
  return {model_id == 1 || model_id == 3 ? CovKind::toeplitz : CovKind::block, rho};
}

ModelMask SimSpec::true_mask() const {
  ModelMask m = ModelMask::empty(p);
  for (int j = 0; j < p / 2; ++j) m = m.with(j);
  return m;
}

std::vector<double> true_beta(const SimSpec& spec) {
  spec.validate();
  std::vector<double> beta(static_cast<std::size_t>(spec.p), 0.0);
  const bool decreasing = spec.model_id == 3 || spec.model_id == 4;
  for (int j = 1; j <= spec.p / 2; ++j) {
    const double sign = j % 2 == 0 ? 1.0 : -1.0;
    beta[static_cast<std::size_t>(j - 1)] = decreasing ? sign / j : sign;
  }
  return beta;
}

namespace {

Eigen::MatrixXd threshold_latent(const Eigen::MatrixXd& sigma, int n, StreamRng& rng) {
  const Eigen::Index p = sigma.rows();
  const Eigen::LLT<Eigen::MatrixXd> llt(sigma);
  if (llt.info() != Eigen::Success) throw CholeskyFailure("latent covariance is not positive definite");
  const Eigen::MatrixXd L = llt.matrixL();
  static const double c1 = normal_quantile(1.0 / 3.0);
  static const double c2 = normal_quantile(2.0 / 3.0);
  Eigen::MatrixXd x(n, p);
  Eigen::VectorXd e(p);
  for (int i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < p; ++j) e[j] = rng.normal();
    const Eigen::VectorXd u = L * e;
    for (Eigen::Index j = 0; j < p; ++j) x(i, j) = u[j] < c1 ? 0.0 : (u[j] < c2 ? 1.0 : 2.0);
  }
  return x;
}

double logistic(double eta) { return 1.0 / (1.0 + std::exp(-eta)); }

}  // namespace

Eigen::MatrixXd sample_genotypes(const SimSpec& spec, const CovStructure& cov, StreamRng& rng) {
  return threshold_latent(cov.matrix(spec.p), spec.n, rng);
}

Eigen::VectorXd sample_response(const Eigen::MatrixXd& x, std::span<const double> beta, StreamRng& rng,
                                double beta0) {
  if (static_cast<Eigen::Index>(beta.size()) != x.cols()) {
    throw DimensionMismatch("coefficient count differs from genotype columns");
  }
  const Eigen::Map<const Eigen::VectorXd> b(beta.data(), static_cast<Eigen::Index>(beta.size()));
  const Eigen::VectorXd eta = (x * b).array() + beta0;
  Eigen::VectorXd y(x.rows());
  for (Eigen::Index i = 0; i < y.size(); ++i) y[i] = rng.bernoulli(logistic(eta[i])) ? 1.0 : 0.0;
  return y;
}

GenotypeDataset simulate_dataset(const SimSpec& spec, std::uint64_t stream) {
  spec.validate();
  StreamRng rng(spec.seed, stream);
  Eigen::MatrixXd x = sample_genotypes(spec, spec.covariance(), rng);
  const auto beta = true_beta(spec);
  Eigen::VectorXd y = sample_response(x, beta, rng);
  return make_dataset(std::move(y), std::move(x));
}

namespace {

constexpr int kStandinSnps = 20;
constexpr int kStandinSubjects = 684;
// Planted risk SNPs and their per-allele log odds.
constexpr int kPlanted[8] = {0, 2, 4, 7, 9, 12, 15, 18};
constexpr double kPlantedEffect[8] = {0.9, 0.55, -0.6, 0.45, 0.7, -0.5, 0.4, 0.6};

}  // namespace

ModelMask planted_standin_mask() {
  ModelMask m = ModelMask::empty(kStandinSnps);
  for (int j : kPlanted) m = m.with(j);
  return m;
}

GenotypeDataset simulate_standin(std::uint64_t seed) {
  StreamRng rng(seed, 0);
  Eigen::MatrixXd sigma = CovStructure{CovKind::toeplitz, 0.15}.matrix(kStandinSnps);
  // SNPs 0 and 1 are in strong linkage disequilibrium; only SNP 0 is causal.
  sigma(0, 1) = sigma(1, 0) = 0.85;
  Eigen::MatrixXd x = threshold_latent(sigma, kStandinSubjects, rng);

  Eigen::MatrixXd z(kStandinSubjects, 2);
  for (int i = 0; i < kStandinSubjects; ++i) {
    z(i, 0) = std::round((75.0 + 7.0 * rng.normal()) * 10.0) / 10.0;
    z(i, 1) = rng.bernoulli(0.6) ? 1.0 : 0.0;
  }
  std::vector<double> beta(kStandinSnps, 0.0);
  double offset = 0.45;
  for (int t = 0; t < 8; ++t) {
    beta[static_cast<std::size_t>(kPlanted[t])] = kPlantedEffect[t];
    offset -= kPlantedEffect[t];  // genotype codes average 1
  }
  Eigen::VectorXd y(kStandinSubjects);
  for (int i = 0; i < kStandinSubjects; ++i) {
    double eta = offset + 0.04 * (z(i, 0) - 75.0) + 0.2 * z(i, 1);
    for (int j = 0; j < kStandinSnps; ++j) eta += beta[static_cast<std::size_t>(j)] * x(i, j);
    y[i] = rng.bernoulli(logistic(eta)) ? 1.0 : 0.0;
  }
  GenotypeDataset d = make_dataset(std::move(y), std::move(x), std::move(z));
  for (int j = 0; j < kStandinSnps; ++j) {
    char name[16];
    std::snprintf(name, sizeof name, "rs%03d", j + 1);
    d.snp_names[static_cast<std::size_t>(j)] = name;
  }
  d.covariate_names = {"age", "gender"};
  return d;
}

namespace {

struct MeanSe {
  double mean = 0.0;
  double se = 0.0;
};

template <typename Get>
MeanSe mean_se(std::size_t count, Get get) {
  MeanSe r;
  if (count == 0) return r;
  for (std::size_t i = 0; i < count; ++i) r.mean += get(i);
  r.mean /= static_cast<double>(count);
  if (count > 1) {
    double ss = 0.0;
    for (std::size_t i = 0; i < count; ++i) ss += (get(i) - r.mean) * (get(i) - r.mean);
    r.se = std::sqrt(ss / static_cast<double>(count - 1) / static_cast<double>(count));
  }
  return r;
}

void require_alphas(std::span<const double> alphas, int replicates) {
  if (alphas.empty()) throw DomainError("at least one alpha is required");
  for (double a : alphas) {
    if (!(a > 0.0 && a < 1.0)) throw DomainError("alpha must lie in (0, 1)");
  }
  if (replicates < 1) throw DomainError("replicates must be at least 1");
}

// Screens once at the smallest alpha; larger levels are nested subsets.
Vscs screen_widest(const GenotypeDataset& data, std::span<const double> alphas, const FitConfig& fit_config) {
  ScreeningConfig sc;
  sc.alpha = *std::min_element(alphas.begin(), alphas.end());
  return enumerate_vscs(data, sc, fit_config);
}

ModelMask aggregated_or_empty(const LbmSet& lbms, const Vscs& vscs, const GenotypeDataset& data,
                              Criterion c, const FitConfig& fit_config) {
  try {
    return aggregate_lbm(lbms, vscs, data, c, fit_config).selected;
  } catch (const NoPositiveImportance&) {
    return ModelMask::empty(data.p());
  }
}

}  // namespace

std::vector<McResult> run_mc_experiment1(const SimSpec& spec, std::span<const double> alphas, int replicates,
                                         int threads, const FitConfig& fit_config) {
  spec.validate();
  require_alphas(alphas, replicates);
  const ModelMask truth = spec.true_mask();
  const std::size_t A = alphas.size();
  std::vector<std::vector<Mc1Record>> per_rep(static_cast<std::size_t>(replicates));

  parallel_for(per_rep.size(), threads, [&](std::size_t r) {
    const GenotypeDataset data = simulate_dataset(spec, r);
    const Vscs widest = screen_widest(data, alphas, fit_config);
    for (std::size_t a = 0; a < A; ++a) {
      const Vscs vscs = alphas[a] == widest.alpha() ? widest : widest.at_level(alphas[a]);
      const LbmSet lbms = extract_lbms(vscs);
      Mc1Record rec;
      rec.replicate = static_cast<int>(r);
      rec.alpha = alphas[a];
      rec.covered = vscs.contains(truth);
      rec.vscs_size = vscs.size();
      rec.lbm_size = lbms.size();
      double predictors = 0.0;
      for (const auto& m : lbms.masks) predictors += m.size();
      rec.avg_lbm_predictors = predictors / static_cast<double>(lbms.size());
      rec.lbm_hamming_to_truth = avg_hamming_to_target(lbms.masks, truth);
      std::vector<ModelMask> members;
      members.reserve(vscs.size());
      for (const auto& e : vscs.entries()) members.push_back(e.mask);
      rec.vscs_hamming_to_truth = avg_hamming_to_target(members, truth);
      per_rep[r].push_back(rec);
    }
  });

  std::vector<McResult> out(A);
  const auto R = static_cast<std::size_t>(replicates);
  for (std::size_t a = 0; a < A; ++a) {
    McResult& m = out[a];
    m.alpha = alphas[a];
    for (std::size_t r = 0; r < R; ++r) m.records.push_back(per_rep[r][a]);
    auto stat = [&](auto field) { return mean_se(R, [&](std::size_t r) { return field(m.records[r]); }); };
    const auto cov = stat([](const Mc1Record& x) { return x.covered ? 1.0 : 0.0; });
    const auto vs = stat([](const Mc1Record& x) { return static_cast<double>(x.vscs_size); });
    const auto ls = stat([](const Mc1Record& x) { return static_cast<double>(x.lbm_size); });
    const auto ap = stat([](const Mc1Record& x) { return x.avg_lbm_predictors; });
    const auto lh = stat([](const Mc1Record& x) { return x.lbm_hamming_to_truth; });
    const auto vh = stat([](const Mc1Record& x) { return x.vscs_hamming_to_truth; });
    m.coverage = cov.mean;
    m.se_coverage = cov.se;
    m.mean_vscs_size = vs.mean;
    m.se_vscs_size = vs.se;
    m.mean_lbm_size = ls.mean;
    m.se_lbm_size = ls.se;
    m.mean_avg_lbm_predictors = ap.mean;
    m.se_avg_lbm_predictors = ap.se;
    m.mean_lbm_hamming = lh.mean;
    m.se_lbm_hamming = lh.se;
    m.mean_vscs_hamming = vh.mean;
    m.se_vscs_hamming = vh.se;
  }
  return out;
}

Mc2Result run_mc_experiment2(const SimSpec& spec, std::span<const double> alphas, int replicates, int threads,
                             const FitConfig& fit_config) {
  spec.validate();
  require_alphas(alphas, replicates);
  const ModelMask truth = spec.true_mask();
  const std::size_t A = alphas.size();
  Mc2Result out;
  out.alphas.assign(alphas.begin(), alphas.end());
  out.records.resize(static_cast<std::size_t>(replicates));

  parallel_for(out.records.size(), threads, [&](std::size_t r) {
    const GenotypeDataset data = simulate_dataset(spec, r);
    const Vscs widest = screen_widest(data, alphas, fit_config);
    Mc2Record rec;
    rec.replicate = static_cast<int>(r);
    for (std::size_t a = 0; a < A; ++a) {
      const Vscs vscs = alphas[a] == widest.alpha() ? widest : widest.at_level(alphas[a]);
      const LbmSet lbms = extract_lbms(vscs);
      rec.aic_lbm.push_back(
          hamming_distance(aggregated_or_empty(lbms, vscs, data, Criterion::aic, fit_config), truth));
      rec.bic_lbm.push_back(
          hamming_distance(aggregated_or_empty(lbms, vscs, data, Criterion::bic, fit_config), truth));
    }
    rec.forward_aic = hamming_distance(forward_select(data, Criterion::aic, fit_config), truth);
    rec.forward_bic = hamming_distance(forward_select(data, Criterion::bic, fit_config), truth);
    out.records[r] = std::move(rec);
  });

  const auto R = out.records.size();
  for (std::size_t a = 0; a < A; ++a) {
    const auto aic_stat = mean_se(R, [&](std::size_t r) { return double(out.records[r].aic_lbm[a]); });
    const auto bic_stat = mean_se(R, [&](std::size_t r) { return double(out.records[r].bic_lbm[a]); });
    out.mean_aic_lbm.push_back(aic_stat.mean);
    out.se_aic_lbm.push_back(aic_stat.se);
    out.mean_bic_lbm.push_back(bic_stat.mean);
    out.se_bic_lbm.push_back(bic_stat.se);
  }
  const auto fa = mean_se(R, [&](std::size_t r) { return double(out.records[r].forward_aic); });
  const auto fb = mean_se(R, [&](std::size_t r) { return double(out.records[r].forward_bic); });
  out.mean_forward_aic = fa.mean;
  out.se_forward_aic = fa.se;
  out.mean_forward_bic = fb.mean;
  out.se_forward_bic = fb.se;
  return out;
}

namespace {

std::string fmt12(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

void row(std::ostream& out, const SimSpec& spec, const std::string& alpha, const char* statistic, double mean,
         double se) {
  out << spec.model_id << ',' << spec.n << ',' << spec.p << ',' << fmt12(spec.rho) << ',' << alpha << ','
      << statistic << ',' << fmt12(mean) << ',' << fmt12(se) << '\n';
}

constexpr const char* kMcHeader = "model_id,n,p,rho,alpha,statistic,mean,mc_se\n";

}  // namespace

void write_mc1_csv(std::ostream& out, const SimSpec& spec, const std::vector<McResult>& results) {
  out << kMcHeader;
  for (const auto& m : results) {
    const auto a = fmt12(m.alpha);
    row(out, spec, a, "coverage", m.coverage, m.se_coverage);
    row(out, spec, a, "vscs_size", m.mean_vscs_size, m.se_vscs_size);
    row(out, spec, a, "lbm_size", m.mean_lbm_size, m.se_lbm_size);
    row(out, spec, a, "avg_lbm_predictors", m.mean_avg_lbm_predictors, m.se_avg_lbm_predictors);
    row(out, spec, a, "lbm_hamming_to_truth", m.mean_lbm_hamming, m.se_lbm_hamming);
    row(out, spec, a, "vscs_hamming_to_truth", m.mean_vscs_hamming, m.se_vscs_hamming);
  }
}

void write_mc2_csv(std::ostream& out, const SimSpec& spec, const Mc2Result& result) {
  out << kMcHeader;
  for (std::size_t a = 0; a < result.alphas.size(); ++a) {
    const auto al = fmt12(result.alphas[a]);
    row(out, spec, al, "hamming_aic_lbm", result.mean_aic_lbm[a], result.se_aic_lbm[a]);
    row(out, spec, al, "hamming_bic_lbm", result.mean_bic_lbm[a], result.se_bic_lbm[a]);
  }
  row(out, spec, "NA", "hamming_forward_aic", result.mean_forward_aic, result.se_forward_aic);
  row(out, spec, "NA", "hamming_forward_bic", result.mean_forward_bic, result.se_forward_bic);
}

void write_mc1_records_csv(std::ostream& out, const std::vector<McResult>& results) {
  out << "replicate,alpha,covered,vscs_size,lbm_size,avg_lbm_predictors,lbm_hamming_to_truth,"
         "vscs_hamming_to_truth\n";
  for (const auto& m : results) {
    for (const auto& r : m.records) {
      out << r.replicate << ',' << fmt12(r.alpha) << ',' << (r.covered ? 1 : 0) << ',' << r.vscs_size << ','
          << r.lbm_size << ',' << fmt12(r.avg_lbm_predictors) << ',' << fmt12(r.lbm_hamming_to_truth) << ','
          << fmt12(r.vscs_hamming_to_truth) << '\n';
    }
  }
}

void write_mc2_records_csv(std::ostream& out, const Mc2Result& result) {
  out << "replicate,alpha,hamming_aic_lbm,hamming_bic_lbm,hamming_forward_aic,hamming_forward_bic\n";
  for (const auto& r : result.records) {
    for (std::size_t a = 0; a < result.alphas.size(); ++a) {
      out << r.replicate << ',' << fmt12(result.alphas[a]) << ',' << r.aic_lbm[a] << ',' << r.bic_lbm[a] << ','
          << r.forward_aic << ',' << r.forward_bic << '\n';
    }
  }
}

}  // namespace snpvscs

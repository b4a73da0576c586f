#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "snpvscs/distributions.hpp"
#include "snpvscs/errors.hpp"
#include "snpvscs/importance.hpp"
#include "snpvscs/random.hpp"
#include "snpvscs/simulate.hpp"

using namespace snpvscs;

TEST(TrueBeta, Patterns) {
  SimSpec spec;
  spec.model_id = 1;
  spec.p = 4;
  EXPECT_EQ(true_beta(spec), (std::vector<double>{-1, 1, 0, 0}));
  spec.model_id = 3;
  spec.p = 8;
  const auto b = true_beta(spec);
  const std::vector<double> expected{-1, 0.5, -1.0 / 3.0, 0.25, 0, 0, 0, 0};
  for (std::size_t j = 0; j < 8; ++j) EXPECT_DOUBLE_EQ(b[j], expected[j]);
  EXPECT_EQ(spec.true_mask().size(), 4);
  EXPECT_EQ(spec.true_mask().bits(), 0b1111u);
}

TEST(SimSpec, Validation) {
  SimSpec spec;
  spec.p = 7;
  EXPECT_THROW(spec.validate(), DomainError);
  spec.p = 6;
  spec.model_id = 2;
  EXPECT_THROW(spec.validate(), DomainError);
  spec.model_id = 5;
  spec.p = 8;
  EXPECT_THROW(spec.validate(), DomainError);
}

TEST(Covariance, EntrywiseStructure) {
  const auto t = CovStructure{CovKind::toeplitz, 0.6}.matrix(6);
  const auto b = CovStructure{CovKind::block, 0.4}.matrix(8);
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) EXPECT_DOUBLE_EQ(t(i, j), std::pow(0.6, std::abs(i - j)));
  for (int i = 0; i < 8; ++i) {
    for (int j = 0; j < 8; ++j) {
      const double expected = i == j ? 1.0 : (i / 2 == j / 2 ? 0.4 : 0.0);
      EXPECT_DOUBLE_EQ(b(i, j), expected);
    }
  }
}

TEST(Genotypes, EqualThirds) {
  SimSpec spec;
  spec.n = 30000;
  spec.p = 4;
  StreamRng rng(10, 0);
  const auto x = sample_genotypes(spec, spec.covariance(), rng);
  for (int j = 0; j < 4; ++j) {
    for (int code = 0; code < 3; ++code) {
      const double freq = (x.col(j).array() == code).cast<double>().mean();
      EXPECT_NEAR(freq, 1.0 / 3.0, 0.02);
    }
  }
}

TEST(Genotypes, GoodnessOfFit) {
  SimSpec spec;
  spec.n = 100000;
  spec.p = 2;
  StreamRng rng(11, 0);
  const auto x = sample_genotypes(spec, spec.covariance(), rng);
  for (int j = 0; j < 2; ++j) {
    double stat = 0.0;
    const double expected = spec.n / 3.0;
    for (int code = 0; code < 3; ++code) {
      const double observed = (x.col(j).array() == code).cast<double>().sum();
      stat += (observed - expected) * (observed - expected) / expected;
    }
    EXPECT_LT(stat, chisq_quantile(0.01, 2));
  }
}

TEST(Genotypes, CorrelatedNeighbours) {
  SimSpec spec;
  spec.n = 10000;
  spec.p = 4;
  spec.rho = 0.75;
  const auto data = simulate_dataset(spec, 0);
  EXPECT_GT(mutual_information(data, 0, 1), 0.05);
}

TEST(Genotypes, NotPositiveDefinite) {
  SimSpec spec;
  spec.p = 4;
  StreamRng rng(1, 0);
  // rho = 1 gives a singular Toeplitz matrix.
  EXPECT_THROW(sample_genotypes(spec, CovStructure{CovKind::toeplitz, 1.0}, rng), CholeskyFailure);
}

TEST(Response, ZeroCoefficientsAreFairCoins) {
  const int n = 20000;
  Eigen::MatrixXd x = Eigen::MatrixXd::Ones(n, 2);
  StreamRng rng(3, 0);
  const std::vector<double> beta{0.0, 0.0};
  const auto y = sample_response(x, beta, rng);
  EXPECT_NEAR(y.mean(), 0.5, 3.0 * std::sqrt(0.25 / n));
}

TEST(Response, Saturation) {
  Eigen::MatrixXd x = Eigen::MatrixXd::Ones(500, 1) * 2.0;
  StreamRng rng(3, 1);
  const std::vector<double> beta{400.0};
  EXPECT_EQ(sample_response(x, beta, rng).sum(), 500.0);
}

TEST(Response, CellFrequenciesMatchLogistic) {
  const int n = 100000;
  StreamRng rng(8, 8);
  Eigen::MatrixXd x(n, 1);
  for (int i = 0; i < n; ++i) x(i, 0) = static_cast<double>(rng.below(3));
  const std::vector<double> beta{0.7};
  const auto y = sample_response(x, beta, rng, -0.5);
  for (int code = 0; code < 3; ++code) {
    double count = 0, cases = 0;
    for (int i = 0; i < n; ++i) {
      if (x(i, 0) != code) continue;
      count += 1;
      cases += y[i];
    }
    const double p = 1.0 / (1.0 + std::exp(-(-0.5 + 0.7 * code)));
    EXPECT_NEAR(cases / count, p, 3.5 * std::sqrt(p * (1 - p) / count));
  }
}

TEST(Simulate, DeterministicStreams) {
  SimSpec spec;
  spec.n = 50;
  spec.p = 6;
  spec.rho = 0.5;
  spec.seed = 99;
  const auto a = simulate_dataset(spec, 3);
  const auto b = simulate_dataset(spec, 3);
  const auto c = simulate_dataset(spec, 4);
  EXPECT_EQ(a.x, b.x);
  EXPECT_EQ(a.y, b.y);
  EXPECT_NE(a.x, c.x);
}

TEST(Standin, Shape) {
  const auto d = simulate_standin(1);
  EXPECT_EQ(d.n(), 684);
  EXPECT_EQ(d.p(), 20);
  EXPECT_EQ(d.q(), 2);
  EXPECT_EQ(planted_standin_mask().size(), 8);
  EXPECT_NO_THROW(d.validate());
  EXPECT_EQ(simulate_standin(1).fingerprint(), d.fingerprint());
}

TEST(MonteCarlo, Experiment1SmallRun) {
  SimSpec spec;
  spec.n = 100;
  spec.p = 4;
  spec.seed = 5;
  const std::vector<double> alphas{0.05, 0.01};
  const auto results = run_mc_experiment1(spec, alphas, 20, 1);
  ASSERT_EQ(results.size(), 2u);
  for (const auto& r : results) {
    EXPECT_GE(r.coverage, 0.0);
    EXPECT_LE(r.coverage, 1.0);
    EXPECT_EQ(r.records.size(), 20u);
  }
  EXPECT_GE(results[1].mean_vscs_size, results[0].mean_vscs_size);
  for (std::size_t i = 0; i < 20; ++i) {
    EXPECT_GE(results[1].records[i].vscs_size, results[0].records[i].vscs_size);
  }

  const auto threaded = run_mc_experiment1(spec, alphas, 20, 3);
  std::ostringstream a, b;
  write_mc1_csv(a, spec, results);
  write_mc1_csv(b, spec, threaded);
  EXPECT_EQ(a.str(), b.str());
}

TEST(MonteCarlo, Experiment2Deterministic) {
  SimSpec spec;
  spec.n = 120;
  spec.p = 4;
  spec.seed = 6;
  const std::vector<double> alphas{0.05};
  const auto a = run_mc_experiment2(spec, alphas, 10, 1);
  const auto b = run_mc_experiment2(spec, alphas, 10, 2);
  std::ostringstream sa, sb;
  write_mc2_csv(sa, spec, a);
  write_mc2_csv(sb, spec, b);
  EXPECT_EQ(sa.str(), sb.str());
  EXPECT_NE(sa.str().find("model_id,n,p,rho,alpha,statistic,mean,mc_se"), std::string::npos);
}

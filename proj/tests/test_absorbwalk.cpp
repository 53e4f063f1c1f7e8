#include <doctest.h>

#include <cmath>

#include "reprank/absorbwalk.hpp"
#include "reprank/errors.hpp"

using namespace reprank;

namespace {

AbsorbingChain three_state_chain() {
  // states 0, 1 transient; state 2 absorbing
  Eigen::MatrixXd P(3, 3);
  P << 0.2, 0.5, 0.3,
       0.4, 0.1, 0.5,
       0.0, 0.0, 1.0;
  return as_absorbing_chain(P);
}

}  // namespace

TEST_CASE("make_absorbing rewrites exactly one row") {
  Eigen::MatrixXd P(2, 2);
  P << 0.3, 0.7, 0.6, 0.4;
  AbsorbingChain chain = as_absorbing_chain(P);
  make_absorbing(chain, 0);
  CHECK(chain.P(0, 0) == 1.0);
  CHECK(chain.P(0, 1) == 0.0);
  CHECK(chain.P(1, 0) == 0.6);  // other rows bit-identical
  CHECK(chain.P(1, 1) == 0.4);
  CHECK_THROWS_AS(make_absorbing(chain, 0), AlreadyAbsorbing);
}

TEST_CASE("single transient state that leaves immediately: 2 visits per walk") {
  Eigen::MatrixXd P(2, 2);
  P << 0.0, 1.0, 0.0, 1.0;
  AbsorbingChain chain = as_absorbing_chain(P);
  REQUIRE(chain.absorbing_count() == 1);
  SamplerConfig cfg;
  cfg.walks_per_batch = 500;
  cfg.seed = 3;
  Eigen::VectorXd counts = sample_batch(chain, cfg, 0);
  CHECK(counts[0] == 500.0);
  CHECK(counts[1] == 500.0);
}

TEST_CASE("absorbing every state ends each walk after one visit") {
  Eigen::MatrixXd P = Eigen::MatrixXd::Identity(3, 3);
  AbsorbingChain chain = as_absorbing_chain(P);
  CHECK(chain.absorbing_count() == 3);
  SamplerConfig cfg;
  cfg.walks_per_batch = 300;
  Eigen::VectorXd counts = sample_batch(chain, cfg, 0);
  CHECK(counts.sum() == 300.0);
}

TEST_CASE("sampling is deterministic and thread-count independent") {
  AbsorbingChain chain = three_state_chain();
  SamplerConfig cfg;
  cfg.walks_per_batch = 2000;
  cfg.seed = 99;
  cfg.threads = 1;
  Eigen::VectorXd serial = sample_batch(chain, cfg, 4);
  cfg.threads = 7;
  Eigen::VectorXd parallel = sample_batch(chain, cfg, 4);
  CHECK((serial - parallel).norm() == 0.0);
  Eigen::VectorXd again = sample_batch(chain, cfg, 4);
  CHECK((parallel - again).norm() == 0.0);
  // different batch index gives different draws
  Eigen::VectorXd other = sample_batch(chain, cfg, 5);
  CHECK((other - serial).norm() != 0.0);
}

TEST_CASE("symmetric transient states collect matching counts") {
  Eigen::MatrixXd P(3, 3);
  P << 0.2, 0.3, 0.5,
       0.3, 0.2, 0.5,
       0.0, 0.0, 1.0;
  AbsorbingChain chain = as_absorbing_chain(P);
  SamplerConfig cfg;
  cfg.walks_per_batch = 100000;
  cfg.seed = 17;
  Eigen::VectorXd counts = sample_batch(chain, cfg, 0);
  // equal by symmetry; allow 5 sigma of binomial noise
  double total = counts[0] + counts[1];
  double sigma = std::sqrt(total) / 2.0;
  CHECK(std::abs(counts[0] - counts[1]) < 5 * sigma + 1);
}

TEST_CASE("fundamental matrix on hand-solved instances") {
  // single transient that leaves immediately: N = [[1]]
  Eigen::MatrixXd P(2, 2);
  P << 0.0, 1.0, 0.0, 1.0;
  Eigen::MatrixXd N = exact_expected_visits(as_absorbing_chain(P));
  CHECK(N(0, 0) == doctest::Approx(1.0));

  // geometric self-loop: N = [[2]]
  P << 0.5, 0.5, 0.0, 1.0;
  N = exact_expected_visits(as_absorbing_chain(P));
  CHECK(N(0, 0) == doctest::Approx(2.0));

  // 2x2 transient block, inverted by hand: (I-Q)^{-1}, det 0.6
  Eigen::MatrixXd P3(3, 3);
  P3 << 0.2, 0.3, 0.5,
        0.4, 0.1, 0.5,
        0.0, 0.0, 1.0;
  N = exact_expected_visits(as_absorbing_chain(P3));
  CHECK(N(0, 0) == doctest::Approx(1.5).epsilon(1e-12));
  CHECK(N(0, 1) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(N(1, 0) == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
  CHECK(N(1, 1) == doctest::Approx(4.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("no path to absorption raises NoAbsorptionPath") {
  Eigen::MatrixXd P(3, 3);
  P << 0.5, 0.5, 0.0,
       0.5, 0.5, 0.0,
       0.0, 0.0, 1.0;
  CHECK_THROWS_AS(exact_expected_visits(as_absorbing_chain(P)),
                  NoAbsorptionPath);
}

TEST_CASE("KL stopping fires immediately when estimates repeat") {
  AbsorbingChain chain = three_state_chain();
  SamplerConfig cfg;
  cfg.walks_per_batch = 5000;
  cfg.kappa = 1e-4;
  cfg.seed = 5;
  VisitEstimate est = estimate_distribution(chain, cfg);
  CHECK(est.converged);
  CHECK(est.batches >= 2);  // needs at least one comparison
  CHECK(est.batches < cfg.max_batches);
  CHECK(est.distribution.sum() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("sampled transient profile approaches the fundamental matrix") {
  AbsorbingChain chain = three_state_chain();
  Eigen::MatrixXd N = exact_expected_visits(chain);
  // expected visit profile from a uniform transient start
  Eigen::VectorXd profile = N.colwise().mean();
  profile /= profile.sum();

  SamplerConfig cfg;
  cfg.walks_per_batch = 50000;
  cfg.max_batches = 6;
  cfg.kappa = 1e-15;  // exhaust the budget
  cfg.seed = 2024;
  VisitEstimate est = estimate_distribution(chain, cfg);
  auto transient = chain.transient_states();
  Eigen::VectorXd sampled(transient.size());
  for (size_t i = 0; i < transient.size(); ++i)
    sampled[i] = est.counts[transient[i]];
  sampled /= sampled.sum();
  CHECK((sampled - profile).lpNorm<1>() <= 0.02);
}

TEST_CASE("rank_all starts from the argmax and excludes ranked items") {
  Eigen::MatrixXd P(3, 3);
  P << 0.2, 0.5, 0.3,
       0.4, 0.1, 0.5,
       0.3, 0.3, 0.4;
  Eigen::VectorXd pi0(3);
  pi0 << 0.2, 0.5, 0.3;
  SamplerConfig cfg;
  cfg.walks_per_batch = 2000;
  cfg.seed = 8;
  std::vector<RankStep> audit;
  std::vector<int> order = rank_all(P, pi0, cfg, &audit);
  REQUIRE(order.size() == 3);
  CHECK(order[0] == 1);  // argmax of pi0
  // a permutation with no repeats
  std::vector<int> sorted = order;
  std::sort(sorted.begin(), sorted.end());
  CHECK(sorted == std::vector<int>{0, 1, 2});
  CHECK(audit.size() == 3);
}

TEST_CASE("rank_all on a single state is trivial") {
  Eigen::MatrixXd P = Eigen::MatrixXd::Ones(1, 1);
  Eigen::VectorXd pi0 = Eigen::VectorXd::Ones(1);
  SamplerConfig cfg;
  CHECK(rank_all(P, pi0, cfg) == std::vector<int>{0});
}

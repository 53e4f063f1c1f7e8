#ifndef REPRANK_ABSORBWALK_HPP
#define REPRANK_ABSORBWALK_HPP

#include <Eigen/Core>
#include <cstdint>
#include <vector>

namespace reprank {

struct AbsorbingChain {
  Eigen::MatrixXd P;            // row stochastic
  std::vector<char> absorbing;  // flag per state

  int size() const { return static_cast<int>(P.rows()); }
  std::vector<int> transient_states() const;
  int absorbing_count() const;
};

AbsorbingChain as_absorbing_chain(Eigen::MatrixXd matrix);

// Rewrites one row to the unit row, leaving every other row untouched.
void make_absorbing(AbsorbingChain& chain, int index);

struct SamplerConfig {
  int walks_per_batch = 10000;
  int max_walk_length = 0;  // 0: defaults to 100 * state count
  double kappa = 1e-4;      // KL stopping threshold
  double smoothing = 1e-9;  // additive smoothing keeping KL finite
  uint64_t seed = 0;
  int max_batches = 200;
  int threads = 0;  // 0: hardware concurrency
};

// One batch of walks_per_batch walks, each started uniformly over the
// transient states; every visited state is counted, including the final
// absorbing state. Walk w of batch b draws from a stream derived from
// (seed, b, w), so counts are independent of thread scheduling.
Eigen::VectorXd sample_batch(const AbsorbingChain& chain,
                             const SamplerConfig& cfg, int batch_index);

struct VisitEstimate {
  Eigen::VectorXd counts;
  Eigen::VectorXd distribution;  // smoothed, normalized counts
  int batches = 0;
  bool converged = false;
};

// Accumulates batches until D_KL(pi_(k) || pi_(k+1)) <= kappa or the batch
// budget runs out (best estimate returned with converged = false).
VisitEstimate estimate_distribution(const AbsorbingChain& chain,
                                    const SamplerConfig& cfg);

// Fundamental matrix N = (I - Q)^{-1} over the transient states, indexed
// like transient_states(). N(i, j) is the expected number of visits to j
// starting from i before absorption.
Eigen::MatrixXd exact_expected_visits(const AbsorbingChain& chain);

struct RankStep {
  int selected = -1;
  Eigen::VectorXd distribution;  // estimate used to pick the next item
  bool converged = true;
  int batches = 0;
};

// Full diversity ranking: argmax over unranked items (ties to the lower
// index), absorb, re-estimate by sampling, repeat. With max_rounds > 0
// only that many absorption rounds run; the remaining items are appended
// in the order of the last estimate.
std::vector<int> rank_all(const Eigen::MatrixXd& matrix,
                          const Eigen::VectorXd& pi0, const SamplerConfig& cfg,
                          std::vector<RankStep>* audit = nullptr,
                          int max_rounds = 0);

}  // namespace reprank

#endif

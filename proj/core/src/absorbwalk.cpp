#include "reprank/absorbwalk.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <thread>

#include "reprank/errors.hpp"
#include "reprank/rng.hpp"

namespace reprank {

namespace {

int resolved_threads(const SamplerConfig& cfg) {
  if (cfg.threads > 0) return cfg.threads;
  unsigned hw = std::thread::hardware_concurrency();
  return hw ? static_cast<int>(hw) : 1;
}

int resolved_max_length(const AbsorbingChain& chain, const SamplerConfig& cfg) {
  return cfg.max_walk_length > 0 ? cfg.max_walk_length : 100 * chain.size();
}

using RowMajor =
    Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

// Per-row cumulative transition probabilities for inverse-CDF sampling,
// stored row-major so each row is contiguous for binary search.
RowMajor row_cdfs(const Eigen::MatrixXd& P) {
  RowMajor cdf = P;
  const int size = static_cast<int>(P.rows());
  for (int i = 0; i < size; ++i) {
    double acc = 0.0;
    for (int j = 0; j < size; ++j) {
      acc += cdf(i, j);
      cdf(i, j) = acc;
    }
    cdf(i, size - 1) = 1.0;  // absorb rounding slack in the last column
  }
  return cdf;
}

int sample_row(const RowMajor& cdf, int row, double u) {
  const int size = static_cast<int>(cdf.cols());
  const double* begin = cdf.data() + static_cast<ptrdiff_t>(row) * size;
  const double* it = std::upper_bound(begin, begin + size, u);
  return std::min(static_cast<int>(it - begin), size - 1);
}

Eigen::VectorXd smoothed_distribution(const Eigen::VectorXd& counts,
                                      double delta) {
  Eigen::VectorXd d = counts.array() + delta;
  return d / d.sum();
}

double kl_divergence(const Eigen::VectorXd& p, const Eigen::VectorXd& q) {
  double kl = 0.0;
  for (int i = 0; i < p.size(); ++i) kl += p[i] * std::log(p[i] / q[i]);
  return std::max(kl, 0.0);
}

void validate(const SamplerConfig& cfg) {
  if (cfg.walks_per_batch < 1) throw ConfigError("walks_per_batch must be >= 1");
  if (cfg.kappa <= 0.0) throw ConfigError("kappa must be positive");
  if (cfg.smoothing <= 0.0) throw ConfigError("smoothing must be positive");
  if (cfg.max_batches < 1) throw ConfigError("max_batches must be >= 1");
}

}  // namespace

std::vector<int> AbsorbingChain::transient_states() const {
  std::vector<int> t;
  for (int i = 0; i < size(); ++i)
    if (!absorbing[i]) t.push_back(i);
  return t;
}

int AbsorbingChain::absorbing_count() const {
  return static_cast<int>(
      std::count(absorbing.begin(), absorbing.end(), char(1)));
}

AbsorbingChain as_absorbing_chain(Eigen::MatrixXd matrix) {
  const int size = static_cast<int>(matrix.rows());
  if (matrix.cols() != size) throw ShapeError("chain matrix must be square");
  AbsorbingChain chain;
  chain.absorbing.assign(size, 0);
  for (int i = 0; i < size; ++i) {
    if (matrix(i, i) == 1.0 && matrix.row(i).sum() == 1.0)
      chain.absorbing[i] = 1;
  }
  chain.P = std::move(matrix);
  return chain;
}

void make_absorbing(AbsorbingChain& chain, int index) {
  if (index < 0 || index >= chain.size())
    throw ShapeError("absorbing index out of range");
  if (chain.absorbing[index]) throw AlreadyAbsorbing(index);
  chain.P.row(index).setZero();
  chain.P(index, index) = 1.0;
  chain.absorbing[index] = 1;
}

Eigen::VectorXd sample_batch(const AbsorbingChain& chain,
                             const SamplerConfig& cfg, int batch_index) {
  validate(cfg);
  const std::vector<int> transient = chain.transient_states();
  if (transient.empty() && chain.absorbing_count() == 0)
    throw ShapeError("empty chain");
  const int max_len = resolved_max_length(chain, cfg);
  const RowMajor cdf = row_cdfs(chain.P);

  auto run_walks = [&](int first, int last, Eigen::VectorXd& counts) {
    for (int w = first; w < last; ++w) {
      SplitMix64 rng(derive_stream(cfg.seed, batch_index, w));
      int state;
      if (transient.empty()) {
        state = static_cast<int>(rng.next_below(chain.size()));
      } else {
        state = transient[rng.next_below(transient.size())];
      }
      counts[state] += 1.0;
      for (int step = 0; step < max_len && !chain.absorbing[state]; ++step) {
        state = sample_row(cdf, state, rng.next_double());
        counts[state] += 1.0;
      }
    }
  };

  const int threads = std::min(resolved_threads(cfg), cfg.walks_per_batch);
  if (threads <= 1) {
    Eigen::VectorXd counts = Eigen::VectorXd::Zero(chain.size());
    run_walks(0, cfg.walks_per_batch, counts);
    return counts;
  }
  std::vector<Eigen::VectorXd> partial(threads,
                                       Eigen::VectorXd::Zero(chain.size()));
  std::vector<std::thread> workers;
  const int per = (cfg.walks_per_batch + threads - 1) / threads;
  for (int t = 0; t < threads; ++t) {
    int first = t * per;
    int last = std::min(cfg.walks_per_batch, first + per);
    if (first >= last) break;
    workers.emplace_back(
        [&, t, first, last] { run_walks(first, last, partial[t]); });
  }
  for (auto& w : workers) w.join();
  Eigen::VectorXd counts = Eigen::VectorXd::Zero(chain.size());
  for (const auto& p : partial) counts += p;
  return counts;
}

VisitEstimate estimate_distribution(const AbsorbingChain& chain,
                                    const SamplerConfig& cfg) {
  validate(cfg);
  VisitEstimate est;
  est.counts = Eigen::VectorXd::Zero(chain.size());
  Eigen::VectorXd previous;
  for (int batch = 0; batch < cfg.max_batches; ++batch) {
    est.counts += sample_batch(chain, cfg, batch);
    est.batches = batch + 1;
    Eigen::VectorXd current = smoothed_distribution(est.counts, cfg.smoothing);
    if (previous.size() > 0 &&
        kl_divergence(previous, current) <= cfg.kappa) {
      est.distribution = std::move(current);
      est.converged = true;
      return est;
    }
    previous = std::move(current);
  }
  est.distribution = previous;
  est.converged = false;
  return est;
}

Eigen::MatrixXd exact_expected_visits(const AbsorbingChain& chain) {
  const std::vector<int> transient = chain.transient_states();
  const int t = static_cast<int>(transient.size());
  Eigen::MatrixXd Q(t, t);
  for (int i = 0; i < t; ++i)
    for (int j = 0; j < t; ++j) Q(i, j) = chain.P(transient[i], transient[j]);
  Eigen::MatrixXd A = Eigen::MatrixXd::Identity(t, t) - Q;
  Eigen::FullPivLU<Eigen::MatrixXd> lu(A);
  if (!lu.isInvertible()) throw NoAbsorptionPath();
  return lu.inverse();
}

std::vector<int> rank_all(const Eigen::MatrixXd& matrix,
                          const Eigen::VectorXd& pi0, const SamplerConfig& cfg,
                          std::vector<RankStep>* audit, int max_rounds) {
  const int size = static_cast<int>(matrix.rows());
  if (pi0.size() != size) throw ShapeError("pi0 length mismatch");
  const int rounds = max_rounds > 0 ? std::min(max_rounds, size) : size;

  AbsorbingChain chain = as_absorbing_chain(matrix);
  std::vector<char> ranked(size, 0);
  std::vector<int> order;
  Eigen::VectorXd pi = pi0;
  bool step_converged = true;
  int step_batches = 0;

  for (int round = 0; round < rounds; ++round) {
    int best = -1;
    for (int i = 0; i < size; ++i) {
      if (ranked[i]) continue;
      if (best < 0 || pi[i] > pi[best]) best = i;  // ties keep the lower index
    }
    if (audit) audit->push_back({best, pi, step_converged, step_batches});
    ranked[best] = 1;
    order.push_back(best);
    if (static_cast<int>(order.size()) == size) break;

    if (!chain.absorbing[best]) make_absorbing(chain, best);
    SamplerConfig step_cfg = cfg;
    step_cfg.seed = derive_stream(cfg.seed, 0x9a41, round);
    VisitEstimate est = estimate_distribution(chain, step_cfg);
    pi = est.distribution;
    step_converged = est.converged;
    step_batches = est.batches;
  }

  // round budget exhausted: order the tail by the last estimate
  std::vector<int> rest;
  for (int i = 0; i < size; ++i)
    if (!ranked[i]) rest.push_back(i);
  std::stable_sort(rest.begin(), rest.end(),
                   [&](int a, int b) { return pi[a] > pi[b]; });
  order.insert(order.end(), rest.begin(), rest.end());
  return order;
}

}  // namespace reprank

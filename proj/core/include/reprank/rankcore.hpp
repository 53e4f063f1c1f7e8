#ifndef REPRANK_RANKCORE_HPP
#define REPRANK_RANKCORE_HPP

#include <Eigen/Core>
#include <iosfwd>
#include <vector>

#include "reprank/simgraph.hpp"

namespace reprank {

enum class SolverKind { Power, Direct };

struct RankConfig {
  double alpha = 0.70;
  double beta = 0.05;
  double gamma = 0.25;
  SolverKind solver = SolverKind::Power;
  double tolerance = 1e-10;  // L1 change between power iterates
  int max_iterations = 100000;

  void validate() const;
};

struct ExpandedChain {
  Eigen::MatrixXd P;  // (n+m) x (n+m), row stochastic, strictly positive
  int n = 0;          // sentence rows 0..n-1
  int m = 0;          // word rows n..n+m-1
};

struct RankDistribution {
  Eigen::VectorXd pi;
  int iterations = 0;
  double residual = 0.0;  // ||pi P - pi||_1 at the solution
};

// Assembles the joint sentence+word chain:
//   [ alpha Ps~ + beta 1 Vs   |  gamma 1 Vw + Mw~ ]
//   [ Ms~ + gamma 1 Vs        |  alpha Pw~ + beta 1 Vw ]
// then row-normalizes. Strictly positive priors make every entry positive.
ExpandedChain build_expanded(const StochasticBlocks& blocks,
                             const Eigen::VectorXd& Vs,
                             const Eigen::VectorXd& Vw,
                             const RankConfig& cfg);

// Left power iteration from a uniform start.
RankDistribution stationary_power(const Eigen::MatrixXd& P,
                                  double tolerance = 1e-10,
                                  int max_iterations = 100000);
RankDistribution stationary_power(const Eigen::MatrixXd& P,
                                  const Eigen::VectorXd& start,
                                  double tolerance, int max_iterations);

// Dense solve of pi (P - I) = 0 with sum(pi) = 1.
RankDistribution stationary_direct(const Eigen::MatrixXd& P);

RankDistribution solve_stationary(const Eigen::MatrixXd& P,
                                  const RankConfig& cfg);

enum class Side { Sentence, Word };

// Per-side teleporting chain:
//   sentence: alpha Ps~ + beta 1 ds + gamma 1 (dw Ms~)
//   word:     alpha Pw~ + beta 1 dw + gamma 1 (ds Mw~)
// where ds/dw are strictly positive distributions (priors or renormalized
// stationary marginals).
Eigen::MatrixXd assemble_side(const StochasticBlocks& blocks, Side side,
                              const Eigen::VectorXd& dist_s,
                              const Eigen::VectorXd& dist_w,
                              const RankConfig& cfg);

struct CoupledResult {
  Eigen::VectorXd pi_s;
  Eigen::VectorXd pi_w;
  int outer_iterations = 0;
};

// Alternates the sentence and word eigensystems, feeding each side's
// stationary distribution into the other's teleport term, until both
// change less than the tolerance in L1.
CoupledResult coupled_iterate(const StochasticBlocks& blocks,
                              const Eigen::VectorXd& Vs,
                              const Eigen::VectorXd& Vw, const RankConfig& cfg,
                              double outer_tolerance = 1e-10,
                              int max_outer = 1000);

struct BenchmarkRow {
  int n = 0;
  int m = 0;
  int a = 0;       // m / n
  int c = 0;       // coupled outer iterations
  double iter_ms = 0.0;
  double direct_ms = 0.0;
  long long op_count_margin = 0;  // ((c-1)a^3 - 3a^2 - 3a + c - 1) n^3
};

// Times coupled iteration against expanded-chain direct solve on random
// instances with m = a*n for a in {1,2,4}; CSV header:
// n,m,a,c,iter_ms,direct_ms
std::vector<BenchmarkRow> benchmark_solvers(const std::vector<int>& sizes,
                                            int repetitions, uint64_t seed,
                                            std::ostream* csv = nullptr);

// Random strictly positive row-stochastic matrix, for tests and benchmarks.
Eigen::MatrixXd random_positive_chain(int size, uint64_t seed);

}  // namespace reprank

#endif

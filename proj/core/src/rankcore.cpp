#include "reprank/rankcore.hpp"

#include <Eigen/Dense>
#include <chrono>
#include <cmath>
#include <ostream>

#include "reprank/errors.hpp"
#include "reprank/rng.hpp"

namespace reprank {

namespace {

void check_distribution(const Eigen::VectorXd& d, const char* name) {
  if (d.size() == 0) throw ShapeError(std::string(name) + " is empty");
  if (d.minCoeff() <= 0.0)
    throw ConfigError(std::string(name) + " must be strictly positive");
  if (std::abs(d.sum() - 1.0) > 1e-9)
    throw ConfigError(std::string(name) + " must sum to 1");
}

double elapsed_ms(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(
             std::chrono::steady_clock::now() - t0)
      .count();
}

}  // namespace

void RankConfig::validate() const {
  auto in_unit = [](double x) { return x >= 0.0 && x <= 1.0; };
  if (!in_unit(alpha) || !in_unit(beta) || !in_unit(gamma))
    throw ConfigError("alpha, beta, gamma must lie in [0, 1]");
  if (std::abs(alpha + beta + gamma - 1.0) > 1e-12)
    throw ConfigError("alpha + beta + gamma must equal 1");
  if (beta <= 0.0)
    throw ConfigError("beta must be positive: the prior term guarantees "
                      "ergodicity");
  if (tolerance <= 0.0) throw ConfigError("tolerance must be positive");
  if (max_iterations < 1) throw ConfigError("max_iterations must be >= 1");
}

ExpandedChain build_expanded(const StochasticBlocks& blocks,
                             const Eigen::VectorXd& Vs,
                             const Eigen::VectorXd& Vw,
                             const RankConfig& cfg) {
  cfg.validate();
  check_distribution(Vs, "V^s");
  check_distribution(Vw, "V^w");
  const int n = static_cast<int>(Vs.size());
  const int m = static_cast<int>(Vw.size());
  if (blocks.Ps.rows() != n || blocks.Pw.rows() != m ||
      blocks.Ms.rows() != m || blocks.Ms.cols() != n ||
      blocks.Mw.rows() != n || blocks.Mw.cols() != m)
    throw ShapeError("block dimensions inconsistent with priors");

  const Eigen::VectorXd ones_n = Eigen::VectorXd::Ones(n);
  const Eigen::VectorXd ones_m = Eigen::VectorXd::Ones(m);

  ExpandedChain chain;
  chain.n = n;
  chain.m = m;
  chain.P.resize(n + m, n + m);
  chain.P.topLeftCorner(n, n) =
      cfg.alpha * blocks.Ps + cfg.beta * ones_n * Vs.transpose();
  chain.P.topRightCorner(n, m) =
      cfg.gamma * ones_n * Vw.transpose() + blocks.Mw;
  chain.P.bottomLeftCorner(m, n) =
      blocks.Ms + cfg.gamma * ones_m * Vs.transpose();
  chain.P.bottomRightCorner(m, m) =
      cfg.alpha * blocks.Pw + cfg.beta * ones_m * Vw.transpose();

  for (int i = 0; i < n + m; ++i) {
    double sum = chain.P.row(i).sum();
    if (sum <= 0.0)
      throw NumericalFailure("zero row while assembling the expanded chain");
    chain.P.row(i) /= sum;
  }
  if (chain.P.minCoeff() <= 0.0)
    throw NumericalFailure("expanded chain is not strictly positive");
  return chain;
}

RankDistribution stationary_power(const Eigen::MatrixXd& P,
                                  const Eigen::VectorXd& start,
                                  double tolerance, int max_iterations) {
  const int size = static_cast<int>(P.rows());
  if (P.cols() != size) throw ShapeError("chain matrix must be square");
  if (start.size() != size) throw ShapeError("start vector length mismatch");

  Eigen::VectorXd pi = start / start.sum();
  Eigen::VectorXd next(size);
  double change = 0.0;
  for (int it = 1; it <= max_iterations; ++it) {
    next.noalias() = P.transpose() * pi;
    next /= next.sum();
    change = (next - pi).lpNorm<1>();
    pi.swap(next);
    if (change < tolerance) {
      RankDistribution out;
      out.pi = pi;
      out.iterations = it;
      out.residual = (P.transpose() * pi - pi).lpNorm<1>();
      return out;
    }
  }
  throw SolverDiverged(max_iterations, change);
}

RankDistribution stationary_power(const Eigen::MatrixXd& P, double tolerance,
                                  int max_iterations) {
  const int size = static_cast<int>(P.rows());
  return stationary_power(
      P, Eigen::VectorXd::Constant(size, 1.0 / size), tolerance,
      max_iterations);
}

RankDistribution stationary_direct(const Eigen::MatrixXd& P) {
  const int size = static_cast<int>(P.rows());
  if (P.cols() != size) throw ShapeError("chain matrix must be square");

  // pi (P - I) = 0 with the last equation replaced by sum(pi) = 1.
  Eigen::MatrixXd A = P.transpose() - Eigen::MatrixXd::Identity(size, size);
  A.row(size - 1).setOnes();
  Eigen::VectorXd b = Eigen::VectorXd::Zero(size);
  b[size - 1] = 1.0;

  Eigen::FullPivLU<Eigen::MatrixXd> lu(A);
  if (!lu.isInvertible())
    throw NumericalFailure("stationary system singular beyond rank-1");
  Eigen::VectorXd pi = lu.solve(b);
  pi /= pi.sum();

  RankDistribution out;
  out.pi = pi;
  out.iterations = 0;
  out.residual = (P.transpose() * pi - pi).lpNorm<1>();
  return out;
}

RankDistribution solve_stationary(const Eigen::MatrixXd& P,
                                  const RankConfig& cfg) {
  return cfg.solver == SolverKind::Direct
             ? stationary_direct(P)
             : stationary_power(P, cfg.tolerance, cfg.max_iterations);
}

Eigen::MatrixXd assemble_side(const StochasticBlocks& blocks, Side side,
                              const Eigen::VectorXd& dist_s,
                              const Eigen::VectorXd& dist_w,
                              const RankConfig& cfg) {
  cfg.validate();
  check_distribution(dist_s, "sentence distribution");
  check_distribution(dist_w, "word distribution");
  const int n = static_cast<int>(dist_s.size());
  const int m = static_cast<int>(dist_w.size());
  if (blocks.Ps.rows() != n || blocks.Pw.rows() != m ||
      blocks.Ms.cols() != n || blocks.Mw.cols() != m)
    throw ShapeError("block dimensions inconsistent with distributions");

  if (side == Side::Sentence) {
    // teleport row: gamma * (dw Ms~), itself a distribution over sentences
    Eigen::RowVectorXd votes = dist_w.transpose() * blocks.Ms;
    return cfg.alpha * blocks.Ps +
           Eigen::VectorXd::Ones(n) *
               (cfg.beta * dist_s.transpose() + cfg.gamma * votes);
  }
  Eigen::RowVectorXd votes = dist_s.transpose() * blocks.Mw;
  return cfg.alpha * blocks.Pw +
         Eigen::VectorXd::Ones(m) *
             (cfg.beta * dist_w.transpose() + cfg.gamma * votes);
}

CoupledResult coupled_iterate(const StochasticBlocks& blocks,
                              const Eigen::VectorXd& Vs,
                              const Eigen::VectorXd& Vw, const RankConfig& cfg,
                              double outer_tolerance, int max_outer) {
  cfg.validate();
  check_distribution(Vs, "V^s");
  check_distribution(Vw, "V^w");

  CoupledResult result;
  result.pi_s = Vs;
  result.pi_w = Vw;
  for (int outer = 1; outer <= max_outer; ++outer) {
    Eigen::MatrixXd Ps_hat =
        assemble_side(blocks, Side::Sentence, Vs, result.pi_w, cfg);
    Eigen::VectorXd new_s = solve_stationary(Ps_hat, cfg).pi;
    Eigen::MatrixXd Pw_hat =
        assemble_side(blocks, Side::Word, new_s, Vw, cfg);
    Eigen::VectorXd new_w = solve_stationary(Pw_hat, cfg).pi;

    double change = (new_s - result.pi_s).lpNorm<1>() +
                    (new_w - result.pi_w).lpNorm<1>();
    result.pi_s = std::move(new_s);
    result.pi_w = std::move(new_w);
    result.outer_iterations = outer;
    if (change < outer_tolerance) return result;
    if (cfg.gamma == 0.0) return result;  // sides decouple, one pass suffices
  }
  throw SolverDiverged(max_outer, -1.0);
}

Eigen::MatrixXd random_positive_chain(int size, uint64_t seed) {
  SplitMix64 rng(seed);
  Eigen::MatrixXd P(size, size);
  for (int i = 0; i < size; ++i) {
    for (int j = 0; j < size; ++j) P(i, j) = rng.next_range(0.05, 1.0);
    P.row(i) /= P.row(i).sum();
  }
  return P;
}

namespace {

// Random similarity-shaped instance with n sentences and m words.
void random_instance(int n, int m, uint64_t seed, StochasticBlocks& blocks,
                     Eigen::VectorXd& Vs, Eigen::VectorXd& Vw) {
  SplitMix64 rng(seed);
  auto random_nonneg = [&](int rows, int cols, bool zero_diag) {
    Eigen::MatrixXd M(rows, cols);
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j)
        M(i, j) = rng.next_double() < 0.3 ? rng.next_double() : 0.0;
    if (zero_diag) M.diagonal().setZero();
    return M;
  };
  SimilarityGraph g;
  Eigen::MatrixXd ps = random_nonneg(n, n, true);
  g.Ps = 0.5 * (ps + ps.transpose());
  Eigen::MatrixXd pw = random_nonneg(m, m, true);
  g.Pw = 0.5 * (pw + pw.transpose());
  g.Ms = random_nonneg(m, n, false);
  g.Mw = g.Ms.transpose();

  Vs.resize(n);
  for (int i = 0; i < n; ++i) Vs[i] = rng.next_range(0.5, 1.5);
  Vs /= Vs.sum();
  Vw.resize(m);
  for (int i = 0; i < m; ++i) Vw[i] = rng.next_range(0.5, 1.5);
  Vw /= Vw.sum();
  blocks = normalize_graph(g, Vs, Vw);
}

}  // namespace

std::vector<BenchmarkRow> benchmark_solvers(const std::vector<int>& sizes,
                                            int repetitions, uint64_t seed,
                                            std::ostream* csv) {
  if (csv) *csv << "n,m,a,c,iter_ms,direct_ms\n";
  std::vector<BenchmarkRow> rows;
  RankConfig cfg;
  for (int n : sizes) {
    for (int a : {1, 2, 4}) {
      const int m = a * n;
      BenchmarkRow row;
      row.n = n;
      row.m = m;
      row.a = a;
      for (int rep = 0; rep < repetitions; ++rep) {
        StochasticBlocks blocks;
        Eigen::VectorXd Vs, Vw;
        random_instance(n, m, derive_stream(seed, n, a * 1000 + rep), blocks,
                        Vs, Vw);

        auto t0 = std::chrono::steady_clock::now();
        CoupledResult coupled = coupled_iterate(blocks, Vs, Vw, cfg);
        row.iter_ms += elapsed_ms(t0);
        row.c = std::max(row.c, coupled.outer_iterations);

        t0 = std::chrono::steady_clock::now();
        ExpandedChain chain = build_expanded(blocks, Vs, Vw, cfg);
        stationary_direct(chain.P);
        row.direct_ms += elapsed_ms(t0);
      }
      row.iter_ms /= repetitions;
      row.direct_ms /= repetitions;
      const long long c = row.c;
      const long long la = a;
      const long long n3 = static_cast<long long>(n) * n * n;
      row.op_count_margin =
          ((c - 1) * la * la * la - 3 * la * la - 3 * la + c - 1) * n3;
      if (csv)
        *csv << row.n << ',' << row.m << ',' << row.a << ',' << row.c << ','
             << row.iter_ms << ',' << row.direct_ms << '\n';
      rows.push_back(row);
    }
  }
  return rows;
}

}  // namespace reprank

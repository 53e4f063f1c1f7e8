#ifndef REPRANK_SIMGRAPH_HPP
#define REPRANK_SIMGRAPH_HPP

#include <Eigen/Core>
#include <vector>

namespace reprank {

struct Thresholds {
  double ss = 0.45;  // sentence-to-sentence
  double sw = 0.30;  // sentence-to-word
  double ww = 0.20;  // word-to-word
};

// Cosine similarity gated by a threshold: 0 when cos <= eps, when the
// indices coincide, or when either vector is zero. Values below 0 never
// pass because eps is clamped at 0.
double thresholded_cosine(const Eigen::VectorXd& vi, const Eigen::VectorXd& vj,
                          double eps, bool same_index);

struct SimilarityGraph {
  Eigen::MatrixXd Ps;  // n x n, symmetric, zero diagonal
  Eigen::MatrixXd Pw;  // m x m, symmetric, zero diagonal
  Eigen::MatrixXd Ms;  // m x n, word-to-sentence
  Eigen::MatrixXd Mw;  // n x m, = Ms^T
  Thresholds thresholds;
};

SimilarityGraph build_graph(const Eigen::MatrixXd& sentence_vecs,
                            const Eigen::MatrixXd& concept_vecs,
                            const Thresholds& thresholds = {});

struct RowNormalized {
  Eigen::MatrixXd matrix;
  std::vector<int> fallback_rows;  // rows replaced by the prior
};

// Divides each row by its sum; all-zero rows take the fallback distribution.
RowNormalized row_normalize(const Eigen::MatrixXd& matrix,
                            const Eigen::VectorXd& fallback);

struct StochasticBlocks {
  Eigen::MatrixXd Ps, Pw, Ms, Mw;  // every row sums to 1
  std::vector<int> fallback_s, fallback_w, fallback_ms, fallback_mw;
};

// Normalizes all four blocks; sentence-target rows (Ps, Ms) fall back to
// V^s and word-target rows (Pw, Mw) to V^w.
StochasticBlocks normalize_graph(const SimilarityGraph& graph,
                                 const Eigen::VectorXd& Vs,
                                 const Eigen::VectorXd& Vw);

}  // namespace reprank

#endif

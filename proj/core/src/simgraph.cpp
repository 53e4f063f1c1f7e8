#include "reprank/simgraph.hpp"

#include <algorithm>
#include <cmath>

#include "reprank/errors.hpp"

namespace reprank {

double thresholded_cosine(const Eigen::VectorXd& vi, const Eigen::VectorXd& vj,
                          double eps, bool same_index) {
  if (same_index) return 0.0;
  eps = std::max(eps, 0.0);
  double ni = vi.norm();
  double nj = vj.norm();
  if (ni == 0.0 || nj == 0.0) return 0.0;
  double cos = vi.dot(vj) / (ni * nj);
  return cos > eps ? cos : 0.0;
}

SimilarityGraph build_graph(const Eigen::MatrixXd& sentence_vecs,
                            const Eigen::MatrixXd& concept_vecs,
                            const Thresholds& thresholds) {
  const int n = static_cast<int>(sentence_vecs.rows());
  const int m = static_cast<int>(concept_vecs.rows());
  if (n < 1 || m < 1) throw ShapeError("need at least one sentence and word");
  if (sentence_vecs.cols() != concept_vecs.cols())
    throw ShapeError("sentence and concept vectors differ in dimension");

  SimilarityGraph g;
  g.thresholds = thresholds;
  g.Ps = Eigen::MatrixXd::Zero(n, n);
  g.Pw = Eigen::MatrixXd::Zero(m, m);
  g.Ms = Eigen::MatrixXd::Zero(m, n);

  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      double e = thresholded_cosine(sentence_vecs.row(i), sentence_vecs.row(j),
                                    thresholds.ss, false);
      g.Ps(i, j) = g.Ps(j, i) = e;
    }
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j) {
      double e = thresholded_cosine(concept_vecs.row(i), concept_vecs.row(j),
                                    thresholds.ww, false);
      g.Pw(i, j) = g.Pw(j, i) = e;
    }
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < n; ++j)
      g.Ms(i, j) = thresholded_cosine(concept_vecs.row(i),
                                      sentence_vecs.row(j), thresholds.sw,
                                      false);
  g.Mw = g.Ms.transpose();
  return g;
}

RowNormalized row_normalize(const Eigen::MatrixXd& matrix,
                            const Eigen::VectorXd& fallback) {
  if (fallback.size() != matrix.cols())
    throw ShapeError("fallback length must equal column count");
  if (fallback.minCoeff() <= 0.0)
    throw ConfigError("fallback distribution must be strictly positive");

  RowNormalized out;
  out.matrix = matrix;
  for (int i = 0; i < matrix.rows(); ++i) {
    double sum = matrix.row(i).sum();
    if (sum > 0.0) {
      out.matrix.row(i) /= sum;
    } else {
      out.matrix.row(i) = fallback.transpose();
      out.fallback_rows.push_back(i);
    }
  }
  return out;
}

StochasticBlocks normalize_graph(const SimilarityGraph& graph,
                                 const Eigen::VectorXd& Vs,
                                 const Eigen::VectorXd& Vw) {
  StochasticBlocks b;
  RowNormalized ps = row_normalize(graph.Ps, Vs);
  RowNormalized pw = row_normalize(graph.Pw, Vw);
  RowNormalized ms = row_normalize(graph.Ms, Vs);
  RowNormalized mw = row_normalize(graph.Mw, Vw);
  b.Ps = std::move(ps.matrix);
  b.Pw = std::move(pw.matrix);
  b.Ms = std::move(ms.matrix);
  b.Mw = std::move(mw.matrix);
  b.fallback_s = std::move(ps.fallback_rows);
  b.fallback_w = std::move(pw.fallback_rows);
  b.fallback_ms = std::move(ms.fallback_rows);
  b.fallback_mw = std::move(mw.fallback_rows);
  return b;
}

}  // namespace reprank

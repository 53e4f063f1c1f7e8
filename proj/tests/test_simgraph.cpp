#include <doctest.h>

#include <cmath>

#include "reprank/errors.hpp"
#include "reprank/rng.hpp"
#include "reprank/simgraph.hpp"

using namespace reprank;

namespace {

Eigen::MatrixXd random_vectors(int rows, int dim, uint64_t seed) {
  SplitMix64 rng(seed);
  Eigen::MatrixXd m(rows, dim);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < dim; ++j) m(i, j) = rng.next_range(-1.0, 1.0);
  return m;
}

int nonzeros(const Eigen::MatrixXd& m) {
  return static_cast<int>((m.array() != 0.0).count());
}

}  // namespace

TEST_CASE("thresholded cosine follows the gate rules") {
  Eigen::VectorXd e1(2), e2(2), ones(2);
  e1 << 1, 0;
  e2 << 0, 1;
  ones << 1, 1;

  CHECK(thresholded_cosine(e1, e1, 0.0, true) == 0.0);   // i == j
  CHECK(thresholded_cosine(e1, e2, 0.2, false) == 0.0);  // cos = 0 below eps
  CHECK(thresholded_cosine(ones, e1, 0.45, false) ==
        doctest::Approx(1.0 / std::sqrt(2.0)));
  Eigen::VectorXd zero = Eigen::VectorXd::Zero(2);
  CHECK(thresholded_cosine(zero, e1, 0.0, false) == 0.0);
  // negative threshold is clamped: anti-parallel vectors still give 0
  CHECK(thresholded_cosine(e1, -e1, -1.0, false) == 0.0);
}

TEST_CASE("build_graph uses the default thresholds and symmetry") {
  Thresholds t;
  CHECK(t.ss == 0.45);
  CHECK(t.sw == 0.30);
  CHECK(t.ww == 0.20);

  Eigen::MatrixXd sents(2, 2);
  sents << 1, 0, 1, 0;  // identical sentence vectors
  Eigen::MatrixXd words(2, 2);
  words << 1, 0, 0, 1;
  SimilarityGraph g = build_graph(sents, words, t);
  CHECK(g.Ps(0, 1) == doctest::Approx(1.0));
  CHECK(g.Ps(1, 0) == doctest::Approx(1.0));
  CHECK(g.Ps(0, 0) == 0.0);
  CHECK(g.Pw(0, 1) == 0.0);  // orthogonal words
  CHECK((g.Mw - g.Ms.transpose()).norm() == 0.0);
}

TEST_CASE("orthogonal vectors give an all-zero graph") {
  Eigen::MatrixXd sents = Eigen::MatrixXd::Identity(3, 3);
  SimilarityGraph g = build_graph(sents, sents, {});
  CHECK(g.Ps.norm() == 0.0);
  CHECK(g.Pw.norm() == 0.0);
}

TEST_CASE("graph symmetry on random vectors") {
  Eigen::MatrixXd sents = random_vectors(8, 5, 11);
  Eigen::MatrixXd words = random_vectors(12, 5, 13);
  SimilarityGraph g = build_graph(sents, words, {0.1, 0.1, 0.1});
  CHECK((g.Ps - g.Ps.transpose()).norm() == 0.0);
  CHECK((g.Pw - g.Pw.transpose()).norm() == 0.0);
  CHECK(g.Ps.diagonal().norm() == 0.0);
  CHECK(g.Pw.diagonal().norm() == 0.0);
  CHECK(g.Ps.minCoeff() >= 0.0);
  CHECK(g.Ps.maxCoeff() < 1.0);
}

TEST_CASE("raising a threshold never adds nonzeros") {
  Eigen::MatrixXd sents = random_vectors(10, 4, 29);
  Eigen::MatrixXd words = random_vectors(10, 4, 31);
  int prev = -1;
  for (double eps : {0.0, 0.2, 0.45, 0.7, 0.95}) {
    SimilarityGraph g = build_graph(sents, words, {eps, eps, eps});
    int nz = nonzeros(g.Ps) + nonzeros(g.Pw) + nonzeros(g.Ms);
    if (prev >= 0) CHECK(nz <= prev);
    prev = nz;
  }
}

TEST_CASE("row_normalize divides by row sums") {
  Eigen::MatrixXd m(1, 3);
  m << 1, 1, 2;
  Eigen::VectorXd fallback(3);
  fallback << 0.2, 0.3, 0.5;
  RowNormalized r = row_normalize(m, fallback);
  CHECK(r.matrix(0, 0) == doctest::Approx(0.25));
  CHECK(r.matrix(0, 2) == doctest::Approx(0.5));
  CHECK(r.fallback_rows.empty());
}

TEST_CASE("all-zero rows take the fallback and get flagged") {
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(2, 3);
  m(0, 1) = 4;
  Eigen::VectorXd fallback(3);
  fallback << 0.2, 0.3, 0.5;
  RowNormalized r = row_normalize(m, fallback);
  CHECK(r.fallback_rows == std::vector<int>{1});
  CHECK((r.matrix.row(1).transpose() - fallback).norm() == 0.0);
  CHECK(r.matrix(0, 1) == 1.0);
}

TEST_CASE("normalization is idempotent on stochastic rows") {
  Eigen::MatrixXd m(1, 2);
  m << 0.25, 0.75;
  Eigen::VectorXd fallback(2);
  fallback << 0.5, 0.5;
  RowNormalized r = row_normalize(m, fallback);
  CHECK((r.matrix - m).norm() == 0.0);
}

TEST_CASE("every normalized block row is a distribution") {
  Eigen::MatrixXd sents = random_vectors(6, 4, 101);
  Eigen::MatrixXd words = random_vectors(9, 4, 103);
  SimilarityGraph g = build_graph(sents, words, {0.3, 0.3, 0.3});
  Eigen::VectorXd Vs = Eigen::VectorXd::Constant(6, 1.0 / 6);
  Eigen::VectorXd Vw = Eigen::VectorXd::Constant(9, 1.0 / 9);
  StochasticBlocks b = normalize_graph(g, Vs, Vw);
  for (const Eigen::MatrixXd* m : {&b.Ps, &b.Pw, &b.Ms, &b.Mw}) {
    for (int i = 0; i < m->rows(); ++i)
      CHECK(m->row(i).sum() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(m->minCoeff() >= 0.0);
  }
}

#include <doctest.h>
#include <unistd.h>

#include <filesystem>
#include <fstream>

#include "reprank/corpus.hpp"
#include "reprank/embeddings.hpp"
#include "reprank/errors.hpp"

using namespace reprank;
namespace fs = std::filesystem;

namespace {

fs::path write_temp(const std::string& content) {
  static int counter = 0;
  fs::path p = fs::temp_directory_path() /
               ("reprank_emb_" + std::to_string(::getpid()) + "_" +
                std::to_string(counter++) + ".txt");
  std::ofstream(p) << content;
  return p;
}

Eigen::VectorXd vec2(double a, double b) {
  Eigen::VectorXd v(2);
  v << a, b;
  return v;
}

}  // namespace

TEST_CASE("load_embeddings parses the text vector format") {
  fs::path p = write_temp("cat 1 0\ndog 0 1\n");
  EmbeddingTable t = load_embeddings(p);
  CHECK(t.dim() == 2);
  CHECK(t.size() == 2);
  CHECK((*t.find("cat") - vec2(1, 0)).norm() == 0.0);
  fs::remove(p);
}

TEST_CASE("duplicate words keep the first occurrence") {
  fs::path p = write_temp("cat 1 0\ncat 9 9\n");
  EmbeddingTable t = load_embeddings(p);
  CHECK(t.size() == 1);
  CHECK((*t.find("cat"))[0] == 1.0);
  fs::remove(p);
}

TEST_CASE("bad numbers and ragged dimensions are rejected") {
  fs::path p1 = write_temp("cat 1 x\n");
  CHECK_THROWS_AS(load_embeddings(p1), ParseError);
  fs::remove(p1);
  fs::path p2 = write_temp("cat 1 0\ndog 1 2 3\n");
  CHECK_THROWS_AS(load_embeddings(p2), DimensionMismatch);
  fs::remove(p2);
}

TEST_CASE("save then load round-trips the table") {
  EmbeddingTable t(2, "test");
  t.insert("cat", vec2(1.5, -0.25));
  t.insert("dog", vec2(0, 3));
  fs::path p = write_temp("");
  save_embeddings(t, p);
  EmbeddingTable back = load_embeddings(p);
  CHECK(back.size() == 2);
  CHECK((*back.find("cat") - vec2(1.5, -0.25)).norm() == 0.0);
  fs::remove(p);
}

TEST_CASE("concept vectors: mean of parts, fallback, absence") {
  EmbeddingTable t(2, "test");
  t.insert("cat", vec2(1, 0));
  t.insert("dog", vec2(0, 1));

  auto bigram = concept_vector({"cat", "dog", 1}, t);
  REQUIRE(bigram.has_value());
  CHECK((*bigram - vec2(0.5, 0.5)).norm() == 0.0);

  CHECK_FALSE(concept_vector({"bird", "", 1}, t).has_value());

  auto partial = concept_vector({"cat", "bird", 1}, t);
  REQUIRE(partial.has_value());
  CHECK((*partial - vec2(1, 0)).norm() == 0.0);
}

TEST_CASE("reindexing drops absent concepts and preserves order") {
  EmbeddingTable t(2, "test");
  t.insert("cat", vec2(1, 0));
  t.insert("dog", vec2(0, 1));
  ConceptVocab vocab;
  vocab.concepts = {{"bird", "", 1}, {"cat", "", 2}, {"dog", "", 3},
                    {"bird", "fish", 1}};
  ConceptVectors cv = resolve_concept_vectors(vocab, t);
  REQUIRE(vocab.size() == 2);
  CHECK(vocab.concepts[0].text() == "cat");
  CHECK(vocab.concepts[1].text() == "dog");
  CHECK(cv.kept == std::vector<int>{1, 2});
  CHECK(cv.coverage == doctest::Approx(0.5));
  CHECK(cv.vectors.rows() == 2);
}

TEST_CASE("average sentence representation skips out-of-table tokens") {
  EmbeddingTable t(2, "test");
  t.insert("cat", vec2(2, 2));
  t.insert("dog", vec2(0, 1));

  Corpus c = make_corpus({{"cat dog", "cat oov", "oov gone"}}, {});
  Eigen::VectorXd both = average_sentence_rep(c.documents[0].sentences[0], t);
  CHECK((both - vec2(1, 1.5)).norm() == 0.0);

  Eigen::VectorXd skip = average_sentence_rep(c.documents[0].sentences[1], t);
  CHECK((skip - vec2(2, 2)).norm() == 0.0);

  CHECK_THROWS_AS(average_sentence_rep(c.documents[0].sentences[2], t),
                  UnrepresentableSentence);
}

TEST_CASE("averaged representation stays in the per-coordinate hull") {
  EmbeddingTable t(3, "test");
  Eigen::VectorXd a(3), b(3), c(3);
  a << -1, 2, 0.5;
  b << 4, -3, 0.25;
  c << 0, 0, 9;
  t.insert("one", a);
  t.insert("two", b);
  t.insert("three", c);
  Corpus corp = make_corpus({{"one two three"}}, {});
  Eigen::VectorXd rep = average_sentence_rep(corp.documents[0].sentences[0], t);
  for (int i = 0; i < 3; ++i) {
    double lo = std::min({a[i], b[i], c[i]});
    double hi = std::max({a[i], b[i], c[i]});
    CHECK(rep[i] >= lo);
    CHECK(rep[i] <= hi);
  }
}

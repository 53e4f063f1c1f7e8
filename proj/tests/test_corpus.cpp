#include <doctest.h>

#include <unistd.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <set>

#include "reprank/corpus.hpp"
#include "reprank/errors.hpp"
#include "reprank/rng.hpp"

using namespace reprank;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() /
           ("reprank_test_" + std::to_string(::getpid()) + "_" +
            std::to_string(counter++));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  void write(const std::string& name, const std::string& content) {
    std::ofstream(path / name) << content;
  }
  static inline int counter = 0;
};

}  // namespace

TEST_CASE("presegmented loading keeps one sentence per line") {
  TempDir dir;
  dir.write("a.txt", "A.\nB.\n");
  Corpus c = load_cluster(dir.path, ClusterFormat::Presegmented);
  REQUIRE(c.documents.size() == 1);
  REQUIRE(c.documents[0].sentences.size() == 2);
  CHECK(c.documents[0].sentences[0].position == 1);
  CHECK(c.documents[0].sentences[1].position == 2);
  CHECK(c.documents[0].sentences[1].global_index == 1);
}

TEST_CASE("documents are ordered lexicographically by filename") {
  TempDir dir;
  dir.write("b.txt", "From b.\n");
  dir.write("a.txt", "From a.\n");
  Corpus c = load_cluster(dir.path, ClusterFormat::Presegmented);
  REQUIRE(c.documents.size() == 2);
  CHECK(c.documents[0].id == "a.txt");
  CHECK(c.documents[1].id == "b.txt");
}

TEST_CASE("plain segmentation guards abbreviations") {
  TempDir dir;
  dir.write("d.txt", "Mr. Smith went home. He slept.");
  Corpus c = load_cluster(dir.path, ClusterFormat::Plain);
  REQUIRE(c.documents[0].sentences.size() == 2);
  CHECK(c.documents[0].sentences[0].text == "Mr. Smith went home.");
  CHECK(c.documents[0].sentences[1].text == "He slept.");
}

TEST_CASE("segmentation splits on terminator + whitespace + uppercase") {
  auto s = segment_sentences("The cat sat! Was it asleep? No. it kept going.");
  REQUIRE(s.size() == 3);
  CHECK(s[0] == "The cat sat!");
  CHECK(s[1] == "Was it asleep?");
  // lowercase continuation after "No." does not end the sentence
  CHECK(s[2] == "No. it kept going.");
}

TEST_CASE("empty directory raises NoDocuments") {
  TempDir dir;
  CHECK_THROWS_AS(load_cluster(dir.path, ClusterFormat::Plain), NoDocuments);
}

TEST_CASE("document with no sentences raises EmptyDocument") {
  TempDir dir;
  dir.write("a.txt", "...\n\n");
  CHECK_THROWS_AS(load_cluster(dir.path, ClusterFormat::Presegmented),
                  EmptyDocument);
}

TEST_CASE("segmentation preserves the token multiset") {
  const std::string text =
      "The quick brown fox jumps over the lazy dog. It barked! "
      "Dr. Jones was not amused. What a day it had been?";
  auto whole = tokenize(text);
  std::multiset<std::string> expected(whole.begin(), whole.end());
  std::multiset<std::string> actual;
  for (const auto& sent : segment_sentences(text))
    for (const auto& tok : tokenize(sent)) actual.insert(tok);
  CHECK(actual == expected);
}

TEST_CASE("tokenize keeps intra-word hyphens and apostrophes") {
  auto t = tokenize("It's a well-known fact; 'quoted' words stay.");
  CHECK(t == std::vector<std::string>{"it's", "a", "well-known", "fact",
                                      "quoted", "words", "stay"});
}

TEST_CASE("build_vocab separates unigrams and bigrams") {
  Corpus c = make_corpus({{"big red fox"}}, {});
  ConceptVocab v = build_vocab(c, 1);
  REQUIRE(v.size() == 5);
  CHECK(v.concepts[0].text() == "big");
  CHECK(v.concepts[1].text() == "fox");
  CHECK(v.concepts[2].text() == "red");
  CHECK(v.concepts[3].text() == "big_red");
  CHECK(v.concepts[4].text() == "red_fox");
}

TEST_CASE("stopwords remove unigrams and suppress cross-stopword bigrams") {
  Corpus c = make_corpus({{"a cat", "a dog"}}, {"a"});
  ConceptVocab v = build_vocab(c, 1);
  REQUIRE(v.size() == 2);
  CHECK(v.concepts[0].text() == "cat");
  CHECK(v.concepts[1].text() == "dog");
}

TEST_CASE("min_count drops rare concepts") {
  Corpus c = make_corpus({{"cat cat dog"}}, {});
  ConceptVocab v = build_vocab(c, 2);
  REQUIRE(v.size() == 1);
  CHECK(v.concepts[0].text() == "cat");
  CHECK(v.concepts[0].frequency == 2);
}

TEST_CASE("all-stopword corpus raises EmptyVocabulary") {
  Corpus c = make_corpus({{"the of and"}});
  CHECK_THROWS_AS(build_vocab(c, 1), EmptyVocabulary);
}

TEST_CASE("position prior matches the closed form") {
  Corpus c = make_corpus({{"First one.", "Second one."}}, {});
  Eigen::VectorXd v = position_prior(c, 0.25);
  const double w2 = std::pow(2.0, -0.25);
  CHECK(v[0] == doctest::Approx(1.0 / (1.0 + w2)).epsilon(1e-12));
  CHECK(v[1] == doctest::Approx(w2 / (1.0 + w2)).epsilon(1e-12));
  CHECK(v.sum() == doctest::Approx(1.0).epsilon(1e-12));
  // rho = 16, tau = 0.25 gives unnormalized weight 0.5
  CHECK(std::pow(16.0, -0.25) == doctest::Approx(0.5));
}

TEST_CASE("position prior restarts rho per document and is monotone") {
  std::vector<std::vector<std::string>> docs(2);
  for (int i = 0; i < 5; ++i) {
    docs[0].push_back("Doc one sentence " + std::to_string(i) + ".");
    docs[1].push_back("Doc two sentence " + std::to_string(i) + ".");
  }
  Corpus c = make_corpus(docs, {});
  for (double tau : {0.1, 0.25, 1.0, 3.0}) {
    Eigen::VectorXd v = position_prior(c, tau);
    CHECK(v.minCoeff() > 0.0);
    CHECK(v.sum() == doctest::Approx(1.0).epsilon(1e-12));
    for (int i = 1; i < 5; ++i) {
      CHECK(v[i] <= v[i - 1]);      // within doc 1
      CHECK(v[5 + i] <= v[5 + i - 1]);
    }
    CHECK(v[0] == doctest::Approx(v[5]).epsilon(1e-12));  // rho restarts
  }
}

TEST_CASE("frequency prior normalizes counts") {
  ConceptVocab v;
  v.concepts = {{"a", "", 2}, {"b", "", 2}, {"c", "", 4}};
  Eigen::VectorXd p = frequency_prior(v);
  CHECK(p[0] == doctest::Approx(0.25));
  CHECK(p[1] == doctest::Approx(0.25));
  CHECK(p[2] == doctest::Approx(0.5));

  v.concepts = {{"x", "", 3}, {"y", "", 1}};
  p = frequency_prior(v);
  CHECK(p[0] == doctest::Approx(0.75));
  CHECK(p[1] == doctest::Approx(0.25));
}

#ifndef REPRANK_CORPUS_HPP
#define REPRANK_CORPUS_HPP

#include <Eigen/Core>
#include <filesystem>
#include <string>
#include <unordered_set>
#include <vector>

namespace reprank {

using StopwordSet = std::unordered_set<std::string>;

struct Sentence {
  int global_index = 0;  // 0-based over the whole cluster
  int position = 1;      // 1-based within its document (rho)
  std::string text;
  std::vector<std::string> tokens;          // lowercased
  std::vector<std::string> content_tokens;  // tokens minus stopwords
};

struct Document {
  std::string id;
  std::vector<Sentence> sentences;
};

struct Corpus {
  std::vector<Document> documents;

  int sentence_count() const;
  // Flat view indexed by global sentence index.
  std::vector<const Sentence*> all_sentences() const;
};

struct Concept {
  std::string first;
  std::string second;  // empty for unigrams
  int frequency = 0;

  bool is_bigram() const { return !second.empty(); }
  std::string text() const {
    return is_bigram() ? first + "_" + second : first;
  }
};

struct ConceptVocab {
  std::vector<Concept> concepts;  // unigrams alphabetical, then bigrams

  int size() const { return static_cast<int>(concepts.size()); }
};

enum class ClusterFormat { Plain, Presegmented };

// Lowercase, strip punctuation; intra-word hyphens and apostrophes survive.
std::vector<std::string> tokenize(const std::string& text);

// Rule-based sentence splitter for running text: a sentence ends at
// [.!?] followed by whitespace and an uppercase letter (or end of input),
// unless the dot closes a known abbreviation.
std::vector<std::string> segment_sentences(const std::string& text);

const StopwordSet& default_stopwords();
StopwordSet load_stopwords(const std::filesystem::path& file);

Corpus load_cluster(const std::filesystem::path& dir, ClusterFormat format,
                    const StopwordSet& stopwords = default_stopwords());

// Builds a Corpus from in-memory sentence strings, one vector per document.
Corpus make_corpus(const std::vector<std::vector<std::string>>& docs,
                   const StopwordSet& stopwords = default_stopwords());

ConceptVocab build_vocab(const Corpus& corpus, int min_count = 1);

// Position prior V^s: weight rho^{-tau}, normalized over every sentence of
// the cluster; rho restarts at 1 for each document.
Eigen::VectorXd position_prior(const Corpus& corpus, double tau);

// Frequency prior V^w: concept frequency over total frequency.
Eigen::VectorXd frequency_prior(const ConceptVocab& vocab);

}  // namespace reprank

#endif

#ifndef REPRANK_EMBEDDINGS_HPP
#define REPRANK_EMBEDDINGS_HPP

#include <Eigen/Core>
#include <filesystem>
#include <optional>
#include <string>
#include <unordered_map>

#include "reprank/corpus.hpp"

namespace reprank {

class EmbeddingTable {
 public:
  EmbeddingTable() = default;
  EmbeddingTable(int dim, std::string source)
      : dim_(dim), source_(std::move(source)) {}

  int dim() const { return dim_; }
  const std::string& source() const { return source_; }
  size_t size() const { return entries_.size(); }

  bool contains(const std::string& word) const {
    return entries_.count(word) > 0;
  }
  const Eigen::VectorXd* find(const std::string& word) const {
    auto it = entries_.find(word);
    return it == entries_.end() ? nullptr : &it->second;
  }
  // First insertion wins; duplicates are ignored.
  void insert(const std::string& word, Eigen::VectorXd vec) {
    entries_.emplace(word, std::move(vec));
  }
  const std::unordered_map<std::string, Eigen::VectorXd>& entries() const {
    return entries_;
  }

 private:
  int dim_ = 0;
  std::string source_;
  std::unordered_map<std::string, Eigen::VectorXd> entries_;
};

// Text vector format: one entry per line, `word v1 v2 ... vd`, single
// ASCII spaces, LF (optional trailing CR) line ends.
EmbeddingTable load_embeddings(const std::filesystem::path& path);
void save_embeddings(const EmbeddingTable& table,
                     const std::filesystem::path& path);

// Unigram: table lookup. Bigram: mean of its parts when both are present,
// the present one otherwise. nullopt when nothing is in the table.
std::optional<Eigen::VectorXd> concept_vector(const Concept& item,
                                              const EmbeddingTable& table);

struct ConceptVectors {
  Eigen::MatrixXd vectors;   // rows aligned with the reindexed vocabulary
  double coverage = 0.0;     // surviving fraction of the input vocabulary
  std::vector<int> kept;     // original indices of surviving concepts
};

// Resolves vectors for every concept; concepts with no in-table word are
// dropped (warning to stderr) and the vocabulary is reindexed in place.
ConceptVectors resolve_concept_vectors(ConceptVocab& vocab,
                                       const EmbeddingTable& table);

// Unweighted mean of in-table content-token vectors.
Eigen::VectorXd average_sentence_rep(const Sentence& sentence,
                                     const EmbeddingTable& table);

// n x d matrix of averaged sentence vectors, rows by global index.
Eigen::MatrixXd average_sentence_matrix(const Corpus& corpus,
                                        const EmbeddingTable& table);

}  // namespace reprank

#endif

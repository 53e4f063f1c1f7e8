#ifndef REPRANK_SUMMARIZER_HPP
#define REPRANK_SUMMARIZER_HPP

#include <string>
#include <vector>

#include "reprank/absorbwalk.hpp"
#include "reprank/attnlearn.hpp"
#include "reprank/corpus.hpp"
#include "reprank/embeddings.hpp"
#include "reprank/rankcore.hpp"
#include "reprank/simgraph.hpp"

namespace reprank {

enum class ReprMode { Average, Attention };
enum class DiversityMode { Absorb, Plain };

struct SummaryConfig {
  int length_limit = 200;  // whitespace-separated words of raw text
  int keyword_count = 10;
  ReprMode repr = ReprMode::Average;
  DiversityMode diversity = DiversityMode::Absorb;
  double tau = 0.25;
  int min_count = 1;
  Thresholds thresholds;
  RankConfig rank;
  SamplerConfig sampler;
};

struct Diagnostics {
  int solver_iterations = 0;
  double solver_residual = 0.0;
  int sampler_batches = 0;
  int fallback_rows = 0;
  double concept_coverage = 0.0;
  int n = 0;
  int m = 0;
};

struct SummaryResult {
  std::vector<int> selected;                  // selection order
  std::vector<std::string> summary_sentences; // original document order
  std::vector<std::string> keywords;
  std::vector<double> sentence_scores;        // stationary marginal
  std::vector<double> word_scores;
  std::vector<int> sentence_ranking;          // full diversity ranking
  std::vector<int> word_ranking;
  Diagnostics diagnostics;
};

// Sentence vectors come from the attention encoder when cfg.repr is
// Attention (model and vocab required), otherwise from averaged table
// vectors. Concept vectors always come from the table; pass the tuned
// vectors exported by the trainer to stay in the learned space.
SummaryResult summarize(const Corpus& corpus, const EmbeddingTable& table,
                        const SummaryConfig& cfg,
                        const AttnModel* model = nullptr,
                        const TokenVocab* token_vocab = nullptr);

// Top-d concepts by score; ties broken alphabetically by concept text.
std::vector<std::string> extract_keywords(const Eigen::VectorXd& word_scores,
                                          const ConceptVocab& vocab, int d);

// Canonical machine-readable rendering; key order and number formatting
// are stable, so equal results produce identical bytes.
std::string to_json_string(const SummaryResult& result);

}  // namespace reprank

#endif

#include "reprank/summarizer.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include <nlohmann/json.hpp>

#include "reprank/errors.hpp"
#include "reprank/rng.hpp"

namespace reprank {

namespace {

int word_count(const std::string& text) {
  std::istringstream ss(text);
  std::string w;
  int count = 0;
  while (ss >> w) ++count;
  return count;
}

// Descending by score, ties to the lower index.
std::vector<int> order_by_score(const Eigen::VectorXd& scores) {
  std::vector<int> order(scores.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return scores[a] > scores[b]; });
  return order;
}

}  // namespace

SummaryResult summarize(const Corpus& corpus, const EmbeddingTable& table,
                        const SummaryConfig& cfg, const AttnModel* model,
                        const TokenVocab* token_vocab) {
  cfg.rank.validate();
  if (cfg.length_limit < 1) throw ConfigError("length limit must be >= 1");
  if (cfg.keyword_count < 0) throw ConfigError("keyword count must be >= 0");
  if (cfg.repr == ReprMode::Attention && (!model || !token_vocab))
    throw ConfigError("attention mode needs a trained encoder");

  SummaryResult result;

  // priors and representations
  ConceptVocab vocab = build_vocab(corpus, cfg.min_count);
  Eigen::VectorXd Vs = position_prior(corpus, cfg.tau);
  ConceptVectors concepts = resolve_concept_vectors(vocab, table);
  Eigen::VectorXd Vw = frequency_prior(vocab);
  Eigen::MatrixXd sentence_vecs =
      cfg.repr == ReprMode::Attention
          ? attention_sentence_matrix(*model, *token_vocab, corpus)
          : average_sentence_matrix(corpus, table);
  if (sentence_vecs.cols() != concepts.vectors.cols())
    throw ShapeError("sentence and concept vectors live in different spaces");

  const int n = static_cast<int>(sentence_vecs.rows());
  const int m = static_cast<int>(concepts.vectors.rows());
  result.diagnostics.n = n;
  result.diagnostics.m = m;
  result.diagnostics.concept_coverage = concepts.coverage;

  // joint chain and its stationary marginals
  SimilarityGraph graph =
      build_graph(sentence_vecs, concepts.vectors, cfg.thresholds);
  StochasticBlocks blocks = normalize_graph(graph, Vs, Vw);
  result.diagnostics.fallback_rows =
      static_cast<int>(blocks.fallback_s.size() + blocks.fallback_w.size() +
                       blocks.fallback_ms.size() + blocks.fallback_mw.size());

  ExpandedChain chain = build_expanded(blocks, Vs, Vw, cfg.rank);
  RankDistribution joint = solve_stationary(chain.P, cfg.rank);
  result.diagnostics.solver_iterations = joint.iterations;
  result.diagnostics.solver_residual = joint.residual;

  Eigen::VectorXd pi_s = joint.pi.head(n) / joint.pi.head(n).sum();
  Eigen::VectorXd pi_w = joint.pi.tail(m) / joint.pi.tail(m).sum();
  result.sentence_scores.assign(pi_s.data(), pi_s.data() + n);
  result.word_scores.assign(pi_w.data(), pi_w.data() + m);

  // diversity ranking on the per-side chains
  if (cfg.diversity == DiversityMode::Absorb) {
    Eigen::MatrixXd Ps_hat =
        assemble_side(blocks, Side::Sentence, pi_s, pi_w, cfg.rank);
    Eigen::MatrixXd Pw_hat =
        assemble_side(blocks, Side::Word, pi_s, pi_w, cfg.rank);
    std::vector<RankStep> audit;
    SamplerConfig s_cfg = cfg.sampler;
    s_cfg.seed = derive_stream(cfg.sampler.seed, 0x5e47);
    result.sentence_ranking = rank_all(Ps_hat, pi_s, s_cfg, &audit);
    for (const auto& step : audit)
      result.diagnostics.sampler_batches += step.batches;
    SamplerConfig w_cfg = cfg.sampler;
    w_cfg.seed = derive_stream(cfg.sampler.seed, 0x30d5);
    // only the keyword prefix needs the expensive re-ranking
    result.word_ranking =
        rank_all(Pw_hat, pi_w, w_cfg, nullptr, cfg.keyword_count);
  } else {
    result.sentence_ranking = order_by_score(pi_s);
    result.word_ranking = order_by_score(pi_w);
  }

  // greedy extraction: skip sentences that would burst the budget
  const auto sentences = corpus.all_sentences();
  int budget = cfg.length_limit;
  for (int idx : result.sentence_ranking) {
    int words = word_count(sentences[idx]->text);
    if (words <= budget) {
      result.selected.push_back(idx);
      budget -= words;
    }
  }
  if (result.selected.empty()) throw EmptySummary();

  std::vector<int> in_order = result.selected;
  std::sort(in_order.begin(), in_order.end());
  for (int idx : in_order)
    result.summary_sentences.push_back(sentences[idx]->text);

  // keywords from the (re-ranked) word side
  if (cfg.diversity == DiversityMode::Absorb) {
    const int d = std::min<int>(cfg.keyword_count, m);
    for (int i = 0; i < d; ++i)
      result.keywords.push_back(
          vocab.concepts[result.word_ranking[i]].text());
  } else {
    result.keywords = extract_keywords(pi_w, vocab, cfg.keyword_count);
  }
  return result;
}

std::vector<std::string> extract_keywords(const Eigen::VectorXd& word_scores,
                                          const ConceptVocab& vocab, int d) {
  if (word_scores.size() != vocab.size())
    throw ShapeError("score vector does not match vocabulary");
  d = std::min(d, vocab.size());
  std::vector<int> order(vocab.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (word_scores[a] != word_scores[b])
      return word_scores[a] > word_scores[b];
    return vocab.concepts[a].text() < vocab.concepts[b].text();
  });
  std::vector<std::string> keywords;
  for (int i = 0; i < d; ++i)
    keywords.push_back(vocab.concepts[order[i]].text());
  return keywords;
}

std::string to_json_string(const SummaryResult& result) {
  nlohmann::ordered_json j;
  j["summary"] = result.summary_sentences;
  j["keywords"] = result.keywords;
  j["selection_order"] = result.selected;
  nlohmann::ordered_json scores;
  scores["sentences"] = result.sentence_scores;
  scores["words"] = result.word_scores;
  j["scores"] = std::move(scores);
  nlohmann::ordered_json diag;
  diag["n"] = result.diagnostics.n;
  diag["m"] = result.diagnostics.m;
  diag["solver_iterations"] = result.diagnostics.solver_iterations;
  diag["solver_residual"] = result.diagnostics.solver_residual;
  diag["fallback_rows"] = result.diagnostics.fallback_rows;
  diag["concept_coverage"] = result.diagnostics.concept_coverage;
  j["diagnostics"] = std::move(diag);
  return j.dump(2);
}

}  // namespace reprank

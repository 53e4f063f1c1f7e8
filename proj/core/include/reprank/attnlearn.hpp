#ifndef REPRANK_ATTNLEARN_HPP
#define REPRANK_ATTNLEARN_HPP

#include <Eigen/Core>
#include <cstdint>
#include <filesystem>
#include <string>
#include <unordered_map>
#include <vector>

#include "reprank/corpus.hpp"
#include "reprank/embeddings.hpp"

namespace reprank {

struct TokenVocab {
  std::vector<std::string> words;
  std::unordered_map<std::string, int> index;

  int size() const { return static_cast<int>(words.size()); }
  int lookup(const std::string& w) const {
    auto it = index.find(w);
    return it == index.end() ? -1 : it->second;
  }
};

TokenVocab build_token_vocab(const Corpus& corpus);

// Attention-pooled sentence encoder plus the gated recurrent context cell
// and the per-step bilinear prediction matrices. The same structure doubles
// as the gradient accumulator.
struct AttnModel {
  int d = 0;  // embedding size
  int h = 0;  // attention hidden size
  int c = 0;  // context state size
  int K = 1;  // prediction horizon

  Eigen::MatrixXd W1;          // h x d
  Eigen::VectorXd W2;          // h
  Eigen::MatrixXd embeddings;  // vocab x d, trainable

  // gated recurrent cell: update gate z, reset gate r, candidate state
  Eigen::MatrixXd Wz, Wr, Wh;  // c x d
  Eigen::MatrixXd Uz, Ur, Uh;  // c x c
  Eigen::VectorXd bz, br, bh;  // c

  std::vector<Eigen::MatrixXd> Wk;  // K matrices, d x c

  int vocab_size() const { return static_cast<int>(embeddings.rows()); }
  static AttnModel zeros(int vocab, int d, int h, int c, int K);
  static AttnModel zeros_like(const AttnModel& other);

  size_t parameter_count() const;
  Eigen::VectorXd flatten() const;
  void unflatten(const Eigen::VectorXd& theta);
  void add_scaled(const AttnModel& g, double scale);  // this += scale * g
  double squared_norm() const;
};

struct TrainerConfig {
  int z = 8;          // contrastive set size (1 positive + z-1 negatives)
  double learning_rate = 0.5;
  int epochs = 50;
  int batch_size = 16;
  uint64_t seed = 1;
  int K = 2;
  int attention_hidden = 8;   // h
  int context_size = 16;      // c
  int embedding_dim = 16;     // d when no table is given
  bool init_from_table = true;
  double clip_norm = 5.0;
  double init_range = 0.1;
  double holdout_fraction_mod = 5;  // every 5th instance is held out
};

struct Encoded {
  Eigen::VectorXd rep;      // e_s
  Eigen::VectorXd weights;  // attention distribution over tokens
};

// a = softmax(W2 tanh(W1 X^T)); e_s = sum_i a_i x_i.
Encoded encode_sentence(const AttnModel& model, const std::vector<int>& tokens);

// Context vector per prefix; state starts at zero, so c_t depends only on
// the sentences at or before t.
std::vector<Eigen::VectorXd> context_encode(
    const AttnModel& model, const std::vector<Eigen::VectorXd>& sentence_reps);

// f_k = exp(s^T W_k c), k in 1..K.
double score(const AttnModel& model, const Eigen::VectorXd& candidate,
             const Eigen::VectorXd& context, int k);

// -log(exp(l_pos) / sum exp(l_j)) with log-sum-exp stabilization.
double nce_loss_from_logits(const Eigen::VectorXd& logits, int positive);

// One prediction problem: from the context after sentence t of `doc`,
// identify doc[t + k] among the candidates (positive first).
struct TrainInstance {
  std::vector<std::vector<int>> doc;        // token ids per context sentence
  int t = 0;
  int k = 1;
  std::vector<std::vector<int>> negatives;  // token ids per negative
};

// Loss and, when grad != nullptr, accumulated gradients over every
// parameter. `predicted` receives the argmax candidate (0 = positive).
double instance_loss(const AttnModel& model, const TrainInstance& instance,
                     AttnModel* grad = nullptr, int* predicted = nullptr);

// Central finite differences over every parameter; returns the max
// relative error |g_a - g_fd| / max(1e-8, |g_a| + |g_fd|).
double grad_check(const AttnModel& model, const TrainInstance& instance,
                  double epsilon = 1e-5);

struct TrainResult {
  AttnModel model;
  TokenVocab vocab;
  std::vector<double> loss_curve;   // mean training loss per epoch
  double initial_loss = 0.0;
  double holdout_accuracy = 0.0;    // top-1 among z candidates
  int holdout_instances = 0;
};

// Deterministic single-threaded SGD with manual gradients. Embeddings
// start from `table` rows where the word overlaps (when init_from_table),
// otherwise uniform in [-init_range, init_range].
TrainResult train(const Corpus& corpus, const EmbeddingTable* table,
                  const TrainerConfig& cfg);

// Tuned word vectors in the same text format embedspace reads.
EmbeddingTable export_word_vectors(const AttnModel& model,
                                   const TokenVocab& vocab);

// Versioned JSON parameter file.
void save_model(const AttnModel& model, const TokenVocab& vocab,
                const std::filesystem::path& path);
std::pair<AttnModel, TokenVocab> load_model(const std::filesystem::path& path);

// Attention-pooled sentence matrix for a corpus (rows by global index).
// Tokens missing from the vocabulary are skipped; a sentence with no known
// token raises UnrepresentableSentence.
Eigen::MatrixXd attention_sentence_matrix(const AttnModel& model,
                                          const TokenVocab& vocab,
                                          const Corpus& corpus);

}  // namespace reprank

#endif

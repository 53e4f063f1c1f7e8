#include "reprank/attnlearn.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <set>

#include <nlohmann/json.hpp>

#include "reprank/errors.hpp"
#include "reprank/rng.hpp"

namespace reprank {

namespace {

Eigen::VectorXd softmax(const Eigen::VectorXd& logits) {
  Eigen::VectorXd shifted = logits.array() - logits.maxCoeff();
  Eigen::VectorXd e = shifted.array().exp();
  return e / e.sum();
}

double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

struct SentenceCache {
  const std::vector<int>* tokens = nullptr;
  Eigen::MatrixXd X;     // ntok x d
  Eigen::MatrixXd Th;    // h x ntok, tanh(W1 x_i)
  Eigen::VectorXd a;     // attention weights
  Eigen::VectorXd rep;   // e_s
};

SentenceCache encode_cached(const AttnModel& model,
                            const std::vector<int>& tokens) {
  if (tokens.empty()) throw EmptyInput();
  const int ntok = static_cast<int>(tokens.size());
  SentenceCache cache;
  cache.tokens = &tokens;
  cache.X.resize(ntok, model.d);
  for (int i = 0; i < ntok; ++i)
    cache.X.row(i) = model.embeddings.row(tokens[i]);
  cache.Th = (model.W1 * cache.X.transpose()).array().tanh();
  Eigen::VectorXd logits = cache.Th.transpose() * model.W2;
  cache.a = softmax(logits);
  cache.rep = cache.X.transpose() * cache.a;
  return cache;
}

void encode_backward(const AttnModel& model, const SentenceCache& cache,
                     const Eigen::VectorXd& d_rep, AttnModel& grad) {
  const int ntok = static_cast<int>(cache.X.rows());
  Eigen::VectorXd da = cache.X * d_rep;
  Eigen::MatrixXd dX = cache.a * d_rep.transpose();  // from rep = X^T a

  double dot = cache.a.dot(da);
  Eigen::VectorXd dlogits = cache.a.array() * (da.array() - dot);

  for (int i = 0; i < ntok; ++i) {
    grad.W2 += dlogits[i] * cache.Th.col(i);
    Eigen::VectorXd dpre =
        (dlogits[i] * model.W2.array() *
         (1.0 - cache.Th.col(i).array().square()))
            .matrix();
    grad.W1 += dpre * cache.X.row(i);
    dX.row(i) += (model.W1.transpose() * dpre).transpose();
  }
  for (int i = 0; i < ntok; ++i)
    grad.embeddings.row((*cache.tokens)[i]) += dX.row(i);
}

struct GruStep {
  Eigen::VectorXd x, h_prev, zg, rg, hh, h;
};

std::vector<GruStep> gru_forward(const AttnModel& model,
                                 const std::vector<Eigen::VectorXd>& inputs) {
  std::vector<GruStep> steps;
  steps.reserve(inputs.size());
  Eigen::VectorXd h = Eigen::VectorXd::Zero(model.c);
  for (const auto& x : inputs) {
    GruStep s;
    s.x = x;
    s.h_prev = h;
    s.zg = (model.Wz * x + model.Uz * h + model.bz)
               .unaryExpr([](double v) { return sigmoid(v); });
    s.rg = (model.Wr * x + model.Ur * h + model.br)
               .unaryExpr([](double v) { return sigmoid(v); });
    s.hh = (model.Wh * x + model.Uh * s.rg.cwiseProduct(h) + model.bh)
               .array()
               .tanh();
    s.h = (Eigen::VectorXd::Ones(model.c) - s.zg).cwiseProduct(h) +
          s.zg.cwiseProduct(s.hh);
    h = s.h;
    steps.push_back(std::move(s));
  }
  return steps;
}

// Backpropagates d_h_last through every step; d_inputs receives the
// gradient with respect to each step's input.
void gru_backward(const AttnModel& model, const std::vector<GruStep>& steps,
                  const Eigen::VectorXd& d_h_last, AttnModel& grad,
                  std::vector<Eigen::VectorXd>& d_inputs) {
  d_inputs.assign(steps.size(), Eigen::VectorXd::Zero(model.d));
  Eigen::VectorXd dh = d_h_last;
  for (int t = static_cast<int>(steps.size()) - 1; t >= 0; --t) {
    const GruStep& s = steps[t];
    Eigen::VectorXd dzg = dh.cwiseProduct(s.hh - s.h_prev);
    Eigen::VectorXd dhh = dh.cwiseProduct(s.zg);
    Eigen::VectorXd dh_prev =
        dh.cwiseProduct(Eigen::VectorXd::Ones(model.c) - s.zg);

    Eigen::VectorXd dhh_pre =
        dhh.cwiseProduct((1.0 - s.hh.array().square()).matrix());
    grad.Wh += dhh_pre * s.x.transpose();
    grad.Uh += dhh_pre * s.rg.cwiseProduct(s.h_prev).transpose();
    grad.bh += dhh_pre;
    Eigen::VectorXd d_rh = model.Uh.transpose() * dhh_pre;
    Eigen::VectorXd drg = d_rh.cwiseProduct(s.h_prev);
    dh_prev += d_rh.cwiseProduct(s.rg);

    Eigen::VectorXd dzg_pre =
        dzg.cwiseProduct(s.zg.cwiseProduct(Eigen::VectorXd::Ones(model.c) -
                                           s.zg));
    grad.Wz += dzg_pre * s.x.transpose();
    grad.Uz += dzg_pre * s.h_prev.transpose();
    grad.bz += dzg_pre;
    dh_prev += model.Uz.transpose() * dzg_pre;

    Eigen::VectorXd drg_pre =
        drg.cwiseProduct(s.rg.cwiseProduct(Eigen::VectorXd::Ones(model.c) -
                                           s.rg));
    grad.Wr += drg_pre * s.x.transpose();
    grad.Ur += drg_pre * s.h_prev.transpose();
    grad.br += drg_pre;
    dh_prev += model.Ur.transpose() * drg_pre;

    d_inputs[t] = model.Wz.transpose() * dzg_pre +
                  model.Wr.transpose() * drg_pre +
                  model.Wh.transpose() * dhh_pre;
    dh = std::move(dh_prev);
  }
}

}  // namespace

TokenVocab build_token_vocab(const Corpus& corpus) {
  std::set<std::string> seen;
  for (const auto& doc : corpus.documents)
    for (const auto& s : doc.sentences)
      for (const auto& t : s.tokens) seen.insert(t);
  TokenVocab vocab;
  vocab.words.assign(seen.begin(), seen.end());
  for (int i = 0; i < vocab.size(); ++i) vocab.index[vocab.words[i]] = i;
  return vocab;
}

AttnModel AttnModel::zeros(int vocab, int d, int h, int c, int K) {
  AttnModel m;
  m.d = d;
  m.h = h;
  m.c = c;
  m.K = K;
  m.W1 = Eigen::MatrixXd::Zero(h, d);
  m.W2 = Eigen::VectorXd::Zero(h);
  m.embeddings = Eigen::MatrixXd::Zero(vocab, d);
  m.Wz = m.Wr = m.Wh = Eigen::MatrixXd::Zero(c, d);
  m.Uz = m.Ur = m.Uh = Eigen::MatrixXd::Zero(c, c);
  m.bz = m.br = m.bh = Eigen::VectorXd::Zero(c);
  m.Wk.assign(K, Eigen::MatrixXd::Zero(d, c));
  return m;
}

AttnModel AttnModel::zeros_like(const AttnModel& other) {
  return zeros(other.vocab_size(), other.d, other.h, other.c, other.K);
}

size_t AttnModel::parameter_count() const {
  size_t count = W1.size() + W2.size() + embeddings.size();
  count += 3 * (size_t)(Wz.size() + Uz.size() + bz.size());
  for (const auto& w : Wk) count += w.size();
  return count;
}

namespace {

template <typename Fn>
void for_each_block(AttnModel& m, Fn&& fn) {
  fn(m.W1);
  fn(m.W2);
  fn(m.embeddings);
  fn(m.Wz);
  fn(m.Uz);
  fn(m.bz);
  fn(m.Wr);
  fn(m.Ur);
  fn(m.br);
  fn(m.Wh);
  fn(m.Uh);
  fn(m.bh);
  for (auto& w : m.Wk) fn(w);
}

template <typename Fn>
void for_each_block(const AttnModel& m, Fn&& fn) {
  for_each_block(const_cast<AttnModel&>(m),
                 [&](auto& block) { fn(std::as_const(block)); });
}

}  // namespace

Eigen::VectorXd AttnModel::flatten() const {
  Eigen::VectorXd theta(parameter_count());
  Eigen::Index pos = 0;
  for_each_block(*this, [&](const auto& block) {
    theta.segment(pos, block.size()) =
        Eigen::Map<const Eigen::VectorXd>(block.data(), block.size());
    pos += block.size();
  });
  return theta;
}

void AttnModel::unflatten(const Eigen::VectorXd& theta) {
  Eigen::Index pos = 0;
  for_each_block(*this, [&](auto& block) {
    Eigen::Map<Eigen::VectorXd>(block.data(), block.size()) =
        theta.segment(pos, block.size());
    pos += block.size();
  });
}

void AttnModel::add_scaled(const AttnModel& g, double scale) {
  Eigen::Index pos = 0;
  (void)pos;
  auto it = [&](auto& dst, const auto& src) { dst += scale * src; };
  it(W1, g.W1);
  it(W2, g.W2);
  it(embeddings, g.embeddings);
  it(Wz, g.Wz);
  it(Uz, g.Uz);
  it(bz, g.bz);
  it(Wr, g.Wr);
  it(Ur, g.Ur);
  it(br, g.br);
  it(Wh, g.Wh);
  it(Uh, g.Uh);
  it(bh, g.bh);
  for (int k = 0; k < K; ++k) Wk[k] += scale * g.Wk[k];
}

double AttnModel::squared_norm() const {
  double total = 0.0;
  for_each_block(*this,
                 [&](const auto& block) { total += block.squaredNorm(); });
  return total;
}

Encoded encode_sentence(const AttnModel& model,
                        const std::vector<int>& tokens) {
  SentenceCache cache = encode_cached(model, tokens);
  return {std::move(cache.rep), std::move(cache.a)};
}

std::vector<Eigen::VectorXd> context_encode(
    const AttnModel& model, const std::vector<Eigen::VectorXd>& sentence_reps) {
  if (sentence_reps.empty()) throw EmptyInput();
  std::vector<GruStep> steps = gru_forward(model, sentence_reps);
  std::vector<Eigen::VectorXd> contexts;
  contexts.reserve(steps.size());
  for (const auto& s : steps) contexts.push_back(s.h);
  return contexts;
}

double score(const AttnModel& model, const Eigen::VectorXd& candidate,
             const Eigen::VectorXd& context, int k) {
  if (k < 1 || k > model.K) throw ConfigError("prediction step out of range");
  return std::exp(candidate.dot(model.Wk[k - 1] * context));
}

double nce_loss_from_logits(const Eigen::VectorXd& logits, int positive) {
  double mx = logits.maxCoeff();
  double lse = mx + std::log((logits.array() - mx).exp().sum());
  return lse - logits[positive];
}

double instance_loss(const AttnModel& model, const TrainInstance& instance,
                     AttnModel* grad, int* predicted) {
  const int t = instance.t;
  const int k = instance.k;
  if (t < 0 || k < 1 || k > model.K ||
      t + k >= static_cast<int>(instance.doc.size()))
    throw ConfigError("invalid prediction instance");

  // context sentences 0..t
  std::vector<SentenceCache> ctx_caches;
  std::vector<Eigen::VectorXd> ctx_reps;
  for (int i = 0; i <= t; ++i) {
    ctx_caches.push_back(encode_cached(model, instance.doc[i]));
    ctx_reps.push_back(ctx_caches.back().rep);
  }
  std::vector<GruStep> gru = gru_forward(model, ctx_reps);
  const Eigen::VectorXd& context = gru.back().h;

  // candidates: positive first, then the negatives
  std::vector<SentenceCache> cand_caches;
  cand_caches.push_back(encode_cached(model, instance.doc[t + k]));
  for (const auto& neg : instance.negatives)
    cand_caches.push_back(encode_cached(model, neg));

  const int z = static_cast<int>(cand_caches.size());
  const Eigen::MatrixXd& Wk = model.Wk[k - 1];
  Eigen::VectorXd wc = Wk * context;
  Eigen::VectorXd logits(z);
  for (int j = 0; j < z; ++j) logits[j] = cand_caches[j].rep.dot(wc);

  if (predicted) {
    int best = 0;
    for (int j = 1; j < z; ++j)
      if (logits[j] > logits[best]) best = j;
    *predicted = best;
  }
  double loss = nce_loss_from_logits(logits, 0);
  if (!grad) return loss;

  Eigen::VectorXd dlogits = softmax(logits);
  dlogits[0] -= 1.0;

  Eigen::VectorXd d_context = Eigen::VectorXd::Zero(model.c);
  for (int j = 0; j < z; ++j) {
    grad->Wk[k - 1] += dlogits[j] * cand_caches[j].rep * context.transpose();
    d_context += dlogits[j] * (Wk.transpose() * cand_caches[j].rep);
    encode_backward(model, cand_caches[j], dlogits[j] * wc, *grad);
  }
  std::vector<Eigen::VectorXd> d_ctx_reps;
  gru_backward(model, gru, d_context, *grad, d_ctx_reps);
  for (int i = 0; i <= t; ++i)
    encode_backward(model, ctx_caches[i], d_ctx_reps[i], *grad);
  return loss;
}

double grad_check(const AttnModel& model, const TrainInstance& instance,
                  double epsilon) {
  AttnModel analytic = AttnModel::zeros_like(model);
  instance_loss(model, instance, &analytic);
  Eigen::VectorXd ga = analytic.flatten();

  AttnModel probe = model;
  Eigen::VectorXd theta = model.flatten();
  double max_err = 0.0;
  for (Eigen::Index i = 0; i < theta.size(); ++i) {
    double original = theta[i];
    theta[i] = original + epsilon;
    probe.unflatten(theta);
    double plus = instance_loss(probe, instance);
    theta[i] = original - epsilon;
    probe.unflatten(theta);
    double minus = instance_loss(probe, instance);
    theta[i] = original;
    double gf = (plus - minus) / (2 * epsilon);
    double err = std::abs(ga[i] - gf) /
                 std::max(1e-8, std::abs(ga[i]) + std::abs(gf));
    max_err = std::max(max_err, err);
  }
  probe.unflatten(theta);
  return max_err;
}

namespace {

struct InstanceKey {
  int doc = 0;
  int t = 0;
  int k = 0;
};

std::vector<std::vector<std::vector<int>>> tokenize_corpus(
    const Corpus& corpus, const TokenVocab& vocab) {
  std::vector<std::vector<std::vector<int>>> docs;
  for (const auto& doc : corpus.documents) {
    std::vector<std::vector<int>> sentences;
    for (const auto& s : doc.sentences) {
      std::vector<int> ids;
      for (const auto& t : s.tokens) {
        int id = vocab.lookup(t);
        if (id >= 0) ids.push_back(id);
      }
      if (!ids.empty()) sentences.push_back(std::move(ids));
    }
    docs.push_back(std::move(sentences));
  }
  return docs;
}

// Uniform sentence from documents other than doc_index.
std::vector<int> sample_negative(
    const std::vector<std::vector<std::vector<int>>>& docs, int doc_index,
    SplitMix64& rng) {
  size_t total = 0;
  for (size_t di = 0; di < docs.size(); ++di)
    if (static_cast<int>(di) != doc_index) total += docs[di].size();
  uint64_t pick = rng.next_below(total);
  for (size_t di = 0; di < docs.size(); ++di) {
    if (static_cast<int>(di) == doc_index) continue;
    if (pick < docs[di].size()) return docs[di][pick];
    pick -= docs[di].size();
  }
  return docs.front().front();  // unreachable
}

TrainInstance materialize(const std::vector<std::vector<std::vector<int>>>& docs,
                          const InstanceKey& key, int z, uint64_t stream_seed) {
  TrainInstance inst;
  inst.doc = docs[key.doc];
  inst.t = key.t;
  inst.k = key.k;
  SplitMix64 rng(stream_seed);
  for (int j = 0; j < z - 1; ++j)
    inst.negatives.push_back(sample_negative(docs, key.doc, rng));
  return inst;
}

void random_fill(Eigen::Ref<Eigen::MatrixXd> block, SplitMix64& rng,
                 double range) {
  for (Eigen::Index j = 0; j < block.cols(); ++j)
    for (Eigen::Index i = 0; i < block.rows(); ++i)
      block(i, j) = rng.next_range(-range, range);
}

}  // namespace

TrainResult train(const Corpus& corpus, const EmbeddingTable* table,
                  const TrainerConfig& cfg) {
  if (corpus.documents.size() < 2) throw NeedsMultipleDocuments();
  if (cfg.z < 2) throw ConfigError("contrastive set size z must be >= 2");
  if (cfg.K < 1) throw ConfigError("prediction horizon K must be >= 1");

  TrainResult result;
  result.vocab = build_token_vocab(corpus);
  const int d = (table && cfg.init_from_table) ? table->dim()
                                               : cfg.embedding_dim;

  AttnModel model = AttnModel::zeros(result.vocab.size(), d,
                                     cfg.attention_hidden, cfg.context_size,
                                     cfg.K);
  SplitMix64 init_rng(derive_stream(cfg.seed, 0x1417));
  // weight matrices use fan-scaled uniform init so the forward signal
  // neither dies nor saturates at the start
  auto fan_fill = [&](Eigen::Ref<Eigen::MatrixXd> block) {
    double range = std::sqrt(6.0 / (block.rows() + block.cols()));
    random_fill(block, init_rng, range);
  };
  fan_fill(model.W1);
  fan_fill(model.W2);
  fan_fill(model.Wz);
  fan_fill(model.Wr);
  fan_fill(model.Wh);
  fan_fill(model.Uz);
  fan_fill(model.Ur);
  fan_fill(model.Uh);
  for (auto& w : model.Wk) fan_fill(w);
  random_fill(model.embeddings, init_rng, cfg.init_range);
  if (table && cfg.init_from_table) {
    for (int i = 0; i < result.vocab.size(); ++i)
      if (const Eigen::VectorXd* v = table->find(result.vocab.words[i]))
        model.embeddings.row(i) = v->transpose();
  }

  const auto docs = tokenize_corpus(corpus, result.vocab);
  std::vector<InstanceKey> training;
  std::vector<InstanceKey> holdout;
  for (size_t di = 0; di < docs.size(); ++di) {
    const int nsent = static_cast<int>(docs[di].size());
    for (int t = 0; t < nsent - 1; ++t)
      for (int k = 1; k <= cfg.K && t + k < nsent; ++k) {
        InstanceKey key{static_cast<int>(di), t, k};
        const int mod = static_cast<int>(cfg.holdout_fraction_mod);
        bool held = mod > 0 && ((di * 7919 + t * 31 + k) % mod == 0);
        (held ? holdout : training).push_back(key);
      }
  }
  if (training.empty()) throw ConfigError("corpus yields no training instances");

  auto mean_loss = [&](const std::vector<InstanceKey>& keys,
                       uint64_t neg_salt) {
    double total = 0.0;
    for (size_t i = 0; i < keys.size(); ++i) {
      TrainInstance inst = materialize(
          docs, keys[i], cfg.z, derive_stream(cfg.seed, neg_salt, i));
      total += instance_loss(model, inst);
    }
    return total / keys.size();
  };
  result.initial_loss = mean_loss(training, 0xBEEF);

  std::vector<size_t> order(training.size());
  std::iota(order.begin(), order.end(), size_t{0});

  for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
    SplitMix64 shuffle_rng(derive_stream(cfg.seed, 0x5u, epoch));
    for (size_t i = order.size(); i > 1; --i)
      std::swap(order[i - 1], order[shuffle_rng.next_below(i)]);

    double epoch_loss = 0.0;
    AttnModel grad = AttnModel::zeros_like(model);
    int in_batch = 0;
    auto apply = [&] {
      if (in_batch == 0) return;
      for_each_block(grad, [&](auto& block) { block /= in_batch; });
      double norm = std::sqrt(grad.squared_norm());
      double scale = norm > cfg.clip_norm ? cfg.clip_norm / norm : 1.0;
      model.add_scaled(grad, -cfg.learning_rate * scale);
      grad = AttnModel::zeros_like(model);
      in_batch = 0;
    };
    for (size_t idx = 0; idx < order.size(); ++idx) {
      TrainInstance inst = materialize(
          docs, training[order[idx]], cfg.z,
          derive_stream(cfg.seed, 0x100 + epoch, order[idx]));
      epoch_loss += instance_loss(model, inst, &grad);
      if (++in_batch >= cfg.batch_size) apply();
    }
    apply();
    result.loss_curve.push_back(epoch_loss / order.size());
  }

  result.holdout_instances = static_cast<int>(holdout.size());
  if (!holdout.empty()) {
    int correct = 0;
    for (size_t i = 0; i < holdout.size(); ++i) {
      TrainInstance inst = materialize(
          docs, holdout[i], cfg.z, derive_stream(cfg.seed, 0xE7A1, i));
      int predicted = -1;
      instance_loss(model, inst, nullptr, &predicted);
      if (predicted == 0) ++correct;
    }
    result.holdout_accuracy = static_cast<double>(correct) / holdout.size();
  }
  result.model = std::move(model);
  return result;
}

EmbeddingTable export_word_vectors(const AttnModel& model,
                                   const TokenVocab& vocab) {
  EmbeddingTable table(model.d, "attnlearn");
  for (int i = 0; i < vocab.size(); ++i)
    table.insert(vocab.words[i], model.embeddings.row(i).transpose());
  return table;
}

namespace {

nlohmann::json matrix_to_json(const Eigen::MatrixXd& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

Eigen::MatrixXd matrix_from_json(const nlohmann::json& j) {
  const Eigen::Index rows = static_cast<Eigen::Index>(j.size());
  const Eigen::Index cols =
      rows > 0 ? static_cast<Eigen::Index>(j[0].size()) : 0;
  Eigen::MatrixXd m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index c = 0; c < cols; ++c) m(i, c) = j[i][c].get<double>();
  return m;
}

}  // namespace

void save_model(const AttnModel& model, const TokenVocab& vocab,
                const std::filesystem::path& path) {
  nlohmann::json j;
  j["format"] = "reprank-encoder";
  j["version"] = 1;
  j["d"] = model.d;
  j["h"] = model.h;
  j["c"] = model.c;
  j["K"] = model.K;
  j["vocab"] = vocab.words;
  j["W1"] = matrix_to_json(model.W1);
  j["W2"] = matrix_to_json(model.W2);
  j["embeddings"] = matrix_to_json(model.embeddings);
  j["Wz"] = matrix_to_json(model.Wz);
  j["Wr"] = matrix_to_json(model.Wr);
  j["Wh"] = matrix_to_json(model.Wh);
  j["Uz"] = matrix_to_json(model.Uz);
  j["Ur"] = matrix_to_json(model.Ur);
  j["Uh"] = matrix_to_json(model.Uh);
  j["bz"] = matrix_to_json(model.bz);
  j["br"] = matrix_to_json(model.br);
  j["bh"] = matrix_to_json(model.bh);
  nlohmann::json wk = nlohmann::json::array();
  for (const auto& w : model.Wk) wk.push_back(matrix_to_json(w));
  j["Wk"] = std::move(wk);

  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write model file " + path.string());
  out << j.dump(2) << '\n';
}

std::pair<AttnModel, TokenVocab> load_model(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open model file " + path.string());
  nlohmann::json j;
  in >> j;
  if (j.value("format", "") != "reprank-encoder" || j.value("version", 0) != 1)
    throw ConfigError("unrecognized model file format: " + path.string());

  TokenVocab vocab;
  vocab.words = j["vocab"].get<std::vector<std::string>>();
  for (int i = 0; i < vocab.size(); ++i) vocab.index[vocab.words[i]] = i;

  AttnModel model = AttnModel::zeros(vocab.size(), j["d"], j["h"], j["c"],
                                     j["K"]);
  model.W1 = matrix_from_json(j["W1"]);
  model.W2 = matrix_from_json(j["W2"]);
  model.embeddings = matrix_from_json(j["embeddings"]);
  model.Wz = matrix_from_json(j["Wz"]);
  model.Wr = matrix_from_json(j["Wr"]);
  model.Wh = matrix_from_json(j["Wh"]);
  model.Uz = matrix_from_json(j["Uz"]);
  model.Ur = matrix_from_json(j["Ur"]);
  model.Uh = matrix_from_json(j["Uh"]);
  model.bz = matrix_from_json(j["bz"]);
  model.br = matrix_from_json(j["br"]);
  model.bh = matrix_from_json(j["bh"]);
  model.Wk.clear();
  for (const auto& w : j["Wk"]) model.Wk.push_back(matrix_from_json(w));
  return {std::move(model), std::move(vocab)};
}

Eigen::MatrixXd attention_sentence_matrix(const AttnModel& model,
                                          const TokenVocab& vocab,
                                          const Corpus& corpus) {
  Eigen::MatrixXd reps(corpus.sentence_count(), model.d);
  for (const Sentence* s : corpus.all_sentences()) {
    std::vector<int> ids;
    for (const auto& t : s->tokens) {
      int id = vocab.lookup(t);
      if (id >= 0) ids.push_back(id);
    }
    if (ids.empty()) throw UnrepresentableSentence(s->global_index);
    reps.row(s->global_index) = encode_sentence(model, ids).rep.transpose();
  }
  return reps;
}

}  // namespace reprank

// reprank: multi-document extractive summarizer and keyword extractor.
// Single binary with subcommands; JSON/CSV on stdout for scripting,
// human-readable text behind --text.

#include <CLI11.hpp>
#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <nlohmann/json.hpp>

#include "reprank/config.hpp"
#include "reprank/errors.hpp"
#include "reprank/rouge.hpp"
#include "reprank/summarizer.hpp"

namespace fs = std::filesystem;
using reprank::AppConfig;

namespace {

struct PipelineArgs {
  std::string input;
  std::string format = "plain";
  std::string stopwords;
  std::string embeddings;
  std::string model;
  std::string config;  // consumed before parsing; kept for --help
  bool text = false;
};

void add_pipeline_options(CLI::App* cmd, PipelineArgs& args, AppConfig& cfg) {
  cmd->add_option("--input", args.input, "cluster directory of .txt files")
      ->required();
  cmd->add_option("--format", args.format,
                  "input format: plain (running text) or preseg "
                  "(one sentence per line)")
      ->check(CLI::IsMember({"plain", "preseg"}));
  cmd->add_option("--stopwords", args.stopwords,
                  "stopword file, one word per line");
  cmd->add_option("--embeddings", args.embeddings,
                  "word vector file (word v1 ... vd per line); without it, "
                  "sentence-occurrence indicator vectors are used");
  cmd->add_option("--model", args.model,
                  "encoder parameter file from `train` (enables --repr "
                  "attention and supplies tuned vectors)");
  cmd->add_flag("--text", args.text, "human-readable output instead of JSON");
  cmd->add_option("--config", args.config,
                  "key=value config file (flags override it)");

  cmd->add_option("--min-count", cfg.summary.min_count,
                  "minimum concept frequency");
  cmd->add_option("--tau", cfg.summary.tau, "position prior decay");
  cmd->add_option("--alpha", cfg.summary.rank.alpha, "graph-following weight");
  cmd->add_option("--beta", cfg.summary.rank.beta, "prior teleport weight");
  cmd->add_option("--gamma", cfg.summary.rank.gamma, "cross-side vote weight");
  cmd->add_option("--epsilon-ss", cfg.summary.thresholds.ss,
                  "sentence-sentence cosine threshold");
  cmd->add_option("--epsilon-sw", cfg.summary.thresholds.sw,
                  "sentence-word cosine threshold");
  cmd->add_option("--epsilon-ww", cfg.summary.thresholds.ww,
                  "word-word cosine threshold");
  cmd->add_option_function<std::string>(
         "--solver",
         [&cfg](const std::string& v) {
           cfg.summary.rank.solver = reprank::parse_solver_kind(v);
         },
         "stationary solver: power or direct")
      ->check(CLI::IsMember({"power", "direct"}));
  cmd->add_option("--kappa", cfg.summary.sampler.kappa,
                  "KL stopping threshold for the sampler");
  cmd->add_option("--walks", cfg.summary.sampler.walks_per_batch,
                  "walks per sampling batch");
  cmd->add_option("--max-batches", cfg.summary.sampler.max_batches,
                  "sampling batch budget");
  cmd->add_option_function<long long>(
      "--seed",
      [&cfg](long long v) {
        cfg.summary.sampler.seed = static_cast<uint64_t>(v);
        cfg.trainer.seed = static_cast<uint64_t>(v);
      },
      "rng seed");
  cmd->add_option("--limit", cfg.summary.length_limit,
                  "summary length limit in words");
  cmd->add_option("--keywords", cfg.summary.keyword_count,
                  "number of keywords to extract");
  cmd->add_option_function<std::string>(
         "--repr",
         [&cfg](const std::string& v) {
           cfg.summary.repr = reprank::parse_repr_mode(v);
         },
         "sentence representation: average or attention")
      ->check(CLI::IsMember({"average", "attention"}));
  cmd->add_option_function<std::string>(
         "--diversity",
         [&cfg](const std::string& v) {
           cfg.summary.diversity = reprank::parse_diversity_mode(v);
         },
         "re-ranking mode: absorb or plain")
      ->check(CLI::IsMember({"absorb", "plain"}));
  cmd->add_option("--threads", cfg.threads,
                  "worker threads (0 = available parallelism)");
}

reprank::Corpus load_input(const PipelineArgs& args) {
  reprank::StopwordSet stopwords =
      args.stopwords.empty() ? reprank::default_stopwords()
                             : reprank::load_stopwords(args.stopwords);
  auto format = args.format == "preseg" ? reprank::ClusterFormat::Presegmented
                                        : reprank::ClusterFormat::Plain;
  return reprank::load_cluster(args.input, format, stopwords);
}

// Deterministic embedding-free fallback: each word is represented by the
// indicator vector of the sentences it occurs in, so cosine reflects
// sentence co-occurrence.
reprank::EmbeddingTable indicator_table(const reprank::Corpus& corpus) {
  int n = corpus.sentence_count();
  reprank::EmbeddingTable table(n, "sentence-indicator");
  std::map<std::string, Eigen::VectorXd> rows;
  for (const auto* sent : corpus.all_sentences())
    for (const auto& tok : sent->content_tokens) {
      auto it = rows.try_emplace(tok, Eigen::VectorXd::Zero(n)).first;
      it->second[sent->global_index] = 1.0;
    }
  for (auto& [word, vec] : rows) table.insert(word, std::move(vec));
  return table;
}

struct LoadedModel {
  reprank::AttnModel model;
  reprank::TokenVocab vocab;
  bool present = false;
};

// Resolves the embedding table and, when requested, the encoder model.
// Model vectors win over the file so everything stays in the tuned space.
reprank::EmbeddingTable resolve_table(const PipelineArgs& args,
                                      const reprank::Corpus& corpus,
                                      LoadedModel& loaded) {
  if (!args.model.empty()) {
    auto [model, vocab] = reprank::load_model(args.model);
    loaded.model = std::move(model);
    loaded.vocab = std::move(vocab);
    loaded.present = true;
    return reprank::export_word_vectors(loaded.model, loaded.vocab);
  }
  if (!args.embeddings.empty()) return reprank::load_embeddings(args.embeddings);
  return indicator_table(corpus);
}

reprank::SummaryResult run_pipeline(const PipelineArgs& args, AppConfig& cfg) {
  cfg.validate();
  reprank::Corpus corpus = load_input(args);
  LoadedModel loaded;
  reprank::EmbeddingTable table = resolve_table(args, corpus, loaded);
  cfg.summary.sampler.threads = cfg.threads;
  if (cfg.summary.repr == reprank::ReprMode::Attention && !loaded.present)
    throw reprank::ConfigError("--repr attention requires --model");
  return reprank::summarize(corpus, table, cfg.summary,
                            loaded.present ? &loaded.model : nullptr,
                            loaded.present ? &loaded.vocab : nullptr);
}

int cmd_summarize(const PipelineArgs& args, AppConfig& cfg) {
  reprank::SummaryResult r = run_pipeline(args, cfg);
  if (args.text) {
    for (const auto& s : r.summary_sentences) std::cout << s << "\n";
    std::cout << "\nKeywords:";
    for (const auto& k : r.keywords) std::cout << " " << k;
    std::cout << "\n";
  } else {
    std::cout << reprank::to_json_string(r) << "\n";
  }
  return 0;
}

int cmd_keywords(const PipelineArgs& args, AppConfig& cfg) {
  reprank::SummaryResult r = run_pipeline(args, cfg);
  if (args.text) {
    for (const auto& k : r.keywords) std::cout << k << "\n";
  } else {
    nlohmann::ordered_json out;
    out["keywords"] = r.keywords;
    std::cout << out.dump(2) << "\n";
  }
  return 0;
}

void dump_matrix(std::ostream& out, const char* name,
                 const Eigen::MatrixXd& m) {
  out << "# " << name << " " << m.rows() << "x" << m.cols() << "\n";
  out.precision(17);
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      out << (j ? "\t" : "") << m(i, j);
    out << "\n";
  }
}

int cmd_rank_dump(const PipelineArgs& args, AppConfig& cfg,
                  const std::string& graph_path) {
  cfg.validate();
  reprank::Corpus corpus = load_input(args);
  LoadedModel loaded;
  reprank::EmbeddingTable table = resolve_table(args, corpus, loaded);
  if (cfg.summary.repr == reprank::ReprMode::Attention && !loaded.present)
    throw reprank::ConfigError("--repr attention requires --model");

  reprank::ConceptVocab vocab =
      reprank::build_vocab(corpus, cfg.summary.min_count);
  reprank::ConceptVectors cv = reprank::resolve_concept_vectors(vocab, table);
  Eigen::VectorXd Vs = reprank::position_prior(corpus, cfg.summary.tau);
  Eigen::VectorXd Vw = reprank::frequency_prior(vocab);
  Eigen::MatrixXd sents =
      cfg.summary.repr == reprank::ReprMode::Attention
          ? reprank::attention_sentence_matrix(loaded.model, loaded.vocab,
                                               corpus)
          : reprank::average_sentence_matrix(corpus, table);
  reprank::SimilarityGraph graph =
      reprank::build_graph(sents, cv.vectors, cfg.summary.thresholds);
  reprank::StochasticBlocks blocks = reprank::normalize_graph(graph, Vs, Vw);
  reprank::ExpandedChain chain =
      reprank::build_expanded(blocks, Vs, Vw, cfg.summary.rank);
  reprank::RankDistribution dist =
      reprank::solve_stationary(chain.P, cfg.summary.rank);

  if (!graph_path.empty()) {
    std::ofstream out(graph_path);
    if (!out)
      throw reprank::ConfigError("cannot write graph dump to " + graph_path);
    dump_matrix(out, "Ps", blocks.Ps);
    dump_matrix(out, "Pw", blocks.Pw);
    dump_matrix(out, "Ms", blocks.Ms);
    dump_matrix(out, "Mw", blocks.Mw);
  }

  nlohmann::ordered_json out;
  out["n"] = chain.n;
  out["m"] = chain.m;
  out["iterations"] = dist.iterations;
  out["residual"] = dist.residual;
  std::vector<double> pi_s(dist.pi.data(), dist.pi.data() + chain.n);
  std::vector<double> pi_w(dist.pi.data() + chain.n,
                           dist.pi.data() + chain.n + chain.m);
  out["pi_sentences"] = pi_s;
  out["pi_words"] = pi_w;
  std::vector<std::string> concepts;
  for (const auto& c : vocab.concepts) concepts.push_back(c.text());
  out["concepts"] = concepts;
  std::cout << out.dump(2) << "\n";
  return 0;
}

int cmd_train(const PipelineArgs& args, AppConfig& cfg,
              const std::string& vectors_out, const std::string& model_out) {
  cfg.validate();
  reprank::Corpus corpus = load_input(args);
  reprank::EmbeddingTable table;
  bool have_table = !args.embeddings.empty();
  if (have_table) table = reprank::load_embeddings(args.embeddings);
  reprank::TrainResult r =
      reprank::train(corpus, have_table ? &table : nullptr, cfg.trainer);
  if (!vectors_out.empty())
    reprank::save_embeddings(
        reprank::export_word_vectors(r.model, r.vocab), vectors_out);
  if (!model_out.empty()) reprank::save_model(r.model, r.vocab, model_out);

  if (args.text) {
    std::cout << "initial loss " << r.initial_loss << "\n";
    for (size_t i = 0; i < r.loss_curve.size(); ++i)
      std::cout << "epoch " << (i + 1) << " loss " << r.loss_curve[i] << "\n";
    std::cout << "holdout accuracy " << r.holdout_accuracy << " ("
              << r.holdout_instances << " instances)\n";
  } else {
    nlohmann::ordered_json out;
    out["epochs"] = r.loss_curve.size();
    out["initial_loss"] = r.initial_loss;
    out["final_loss"] =
        r.loss_curve.empty() ? r.initial_loss : r.loss_curve.back();
    out["loss_curve"] = r.loss_curve;
    out["holdout_accuracy"] = r.holdout_accuracy;
    out["holdout_instances"] = r.holdout_instances;
    std::cout << out.dump(2) << "\n";
  }
  return 0;
}

std::vector<std::string> read_tokens(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw reprank::ConfigError("cannot open " + path.string());
  std::string content((std::istreambuf_iterator<char>(in)),
                      std::istreambuf_iterator<char>());
  return reprank::tokenize(content);
}

int cmd_eval(const std::string& system_path, const std::string& refs_dir,
             int n, int limit) {
  if (n < 1 || n > 2)
    throw reprank::ConfigError("--n must be 1 or 2");
  std::vector<fs::path> systems;
  if (fs::is_directory(system_path)) {
    for (const auto& entry : fs::directory_iterator(system_path))
      if (entry.is_regular_file()) systems.push_back(entry.path());
    std::sort(systems.begin(), systems.end());
  } else {
    systems.push_back(system_path);
  }
  std::vector<fs::path> ref_files;
  for (const auto& entry : fs::directory_iterator(refs_dir))
    if (entry.is_regular_file()) ref_files.push_back(entry.path());
  std::sort(ref_files.begin(), ref_files.end());

  std::cout << "cluster,R1" << (n >= 2 ? ",R2" : "") << "\n";
  for (const auto& sys_path : systems) {
    std::string cluster = sys_path.stem().string();
    std::vector<std::vector<std::string>> refs;
    for (const auto& ref : ref_files)
      if (ref.stem().string().rfind(cluster, 0) == 0)
        refs.push_back(read_tokens(ref));
    if (refs.empty() && systems.size() == 1)
      for (const auto& ref : ref_files) refs.push_back(read_tokens(ref));
    if (refs.empty()) {
      std::cerr << "warning: no references for " << cluster << ", skipped\n";
      continue;
    }
    auto system = read_tokens(sys_path);
    std::cout << cluster;
    std::cout.precision(6);
    for (int k = 1; k <= n; ++k)
      std::cout << ","
                << reprank::rouge_recall(system, refs, k,
                                         static_cast<size_t>(limit))
                       .averaged;
    std::cout << "\n";
  }
  return 0;
}

int cmd_bench(const std::vector<int>& sizes, int reps, uint64_t seed) {
  reprank::benchmark_solvers(sizes, reps, seed, &std::cout);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"graph-based multi-document summarizer and keyword extractor"};
  app.require_subcommand(1);

  // config file first (lowest priority), flags override during parse
  AppConfig cfg = AppConfig::from_environment();
  for (int i = 1; i < argc - 1; ++i)
    if (std::string(argv[i]) == "--config") {
      try {
        cfg.load_file(argv[i + 1]);
      } catch (const reprank::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
      }
    }
  std::string config_path;
  app.add_option("--config", config_path, "key=value config file");

  PipelineArgs sum_args, key_args, dump_args, train_args;
  std::string graph_path, vectors_out, model_out;
  std::string eval_system, eval_refs;
  int eval_n = 2, eval_limit = 200;
  std::vector<int> bench_sizes = {50, 100};
  int bench_reps = 3;
  long long bench_seed = 1;

  CLI::App* summarize =
      app.add_subcommand("summarize", "summarize a document cluster");
  add_pipeline_options(summarize, sum_args, cfg);

  CLI::App* keywords =
      app.add_subcommand("keywords", "extract keywords from a cluster");
  add_pipeline_options(keywords, key_args, cfg);

  CLI::App* rank_dump = app.add_subcommand(
      "rank-dump", "dump stationary distributions (and matrices)");
  add_pipeline_options(rank_dump, dump_args, cfg);
  rank_dump->add_option("--dump-graph", graph_path,
                        "write the normalized transition blocks as tabular "
                        "text to this file");

  CLI::App* train = app.add_subcommand(
      "train", "train the attention encoder and export tuned vectors");
  add_pipeline_options(train, train_args, cfg);
  train->add_option("--epochs", cfg.trainer.epochs, "training epochs");
  train->add_option("--lr", cfg.trainer.learning_rate, "learning rate");
  train->add_option("--z", cfg.trainer.z, "contrastive set size");
  train->add_option("--K", cfg.trainer.K, "prediction horizon");
  train->add_option("--batch-size", cfg.trainer.batch_size, "SGD batch size");
  train->add_option("--hidden", cfg.trainer.attention_hidden,
                    "attention hidden size");
  train->add_option("--context", cfg.trainer.context_size,
                    "recurrent state size");
  train->add_option("--dim", cfg.trainer.embedding_dim,
                    "embedding size when trained from scratch");
  train->add_option("--vectors-out", vectors_out,
                    "write tuned word vectors here");
  train->add_option("--model-out", model_out, "write encoder parameters here");

  CLI::App* eval =
      app.add_subcommand("eval", "n-gram recall of summaries against references");
  eval->add_option("--system", eval_system, "summary file or directory")
      ->required();
  eval->add_option("--refs", eval_refs, "directory of reference summaries")
      ->required();
  eval->add_option("--n", eval_n, "largest n-gram order (1 or 2)");
  eval->add_option("--limit", eval_limit, "truncation limit in words (0 = none)");

  CLI::App* bench =
      app.add_subcommand("bench", "time coupled iteration vs direct solve");
  bench->add_option("--sizes", bench_sizes, "sentence counts to benchmark");
  bench->add_option("--reps", bench_reps, "repetitions per size");
  bench->add_option("--seed", bench_seed, "rng seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\nRun with --help for usage.\n";
    return 2;
  }

  try {
    if (summarize->parsed()) return cmd_summarize(sum_args, cfg);
    if (keywords->parsed()) return cmd_keywords(key_args, cfg);
    if (rank_dump->parsed()) return cmd_rank_dump(dump_args, cfg, graph_path);
    if (train->parsed())
      return cmd_train(train_args, cfg, vectors_out, model_out);
    if (eval->parsed()) return cmd_eval(eval_system, eval_refs, eval_n, eval_limit);
    if (bench->parsed())
      return cmd_bench(bench_sizes, bench_reps,
                       static_cast<uint64_t>(bench_seed));
  } catch (const reprank::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

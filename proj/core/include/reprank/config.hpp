#ifndef REPRANK_CONFIG_HPP
#define REPRANK_CONFIG_HPP

#include <filesystem>
#include <string>

#include "reprank/attnlearn.hpp"
#include "reprank/summarizer.hpp"

namespace reprank {

// Whole-application configuration with the published defaults:
// alpha/beta/gamma = 0.70/0.05/0.25, cosine thresholds 0.45/0.3/0.2,
// tau = 0.25, kappa = 0.0001. A key=value config file (REPRANK_CONFIG or
// --config) may override them; command-line flags override the file.
struct AppConfig {
  SummaryConfig summary;
  TrainerConfig trainer;
  int threads = 0;  // 0: available parallelism

  void validate() const;

  // Unknown keys raise ConfigError. Recognized keys are the flag names:
  // alpha, beta, gamma, epsilon-ss, epsilon-sw, epsilon-ww, tau, kappa,
  // limit, keywords, min-count, solver, walks, max-batches, seed, threads,
  // repr, diversity, z, K, epochs, lr, batch-size, hidden, context.
  void apply_key_value(const std::string& key, const std::string& value);
  void load_file(const std::filesystem::path& path);

  // Loads from REPRANK_CONFIG when set and the file exists.
  static AppConfig from_environment();
};

ReprMode parse_repr_mode(const std::string& s);
DiversityMode parse_diversity_mode(const std::string& s);
SolverKind parse_solver_kind(const std::string& s);

}  // namespace reprank

#endif

#include "reprank/config.hpp"

#include <cstdlib>
#include <fstream>

#include "reprank/errors.hpp"

namespace reprank {

namespace {

double to_double(const std::string& key, const std::string& value) {
  try {
    size_t pos = 0;
    double v = std::stod(value, &pos);
    if (pos != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw ConfigError("invalid number for " + key + ": " + value);
  }
}

long to_long(const std::string& key, const std::string& value) {
  try {
    size_t pos = 0;
    long v = std::stol(value, &pos);
    if (pos != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw ConfigError("invalid integer for " + key + ": " + value);
  }
}

std::string trimmed(const std::string& s) {
  size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

}  // namespace

ReprMode parse_repr_mode(const std::string& s) {
  if (s == "average") return ReprMode::Average;
  if (s == "attention") return ReprMode::Attention;
  throw ConfigError("repr must be 'average' or 'attention', got " + s);
}

DiversityMode parse_diversity_mode(const std::string& s) {
  if (s == "absorb") return DiversityMode::Absorb;
  if (s == "plain") return DiversityMode::Plain;
  throw ConfigError("diversity must be 'absorb' or 'plain', got " + s);
}

SolverKind parse_solver_kind(const std::string& s) {
  if (s == "power") return SolverKind::Power;
  if (s == "direct") return SolverKind::Direct;
  throw ConfigError("solver must be 'power' or 'direct', got " + s);
}

void AppConfig::validate() const {
  summary.rank.validate();
  if (summary.tau <= 0.0) throw ConfigError("tau must be positive");
  if (summary.sampler.kappa <= 0.0) throw ConfigError("kappa must be positive");
  if (summary.length_limit < 1) throw ConfigError("limit must be >= 1");
  if (summary.keyword_count < 0) throw ConfigError("keywords must be >= 0");
  if (trainer.z < 2) throw ConfigError("z must be >= 2");
  if (trainer.K < 1) throw ConfigError("K must be >= 1");
}

void AppConfig::apply_key_value(const std::string& key,
                                const std::string& value) {
  if (key == "alpha") summary.rank.alpha = to_double(key, value);
  else if (key == "beta") summary.rank.beta = to_double(key, value);
  else if (key == "gamma") summary.rank.gamma = to_double(key, value);
  else if (key == "epsilon-ss") summary.thresholds.ss = to_double(key, value);
  else if (key == "epsilon-sw") summary.thresholds.sw = to_double(key, value);
  else if (key == "epsilon-ww") summary.thresholds.ww = to_double(key, value);
  else if (key == "tau") summary.tau = to_double(key, value);
  else if (key == "kappa") summary.sampler.kappa = to_double(key, value);
  else if (key == "limit") summary.length_limit = (int)to_long(key, value);
  else if (key == "keywords") summary.keyword_count = (int)to_long(key, value);
  else if (key == "min-count") summary.min_count = (int)to_long(key, value);
  else if (key == "solver") summary.rank.solver = parse_solver_kind(value);
  else if (key == "walks") summary.sampler.walks_per_batch = (int)to_long(key, value);
  else if (key == "max-batches") summary.sampler.max_batches = (int)to_long(key, value);
  else if (key == "seed") {
    summary.sampler.seed = (uint64_t)to_long(key, value);
    trainer.seed = (uint64_t)to_long(key, value);
  }
  else if (key == "threads") threads = (int)to_long(key, value);
  else if (key == "repr") summary.repr = parse_repr_mode(value);
  else if (key == "diversity") summary.diversity = parse_diversity_mode(value);
  else if (key == "z") trainer.z = (int)to_long(key, value);
  else if (key == "K") trainer.K = (int)to_long(key, value);
  else if (key == "epochs") trainer.epochs = (int)to_long(key, value);
  else if (key == "lr") trainer.learning_rate = to_double(key, value);
  else if (key == "batch-size") trainer.batch_size = (int)to_long(key, value);
  else if (key == "hidden") trainer.attention_hidden = (int)to_long(key, value);
  else if (key == "context") trainer.context_size = (int)to_long(key, value);
  else throw ConfigError("unknown key: " + key);
}

void AppConfig::load_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path.string());
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string s = trimmed(line);
    if (s.empty() || s[0] == '#') continue;
    size_t eq = s.find('=');
    if (eq == std::string::npos)
      throw ConfigError("expected key=value at line " +
                        std::to_string(line_no) + " of " + path.string());
    apply_key_value(trimmed(s.substr(0, eq)), trimmed(s.substr(eq + 1)));
  }
}

AppConfig AppConfig::from_environment() {
  AppConfig cfg;
  if (const char* env = std::getenv("REPRANK_CONFIG")) {
    if (*env && std::filesystem::exists(env)) cfg.load_file(env);
  }
  return cfg;
}

}  // namespace reprank

#include "reprank/embeddings.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>
#include <vector>

#include "reprank/errors.hpp"

namespace reprank {

namespace {

bool parse_double(const std::string& s, double& out) {
  const char* begin = s.data();
  const char* end = begin + s.size();
  auto [ptr, ec] = std::from_chars(begin, end, out);
  return ec == std::errc() && ptr == end && std::isfinite(out);
}

}  // namespace

EmbeddingTable load_embeddings(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open embedding file " + path.string());

  EmbeddingTable table(0, path.filename().string());
  std::string line;
  size_t line_no = 0;
  int dim = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::istringstream ss(line);
    std::string word, field;
    ss >> word;
    std::vector<double> values;
    while (ss >> field) {
      double v;
      if (!parse_double(field, v)) throw ParseError(line_no);
      values.push_back(v);
    }
    if (values.empty()) throw ParseError(line_no);
    if (dim == 0) {
      dim = static_cast<int>(values.size());
      table = EmbeddingTable(dim, path.filename().string());
    } else if (static_cast<int>(values.size()) != dim) {
      throw DimensionMismatch(line_no);
    }
    Eigen::VectorXd vec =
        Eigen::Map<Eigen::VectorXd>(values.data(), values.size());
    table.insert(word, std::move(vec));
  }
  if (table.size() == 0)
    throw ConfigError("embedding file is empty: " + path.string());
  return table;
}

void save_embeddings(const EmbeddingTable& table,
                     const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write embedding file " + path.string());
  out.precision(17);
  std::vector<std::string> words;
  words.reserve(table.size());
  for (const auto& [word, vec] : table.entries()) words.push_back(word);
  std::sort(words.begin(), words.end());
  for (const auto& word : words) {
    const Eigen::VectorXd& vec = *table.find(word);
    out << word;
    for (int i = 0; i < vec.size(); ++i) out << ' ' << vec[i];
    out << '\n';
  }
}

std::optional<Eigen::VectorXd> concept_vector(const Concept& item,
                                              const EmbeddingTable& table) {
  const Eigen::VectorXd* first = table.find(item.first);
  if (!item.is_bigram())
    return first ? std::optional<Eigen::VectorXd>(*first) : std::nullopt;
  const Eigen::VectorXd* second = table.find(item.second);
  if (first && second) return Eigen::VectorXd(0.5 * (*first + *second));
  if (first) return *first;
  if (second) return *second;
  return std::nullopt;
}

ConceptVectors resolve_concept_vectors(ConceptVocab& vocab,
                                       const EmbeddingTable& table) {
  const int m = vocab.size();
  std::vector<Eigen::VectorXd> rows;
  ConceptVectors out;
  for (int j = 0; j < m; ++j) {
    auto vec = concept_vector(vocab.concepts[j], table);
    if (vec) {
      rows.push_back(std::move(*vec));
      out.kept.push_back(j);
    } else {
      std::cerr << "warning: concept '" << vocab.concepts[j].text()
                << "' has no embedding, dropped from ranking\n";
    }
  }
  if (rows.empty()) throw EmptyVocabulary();
  std::vector<Concept> surviving;
  surviving.reserve(out.kept.size());
  for (int j : out.kept) surviving.push_back(vocab.concepts[j]);
  vocab.concepts = std::move(surviving);

  out.vectors.resize(static_cast<int>(rows.size()), table.dim());
  for (size_t i = 0; i < rows.size(); ++i)
    out.vectors.row(static_cast<int>(i)) = rows[i].transpose();
  out.coverage = static_cast<double>(rows.size()) / m;
  return out;
}

Eigen::VectorXd average_sentence_rep(const Sentence& sentence,
                                     const EmbeddingTable& table) {
  Eigen::VectorXd sum = Eigen::VectorXd::Zero(table.dim());
  int hits = 0;
  for (const auto& t : sentence.content_tokens) {
    if (const Eigen::VectorXd* v = table.find(t)) {
      sum += *v;
      ++hits;
    }
  }
  if (hits == 0) throw UnrepresentableSentence(sentence.global_index);
  return sum / hits;
}

Eigen::MatrixXd average_sentence_matrix(const Corpus& corpus,
                                        const EmbeddingTable& table) {
  Eigen::MatrixXd reps(corpus.sentence_count(), table.dim());
  for (const Sentence* s : corpus.all_sentences())
    reps.row(s->global_index) = average_sentence_rep(*s, table).transpose();
  return reps;
}

}  // namespace reprank

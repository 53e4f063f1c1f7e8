#include "reprank/corpus.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <sstream>

#include "reprank/errors.hpp"

namespace reprank {

namespace {

bool is_word_char(char c) {
  unsigned char u = static_cast<unsigned char>(c);
  return std::isalnum(u) || u >= 0x80;  // keep UTF-8 continuation bytes
}

const std::unordered_set<std::string>& abbreviations() {
  static const std::unordered_set<std::string> kAbbrev = {
      "mr",  "mrs", "ms",  "dr",   "prof", "sr",  "jr",  "st",
      "vs",  "etc", "inc", "ltd",  "co",   "corp", "no",  "gen",
      "gov", "sen", "rep", "rev",  "fig",  "al",  "approx",
      "dept", "est", "min", "max", "u.s",  "u.k", "u.n", "e.g", "i.e",
  };
  return kAbbrev;
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) {
    return static_cast<char>(std::tolower(c));
  });
  return s;
}

// Word preceding position `i` of `text` (i points at the terminator).
std::string word_before(const std::string& text, size_t i) {
  size_t end = i;
  size_t begin = end;
  while (begin > 0 && (is_word_char(text[begin - 1]) || text[begin - 1] == '.'))
    --begin;
  std::string w = text.substr(begin, end - begin);
  while (!w.empty() && w.back() == '.') w.pop_back();
  return lower(w);
}

void append_sentence(Document& doc, const std::string& raw,
                     const StopwordSet& stopwords) {
  Sentence s;
  s.text = raw;
  s.tokens = tokenize(raw);
  if (s.tokens.empty()) return;  // punctuation-only lines carry no content
  for (const auto& t : s.tokens)
    if (!stopwords.count(t)) s.content_tokens.push_back(t);
  s.position = static_cast<int>(doc.sentences.size()) + 1;
  doc.sentences.push_back(std::move(s));
}

std::string strip(const std::string& s) {
  size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

}  // namespace

int Corpus::sentence_count() const {
  int n = 0;
  for (const auto& d : documents) n += static_cast<int>(d.sentences.size());
  return n;
}

std::vector<const Sentence*> Corpus::all_sentences() const {
  std::vector<const Sentence*> flat;
  flat.reserve(sentence_count());
  for (const auto& d : documents)
    for (const auto& s : d.sentences) flat.push_back(&s);
  return flat;
}

std::vector<std::string> tokenize(const std::string& text) {
  std::vector<std::string> tokens;
  std::string current;
  auto flush = [&] {
    // trim hyphens/apostrophes that ended up at the edges
    size_t b = 0, e = current.size();
    while (b < e && !is_word_char(current[b])) ++b;
    while (e > b && !is_word_char(current[e - 1])) --e;
    if (e > b) tokens.push_back(lower(current.substr(b, e - b)));
    current.clear();
  };
  for (char c : text) {
    if (is_word_char(c) || c == '-' || c == '\'') {
      current.push_back(c);
    } else {
      flush();
    }
  }
  flush();
  return tokens;
}

std::vector<std::string> segment_sentences(const std::string& text) {
  std::vector<std::string> sentences;
  size_t start = 0;
  size_t i = 0;
  auto emit = [&](size_t end) {
    std::string s = strip(text.substr(start, end - start));
    if (!s.empty()) sentences.push_back(std::move(s));
    start = end;
  };
  while (i < text.size()) {
    char c = text[i];
    if (c == '.' || c == '!' || c == '?') {
      size_t j = i + 1;
      while (j < text.size() && (text[j] == '.' || text[j] == '!' ||
                                 text[j] == '?' || text[j] == '"' ||
                                 text[j] == '\''))
        ++j;
      bool at_eof = true;
      size_t k = j;
      while (k < text.size()) {
        if (!std::isspace(static_cast<unsigned char>(text[k]))) {
          at_eof = false;
          break;
        }
        ++k;
      }
      bool boundary = false;
      if (at_eof) {
        boundary = true;
      } else if (k > j) {  // whitespace followed the terminator
        bool next_upper = std::isupper(static_cast<unsigned char>(text[k])) ||
                          std::isdigit(static_cast<unsigned char>(text[k])) ||
                          text[k] == '"';
        boundary = next_upper;
        if (boundary && c == '.' && abbreviations().count(word_before(text, i)))
          boundary = false;
      }
      if (boundary) {
        emit(j);
        i = k;
        continue;
      }
    }
    ++i;
  }
  emit(text.size());
  return sentences;
}

const StopwordSet& default_stopwords() {
  static const StopwordSet kStopwords = {
      "a", "about", "above", "after", "again", "against", "all", "am", "an",
      "and", "any", "are", "aren't", "as", "at", "be", "because", "been",
      "before", "being", "below", "between", "both", "but", "by", "can",
      "can't", "cannot", "could", "couldn't", "did", "didn't", "do", "does",
      "doesn't", "doing", "don't", "down", "during", "each", "few", "for",
      "from", "further", "had", "hadn't", "has", "hasn't", "have", "haven't",
      "having", "he", "he'd", "he'll", "he's", "her", "here", "here's",
      "hers", "herself", "him", "himself", "his", "how", "how's", "i", "i'd",
      "i'll", "i'm", "i've", "if", "in", "into", "is", "isn't", "it", "it's",
      "its", "itself", "let's", "me", "more", "most", "mustn't", "my",
      "myself", "no", "nor", "not", "of", "off", "on", "once", "only", "or",
      "other", "ought", "our", "ours", "ourselves", "out", "over", "own",
      "same", "shan't", "she", "she'd", "she'll", "she's", "should",
      "shouldn't", "so", "some", "such", "than", "that", "that's", "the",
      "their", "theirs", "them", "themselves", "then", "there", "there's",
      "these", "they", "they'd", "they'll", "they're", "they've", "this",
      "those", "through", "to", "too", "under", "until", "up", "very", "was",
      "wasn't", "we", "we'd", "we'll", "we're", "we've", "were", "weren't",
      "what", "what's", "when", "when's", "where", "where's", "which",
      "while", "who", "who's", "whom", "why", "why's", "with", "won't",
      "would", "wouldn't", "you", "you'd", "you'll", "you're", "you've",
      "your", "yours", "yourself", "yourselves",
  };
  return kStopwords;
}

StopwordSet load_stopwords(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw ConfigError("cannot open stopword file " + file.string());
  StopwordSet set;
  std::string line;
  while (std::getline(in, line)) {
    std::string w = strip(line);
    if (!w.empty()) set.insert(lower(w));
  }
  return set;
}

Corpus load_cluster(const std::filesystem::path& dir, ClusterFormat format,
                    const StopwordSet& stopwords) {
  std::vector<std::filesystem::path> files;
  if (std::filesystem::is_directory(dir)) {
    for (const auto& entry : std::filesystem::directory_iterator(dir))
      if (entry.is_regular_file()) files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end(),
            [](const auto& a, const auto& b) {
              return a.filename().string() < b.filename().string();
            });
  if (files.empty()) throw NoDocuments(dir.string());

  Corpus corpus;
  int global = 0;
  for (const auto& file : files) {
    std::ifstream in(file);
    if (!in) throw NoDocuments(dir.string());
    Document doc;
    doc.id = file.filename().string();
    if (format == ClusterFormat::Presegmented) {
      std::string line;
      while (std::getline(in, line)) {
        std::string s = strip(line);
        if (!s.empty()) append_sentence(doc, s, stopwords);
      }
    } else {
      std::stringstream buf;
      buf << in.rdbuf();
      for (const auto& s : segment_sentences(buf.str()))
        append_sentence(doc, s, stopwords);
    }
    if (doc.sentences.empty()) throw EmptyDocument(doc.id);
    for (auto& s : doc.sentences) s.global_index = global++;
    corpus.documents.push_back(std::move(doc));
  }
  return corpus;
}

Corpus make_corpus(const std::vector<std::vector<std::string>>& docs,
                   const StopwordSet& stopwords) {
  Corpus corpus;
  int global = 0;
  int doc_no = 0;
  for (const auto& sentences : docs) {
    Document doc;
    doc.id = "doc" + std::to_string(doc_no++);
    for (const auto& s : sentences) append_sentence(doc, s, stopwords);
    if (doc.sentences.empty()) throw EmptyDocument(doc.id);
    for (auto& s : doc.sentences) s.global_index = global++;
    corpus.documents.push_back(std::move(doc));
  }
  if (corpus.documents.empty()) throw NoDocuments("<memory>");
  return corpus;
}

ConceptVocab build_vocab(const Corpus& corpus, int min_count) {
  std::map<std::string, int> unigrams;
  std::map<std::pair<std::string, std::string>, int> bigrams;
  for (const auto& doc : corpus.documents) {
    for (const auto& s : doc.sentences) {
      const auto& ct = s.content_tokens;
      for (const auto& t : ct) ++unigrams[t];
      for (size_t i = 0; i + 1 < ct.size(); ++i)
        ++bigrams[{ct[i], ct[i + 1]}];
    }
  }
  ConceptVocab vocab;
  for (const auto& [w, f] : unigrams)
    if (f >= min_count) vocab.concepts.push_back({w, "", f});
  for (const auto& [pair, f] : bigrams)
    if (f >= min_count) vocab.concepts.push_back({pair.first, pair.second, f});
  if (vocab.concepts.empty()) throw EmptyVocabulary();
  return vocab;
}

Eigen::VectorXd position_prior(const Corpus& corpus, double tau) {
  if (tau <= 0) throw ConfigError("tau must be positive");
  Eigen::VectorXd v(corpus.sentence_count());
  int i = 0;
  for (const auto& doc : corpus.documents)
    for (const auto& s : doc.sentences)
      v[i++] = std::pow(static_cast<double>(s.position), -tau);
  v /= v.sum();
  return v;
}

Eigen::VectorXd frequency_prior(const ConceptVocab& vocab) {
  if (vocab.concepts.empty()) throw EmptyVocabulary();
  Eigen::VectorXd v(vocab.size());
  for (int j = 0; j < vocab.size(); ++j)
    v[j] = static_cast<double>(vocab.concepts[j].frequency);
  v /= v.sum();
  return v;
}

}  // namespace reprank

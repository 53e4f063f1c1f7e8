#include "reprank/rouge.hpp"

#include <algorithm>
#include <iostream>
#include <map>

#include "reprank/errors.hpp"

namespace reprank {

namespace {

using NgramCounts = std::map<std::vector<std::string>, size_t>;

NgramCounts count_ngrams(const std::vector<std::string>& tokens, int n) {
  NgramCounts counts;
  if (static_cast<int>(tokens.size()) >= n)
    for (size_t i = 0; i + n <= tokens.size(); ++i)
      ++counts[{tokens.begin() + i, tokens.begin() + i + n}];
  return counts;
}

}  // namespace

RougeScore rouge_recall(const std::vector<std::string>& system,
                        const std::vector<std::vector<std::string>>& references,
                        int n, size_t length_limit) {
  if (n < 1 || n > 2) throw ConfigError("rouge order must be 1 or 2");
  if (references.empty()) throw NoValidReference();

  std::vector<std::string> truncated = system;
  if (length_limit > 0 && truncated.size() > length_limit)
    truncated.resize(length_limit);
  const NgramCounts sys_counts = count_ngrams(truncated, n);

  RougeScore score;
  score.n = n;
  for (const auto& ref : references) {
    if (static_cast<int>(ref.size()) < n) {
      std::cerr << "warning: reference shorter than n-gram order, skipped\n";
      continue;
    }
    const NgramCounts ref_counts = count_ngrams(ref, n);
    size_t ref_total = 0;
    size_t matched = 0;
    for (const auto& [gram, ref_count] : ref_counts) {
      ref_total += ref_count;
      auto it = sys_counts.find(gram);
      if (it != sys_counts.end())
        matched += std::min(it->second, ref_count);  // clip by reference side
    }
    score.per_reference.push_back(static_cast<double>(matched) / ref_total);
    score.matched += matched;
    score.total += ref_total;
  }
  if (score.per_reference.empty()) throw NoValidReference();
  double sum = 0.0;
  for (double r : score.per_reference) sum += r;
  score.averaged = sum / score.per_reference.size();
  return score;
}

}  // namespace reprank

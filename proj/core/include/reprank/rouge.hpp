#ifndef REPRANK_ROUGE_HPP
#define REPRANK_ROUGE_HPP

#include <cstddef>
#include <string>
#include <vector>

namespace reprank {

struct RougeScore {
  int n = 1;
  std::vector<double> per_reference;
  double averaged = 0.0;
  size_t matched = 0;  // clipped matches summed over references
  size_t total = 0;    // reference n-gram total
};

// Clipped n-gram recall against each reference, averaged. The system side
// is truncated to its first length_limit tokens; references shorter than n
// tokens are skipped (all skipped raises NoValidReference). Pass
// length_limit = 0 for no truncation.
RougeScore rouge_recall(const std::vector<std::string>& system,
                        const std::vector<std::vector<std::string>>& references,
                        int n, size_t length_limit);

}  // namespace reprank

#endif

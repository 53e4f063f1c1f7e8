#ifndef REPRANK_ERRORS_HPP
#define REPRANK_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace reprank {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NoDocuments : Error {
  explicit NoDocuments(const std::string& dir)
      : Error("no readable documents in " + dir) {}
};

struct EmptyDocument : Error {
  explicit EmptyDocument(const std::string& id)
      : Error("document yields no sentences: " + id) {}
};

struct EmptyVocabulary : Error {
  EmptyVocabulary() : Error("no concepts survive stopword/min-count filtering") {}
};

struct DimensionMismatch : Error {
  explicit DimensionMismatch(size_t line)
      : Error("embedding dimension mismatch at line " + std::to_string(line)) {}
};

struct ParseError : Error {
  explicit ParseError(size_t line)
      : Error("unparsable vector component at line " + std::to_string(line)) {}
};

struct UnrepresentableSentence : Error {
  explicit UnrepresentableSentence(int index)
      : Error("sentence " + std::to_string(index) +
              " has no in-table content token") {}
};

struct EmptyInput : Error {
  EmptyInput() : Error("empty input sequence") {}
};

struct NeedsMultipleDocuments : Error {
  NeedsMultipleDocuments()
      : Error("training requires at least two documents for negative sampling") {}
};

struct ShapeError : Error {
  explicit ShapeError(const std::string& what) : Error("shape error: " + what) {}
};

struct SolverDiverged : Error {
  SolverDiverged(int iterations, double residual)
      : Error("solver failed to converge after " + std::to_string(iterations) +
              " iterations (residual " + std::to_string(residual) + ")"),
        iterations(iterations),
        residual(residual) {}
  int iterations;
  double residual;
};

struct NumericalFailure : Error {
  explicit NumericalFailure(const std::string& what)
      : Error("numerical failure: " + what) {}
};

struct AlreadyAbsorbing : Error {
  explicit AlreadyAbsorbing(int index)
      : Error("state " + std::to_string(index) + " is already absorbing") {}
};

struct NoAbsorptionPath : Error {
  NoAbsorptionPath()
      : Error("no absorbing state reachable: (I - Q) is singular") {}
};

struct NoValidReference : Error {
  NoValidReference() : Error("every reference is shorter than the n-gram order") {}
};

struct EmptySummary : Error {
  EmptySummary() : Error("no sentence fits within the length limit") {}
};

struct ConfigError : Error {
  explicit ConfigError(const std::string& what) : Error("config: " + what) {}
};

}  // namespace reprank

#endif

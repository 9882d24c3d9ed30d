#ifndef JNMF_ERROR_HPP
#define JNMF_ERROR_HPP

#include <stdexcept>
#include <string>

namespace jnmf {

// Numeric values are mirrored by jnmf_status in the C header.
enum class ErrorCode : int {
  InvalidArgument = 1,
  Io = 2,
  Parse = 3,
  ShapeMismatch = 4,
  IndexOutOfRange = 5,
  NotSymmetric = 6,
  EmptyGraph = 7,
  ZeroDegree = 8,
  LabelMissing = 9,
  EmptyCorpus = 10,
  ZeroColumn = 11,
  UniverseMismatch = 12,
  DegenerateLabels = 13,
  ZeroQuery = 14,
  VocabMismatch = 15,
  ZeroSimilarity = 16,
  NonConvergence = 17,
  SingularSystem = 18,
};

const char* error_code_name(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

}  // namespace jnmf

#endif  // JNMF_ERROR_HPP

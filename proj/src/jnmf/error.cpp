#include "jnmf/error.hpp"

namespace jnmf {

const char* error_code_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::Io: return "Io";
    case ErrorCode::Parse: return "Parse";
    case ErrorCode::ShapeMismatch: return "ShapeMismatch";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::NotSymmetric: return "NotSymmetric";
    case ErrorCode::EmptyGraph: return "EmptyGraph";
    case ErrorCode::ZeroDegree: return "ZeroDegree";
    case ErrorCode::LabelMissing: return "LabelMissing";
    case ErrorCode::EmptyCorpus: return "EmptyCorpus";
    case ErrorCode::ZeroColumn: return "ZeroColumn";
    case ErrorCode::UniverseMismatch: return "UniverseMismatch";
    case ErrorCode::DegenerateLabels: return "DegenerateLabels";
    case ErrorCode::ZeroQuery: return "ZeroQuery";
    case ErrorCode::VocabMismatch: return "VocabMismatch";
    case ErrorCode::ZeroSimilarity: return "ZeroSimilarity";
    case ErrorCode::NonConvergence: return "NonConvergence";
    case ErrorCode::SingularSystem: return "SingularSystem";
  }
  return "Unknown";
}

}  // namespace jnmf

#include "docmap/error.hpp"

namespace docmap {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kNoSuchSession: return "no-such-session";
    case ErrorCode::kNoSuchEngine: return "no-such-engine";
    case ErrorCode::kNoSuchDocument: return "no-such-document";
    case ErrorCode::kEmptyQuery: return "empty-query";
    case ErrorCode::kServerBusy: return "server-busy";
    case ErrorCode::kNoSearchYet: return "no-search-yet";
    case ErrorCode::kAdapterFormat: return "adapter-format";
    case ErrorCode::kInvalidArgument: return "invalid-argument";
    case ErrorCode::kDuplicateId: return "duplicate-id";
    case ErrorCode::kInvalidLayer: return "invalid-layer";
    case ErrorCode::kTooFewDocuments: return "too-few-documents";
    case ErrorCode::kInconsistentLayer: return "inconsistent-layer";
    case ErrorCode::kUndefinedQuery: return "undefined-query";
    case ErrorCode::kBadRequest: return "bad-request";
    case ErrorCode::kIo: return "io-error";
  }
  return "internal";
}

}  // namespace docmap

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace docmap {

// Failure categories. The first block is surfaced verbatim on the wire.
enum class ErrorCode {
  kNoSuchSession,
  kNoSuchEngine,
  kNoSuchDocument,
  kEmptyQuery,
  kServerBusy,
  kNoSearchYet,
  kAdapterFormat,
  kInvalidArgument,
  kDuplicateId,
  kInvalidLayer,
  kTooFewDocuments,
  kInconsistentLayer,
  kUndefinedQuery,
  kBadRequest,
  kIo,
};

// Wire string for a code, e.g. "no-such-session".
std::string_view error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& msg)
      : std::runtime_error(msg), code_(code) {}

  ErrorCode code() const noexcept { return code_; }
  std::string_view code_name() const { return error_code_name(code_); }

 private:
  ErrorCode code_;
};

}  // namespace docmap

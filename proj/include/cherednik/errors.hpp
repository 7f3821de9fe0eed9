#pragma once

#include <stdexcept>
#include <string>

namespace cherednik {

struct SchemaError : std::runtime_error {
  explicit SchemaError(const std::string& m) : std::runtime_error("schema error: " + m) {}
};
struct ConsistencyError : std::runtime_error {
  explicit ConsistencyError(const std::string& m) : std::runtime_error("consistency error: " + m) {}
};
struct MissingDataError : std::runtime_error {
  explicit MissingDataError(const std::string& m) : std::runtime_error("missing data: " + m) {}
};
struct UnknownLabelError : std::runtime_error {
  explicit UnknownLabelError(const std::string& m) : std::runtime_error("unknown label: " + m) {}
};
struct IncompatibleError : std::runtime_error {
  explicit IncompatibleError(const std::string& m) : std::runtime_error("incompatible: " + m) {}
};
struct ZeroCharacterError : std::runtime_error {
  ZeroCharacterError() : std::runtime_error("zero character has no pole order") {}
};
struct UnknownEntriesError : std::runtime_error {
  explicit UnknownEntriesError(const std::string& m)
      : std::runtime_error("matrix has unknown entries: " + m) {}
};
struct CoverageError : std::runtime_error {
  explicit CoverageError(const std::string& m) : std::runtime_error("not covered by context: " + m) {}
};
struct PreconditionError : std::runtime_error {
  explicit PreconditionError(const std::string& m) : std::runtime_error("precondition failed: " + m) {}
};
struct EmptyDomainError : std::runtime_error {
  explicit EmptyDomainError(const std::string& m) : std::runtime_error("empty domain: " + m) {}
};
struct SearchCapExceeded : std::runtime_error {
  explicit SearchCapExceeded(const std::string& m) : std::runtime_error("search cap exceeded: " + m) {}
};

}  // namespace cherednik

#ifndef QFORMS_ERRORS_HPP
#define QFORMS_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace qforms {

// Raised whenever a computation would need more q-series coefficients than
// are available: reading past a series' truncation, or a linear solve whose
// truncated basis matrix cannot be rank-certified. Callers that control the
// expansion order may retry with a larger one; callers with fixed input must
// propagate (the CLI maps this to exit code 2).
class InsufficientTruncationError : public std::runtime_error {
public:
  explicit InsufficientTruncationError(const std::string& what)
      : std::runtime_error(what) {}
};

} // namespace qforms

#endif

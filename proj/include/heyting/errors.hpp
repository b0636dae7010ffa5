#ifndef HEYTING_ERRORS_HPP
#define HEYTING_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace heyting {

struct ParseError : std::runtime_error {
  std::size_t position;
  ParseError(std::string msg, std::size_t pos)
      : std::runtime_error(std::move(msg)), position(pos) {}
};

struct ArityError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A configured resource cap was hit. Never a silent truncation: callers
// either propagate this or report it verbatim.
struct CapExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DomainError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Two routes that must agree disagreed; signals an implementation bug.
struct InternalInconsistency : std::logic_error {
  using std::logic_error::logic_error;
};

}  // namespace heyting

#endif

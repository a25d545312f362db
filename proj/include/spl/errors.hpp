#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace spl {

// Byte range into the source text of a parse.
struct SourceSpan {
  std::size_t start = 0;
  std::size_t end = 0;
};

class ParseError : public std::runtime_error {
public:
  ParseError(std::string msg, SourceSpan span)
      : std::runtime_error(std::move(msg)), span_(span) {}
  SourceSpan span() const { return span_; }

private:
  SourceSpan span_;
};

// Raised when a configured search/decision budget is exhausted. Never stands
// in for a verdict.
class BudgetError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

}  // namespace spl

#pragma once

#include <stdexcept>
#include <string>

namespace cartwheel {

// Malformed input. Carries the 1-based line number of the offending line,
// or 0 when the problem is not tied to a line.
class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string& what)
      : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}

  int line() const noexcept { return line_; }

 private:
  int line_;
};

// A broken internal invariant. Always a bug in the engine, never a property
// of the certificate being checked.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

namespace detail {

[[noreturn]] inline void internal_failure(const char* expr, const char* file, int line) {
  throw InternalError(std::string("invariant violated: ") + expr + " (" + file + ":" +
                      std::to_string(line) + ")");
}

}  // namespace detail
}  // namespace cartwheel

// Checked in every build mode; these guard soundness, not performance.
#define CARTWHEEL_CHECK(expr) \
  ((expr) ? static_cast<void>(0) : ::cartwheel::detail::internal_failure(#expr, __FILE__, __LINE__))

#ifdef NDEBUG
#define CARTWHEEL_DEBUG_CHECK(expr) static_cast<void>(0)
#else
#define CARTWHEEL_DEBUG_CHECK(expr) CARTWHEEL_CHECK(expr)
#endif

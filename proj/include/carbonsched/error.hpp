#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace carbonsched {

/// Error category carried by every exception thrown from this library.
enum class Errc {
  invalid_argument,  // bad parameter, unknown name, misuse of the API
  parse_error,       // malformed input text
  data_error,        // negative values, irregular series, oversized gaps
  coverage_error,    // requested window not covered by the available data
  limit_exceeded,    // enumeration limits (oracle)
};

class Error : public std::runtime_error {
 public:
  Error(Errc code, std::string msg) : std::runtime_error(std::move(msg)), code_(code) {}
  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& msg) { throw Error(code, msg); }

}  // namespace carbonsched

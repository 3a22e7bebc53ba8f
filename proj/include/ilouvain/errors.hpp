#pragma once

#include <stdexcept>
#include <string>

namespace ilouvain {

/// Malformed input file; carries the 1-based line number when known.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& msg, int line = 0)
      : std::runtime_error(line > 0 ? msg + " (line " + std::to_string(line) + ")" : msg),
        line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

/// QUBO exceeds the capacity of the selected solver; caller must shrink S.
class SizeExceeded : public std::runtime_error {
 public:
  SizeExceeded(int num_vars, int capacity)
      : std::runtime_error("QUBO has " + std::to_string(num_vars) +
                           " variables, solver capacity is " + std::to_string(capacity)),
        num_vars_(num_vars),
        capacity_(capacity) {}
  int num_vars() const { return num_vars_; }
  int capacity() const { return capacity_; }

 private:
  int num_vars_;
  int capacity_;
};

/// Remote solver endpoint unreachable after all retries.
class RemoteUnavailable : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Remote solver answered, but the response violates the wire protocol
/// (bad payload, wrong bit count, or energy inconsistent with the model).
class ProtocolViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace ilouvain

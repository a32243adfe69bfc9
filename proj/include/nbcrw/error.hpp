#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace nbcrw {

// Stable error taxonomy. The numeric values double as CLI exit codes.
enum class ErrorCode : int {
  parse_error = 1,
  tree_graph = 2,
  not_connected = 3,
  zero_denominator = 4,
  convergence_failure = 5,
  invalid_params = 6,
};

std::string_view to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }
  int exit_code() const noexcept { return static_cast<int>(code_); }

 private:
  ErrorCode code_;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& message)
      : Error(ErrorCode::parse_error,
              "line " + std::to_string(line) + ": " + message),
        line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// A node whose neighbourhood carries (numerically) zero centrality, so the
/// biased transition row cannot be normalised.
class ZeroDenominatorError : public Error {
 public:
  ZeroDenominatorError(long long node_label, double denominator)
      : Error(ErrorCode::zero_denominator,
              "neighbourhood centrality vanishes at node " +
                  std::to_string(node_label)),
        node_(node_label),
        denominator_(denominator) {}

  long long node() const noexcept { return node_; }
  double denominator() const noexcept { return denominator_; }

 private:
  long long node_;
  double denominator_;
};

}  // namespace nbcrw

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace conc {

/// Bad input data: malformed files, invalid network construction requests.
class InputError : public std::runtime_error {
public:
  explicit InputError(const std::string& what, std::size_t line = 0)
      : std::runtime_error(line == 0 ? what : "line " + std::to_string(line) + ": " + what),
        line_(line) {}

  /// 1-based source line, 0 when not tied to a stream position.
  [[nodiscard]] std::size_t line() const noexcept { return line_; }

private:
  std::size_t line_;
};

/// An iterative computation failed to converge.
class NumericError : public std::runtime_error {
public:
  NumericError(const std::string& what, double residual)
      : std::runtime_error(what), residual_(residual) {}

  [[nodiscard]] double residual() const noexcept { return residual_; }

private:
  double residual_;
};

}  // namespace conc

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace vcm {

// Base of every error thrown by the library.
class error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad edge data: non-positive / non-finite weight, empty label.
class validation_error : public error {
 public:
  validation_error(std::size_t line, const std::string& what)
      : error("line " + std::to_string(line) + ": " + what), line_{line} {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

// Malformed input text.
class parse_error : public error {
 public:
  parse_error(std::size_t line, const std::string& what)
      : error("line " + std::to_string(line) + ": " + what), line_{line} {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class io_error : public error {
 public:
  using error::error;
};

class unknown_vertex : public error {
 public:
  explicit unknown_vertex(std::string label)
      : error("unknown vertex '" + label + "'"), label_{std::move(label)} {}

  const std::string& label() const noexcept { return label_; }

 private:
  std::string label_;
};

// Precondition violated (s == t for max-flow, negative alpha, ...).
class domain_error : public error {
 public:
  using error::error;
};

// A dense baseline was asked to run on a graph above its size gate.
class scale_error : public error {
 public:
  using error::error;
};

// The brute-force oracle refuses graphs it cannot enumerate.
class oracle_size_error : public error {
 public:
  using error::error;
};

}  // namespace vcm

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace intstab {

enum class ErrorCode {
  invalid_argument,
  empty_operand,
  division_by_zero_interval,
  domain_error,
  dimension_mismatch,
  syntax_error,
  unknown_identifier,
  arity_error,
  centre_residual_too_large,
  centre_outside_box,
  not_contained,
  not_proven,
  invalid_domain,
  io_error,
  bad_projection,
};

const char* to_string(ErrorCode code);

/// Single exception type for the library; `code()` tells callers what failed.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Parser failure carrying the byte offset into the source text.
class ParseError : public Error {
 public:
  ParseError(ErrorCode code, std::size_t offset, const std::string& what)
      : Error(code, what + " at offset " + std::to_string(offset)), offset_(offset) {}

  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

}  // namespace intstab

#pragma once

// Text front end for VectorFunc. See docs/grammar.md for the grammar.

#include <cstddef>
#include <optional>
#include <string_view>

#include "intstab/expr.hpp"

namespace intstab {

struct ParseOptions {
  /// Declared state / parameter dimensions. When unset, the largest index
  /// used in the text is taken.
  std::optional<std::size_t> state_dim;
  std::optional<std::size_t> param_dim;
};

/// Throws ParseError (SyntaxError, UnknownIdentifier, ArityError).
VectorFunc parse(std::string_view text, const ParseOptions& options = {});

/// A constant expression such as "7/12" or "pi/6", enclosed rigorously.
Interval parse_constant(std::string_view text);

}  // namespace intstab

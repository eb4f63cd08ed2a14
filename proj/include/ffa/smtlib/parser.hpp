#pragma once

#include "ffa/smtlib/ast.hpp"

namespace ffa::smtlib {

/// Parses a balanced sequence of s-expressions. Throws ScriptError(Parse) on
/// unbalanced parentheses.
std::vector<SExpr> parse_sexprs(const std::vector<Token>& tokens);

/// Builds the command sequence, validating command shapes: known command
/// heads only, zero-arity declare-fun, zero-parameter define-sort, reserved
/// literal-shaped names rejected in declarations, quantifiers rejected.
Script parse_script(const std::vector<Token>& tokens);

/// Convenience: tokenize + parse_script.
Script parse_script_text(std::string_view text);

}  // namespace ffa::smtlib

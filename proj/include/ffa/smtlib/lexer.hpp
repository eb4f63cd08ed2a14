#pragma once

#include <string_view>

#include "ffa/smtlib/token.hpp"

namespace ffa::smtlib {

/// Tokenizes SMT-LIB 2.6 text. Comments (';' to end of line) and whitespace
/// are skipped; field literals are kept as single tokens including dots and
/// minus signs. Throws ScriptError(Lex) with the position of the offending
/// character.
std::vector<Token> tokenize(std::string_view text);

}  // namespace ffa::smtlib

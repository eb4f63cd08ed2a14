#pragma once

#include <string>
#include <vector>

#include "ffa/field_core.hpp"

namespace ffa::smtlib {

enum class TokenKind {
  LParen,
  RParen,
  Symbol,     // simple or |quoted| (text stored without bars)
  Numeral,    // digits, no leading zero except "0" itself
  Keyword,    // :name
  String,     // "..." (text stored without quotes)
  FfLiteral,  // ff-?digits(.-?digits)*
};

struct Token {
  TokenKind kind;
  std::string text;
  SourcePos pos;
};

/// Whether text matches the field literal pattern `ff` -?digits (.-?digits)*.
/// Also the reserved-name test: declarations may not use such names.
bool is_ff_literal_text(const std::string& text);

/// Splits the lexical tail of a literal token ("ff" stripped) into signed
/// coefficient integers by ascending degree.
std::vector<Integer> literal_coefficients(const std::string& text);

}  // namespace ffa::smtlib

#include "ffa/smtlib/lexer.hpp"

#include <cctype>

namespace ffa::smtlib {

namespace {

bool is_simple_symbol_char(char c) {
  if (std::isalnum(static_cast<unsigned char>(c))) return true;
  for (char s : {'~', '!', '@', '$', '%', '^', '&', '*', '_', '-', '+', '=',
                 '<', '>', '.', '?', '/'}) {
    if (c == s) return true;
  }
  return false;
}

bool is_digit(char c) { return c >= '0' && c <= '9'; }

}  // namespace

bool is_ff_literal_text(const std::string& text) {
  size_t i = 2;
  if (text.size() < 3 || text[0] != 'f' || text[1] != 'f') return false;
  bool expect_chunk = true;
  while (i < text.size()) {
    if (!expect_chunk) {
      if (text[i] != '.') return false;
      ++i;
    }
    if (i < text.size() && text[i] == '-') ++i;
    if (i >= text.size() || !is_digit(text[i])) return false;
    while (i < text.size() && is_digit(text[i])) ++i;
    expect_chunk = false;
  }
  return !expect_chunk;
}

std::vector<Integer> literal_coefficients(const std::string& text) {
  std::vector<Integer> cs;
  size_t i = 0;
  while (i <= text.size()) {
    size_t dot = text.find('.', i);
    if (dot == std::string::npos) dot = text.size();
    cs.emplace_back(text.substr(i, dot - i));
    i = dot + 1;
  }
  return cs;
}

std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> out;
  int line = 1, col = 1;
  size_t i = 0;

  auto advance = [&](char c) {
    if (c == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
    ++i;
  };
  auto error = [&](SourcePos pos, const std::string& msg) -> void {
    throw ScriptError(ScriptError::Kind::Lex, pos, msg);
  };

  while (i < text.size()) {
    const char c = text[i];
    const SourcePos pos{line, col};
    if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
      advance(c);
    } else if (c == ';') {
      while (i < text.size() && text[i] != '\n') advance(text[i]);
    } else if (c == '(') {
      out.push_back({TokenKind::LParen, "(", pos});
      advance(c);
    } else if (c == ')') {
      out.push_back({TokenKind::RParen, ")", pos});
      advance(c);
    } else if (c == '"') {
      advance(c);
      std::string s;
      bool closed = false;
      while (i < text.size()) {
        if (text[i] == '"') {
          if (i + 1 < text.size() && text[i + 1] == '"') {  // escaped quote
            s += '"';
            advance('"');
            advance('"');
            continue;
          }
          advance('"');
          closed = true;
          break;
        }
        s += text[i];
        advance(text[i]);
      }
      if (!closed) error(pos, "unterminated string literal");
      out.push_back({TokenKind::String, std::move(s), pos});
    } else if (c == '|') {
      advance(c);
      std::string s;
      bool closed = false;
      while (i < text.size()) {
        if (text[i] == '|') {
          advance('|');
          closed = true;
          break;
        }
        if (text[i] == '\\') error(pos, "backslash inside quoted symbol");
        s += text[i];
        advance(text[i]);
      }
      if (!closed) error(pos, "unterminated quoted symbol");
      out.push_back({TokenKind::Symbol, std::move(s), pos});
    } else if (c == ':') {
      advance(c);
      std::string s;
      while (i < text.size() && is_simple_symbol_char(text[i])) {
        s += text[i];
        advance(text[i]);
      }
      if (s.empty()) error(pos, "empty keyword");
      out.push_back({TokenKind::Keyword, std::move(s), pos});
    } else if (is_digit(c)) {
      std::string s;
      while (i < text.size() && is_digit(text[i])) {
        s += text[i];
        advance(text[i]);
      }
      if (i < text.size() && is_simple_symbol_char(text[i])) {
        error(pos, "numeral followed by '" + std::string(1, text[i]) + "'");
      }
      if (s.size() > 1 && s[0] == '0') error(pos, "numeral with a leading zero");
      out.push_back({TokenKind::Numeral, std::move(s), pos});
    } else if (is_simple_symbol_char(c)) {
      std::string s;
      while (i < text.size() && is_simple_symbol_char(text[i])) {
        s += text[i];
        advance(text[i]);
      }
      const TokenKind kind =
          is_ff_literal_text(s) ? TokenKind::FfLiteral : TokenKind::Symbol;
      out.push_back({kind, std::move(s), pos});
    } else {
      error(pos, "illegal character '" + std::string(1, c) + "'");
    }
  }
  return out;
}

}  // namespace ffa::smtlib

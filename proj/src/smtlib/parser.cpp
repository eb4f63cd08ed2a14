#include "ffa/smtlib/parser.hpp"

#include "ffa/smtlib/lexer.hpp"

namespace ffa::smtlib {

namespace {

[[noreturn]] void parse_error(SourcePos pos, const std::string& msg) {
  throw ScriptError(ScriptError::Kind::Parse, pos, msg);
}

[[noreturn]] void unsupported(SourcePos pos, const std::string& msg) {
  throw ScriptError(ScriptError::Kind::Unsupported, pos, msg);
}

SExpr parse_one(const std::vector<Token>& tokens, size_t& i) {
  const Token& t = tokens[i];
  if (t.kind == TokenKind::RParen) parse_error(t.pos, "unexpected ')'");
  if (t.kind != TokenKind::LParen) {
    ++i;
    return SExpr{t, {}, true, t.pos};
  }
  SExpr list{t, {}, false, t.pos};
  ++i;  // consume '('
  while (true) {
    if (i >= tokens.size()) parse_error(t.pos, "unterminated '('");
    if (tokens[i].kind == TokenKind::RParen) {
      ++i;
      return list;
    }
    list.items.push_back(parse_one(tokens, i));
  }
}

// Quantified formulas are outside QF_FFA; catch them at parse time so the
// diagnostic names the construct instead of a generic unknown symbol.
void reject_quantifiers(const SExpr& e) {
  if (e.leaf) return;
  if (!e.items.empty() &&
      (e.items[0].is_symbol("forall") || e.items[0].is_symbol("exists"))) {
    unsupported(e.pos, "quantifiers are not available in QF_FFA");
  }
  for (const SExpr& item : e.items) reject_quantifiers(item);
}

const SExpr& nth(const SExpr& form, size_t i) { return form.items[i]; }

void require_arity(const SExpr& form, size_t n, const std::string& what) {
  if (form.items.size() != n) {
    parse_error(form.pos, what + " expects " + std::to_string(n - 1) +
                              " argument(s), got " +
                              std::to_string(form.items.size() - 1));
  }
}

// Declared names must be plain symbols; literal-shaped names are reserved by
// the theory.
const std::string& declared_name(const SExpr& e, const std::string& what) {
  if (!e.leaf || (e.atom.kind != TokenKind::Symbol &&
                  e.atom.kind != TokenKind::FfLiteral)) {
    parse_error(e.pos, what + " name must be a symbol");
  }
  if (e.atom.kind == TokenKind::FfLiteral || is_ff_literal_text(e.atom.text)) {
    parse_error(e.pos, "'" + e.atom.text +
                           "' is reserved: literal-shaped names cannot be declared");
  }
  return e.atom.text;
}

}  // namespace

std::vector<SExpr> parse_sexprs(const std::vector<Token>& tokens) {
  std::vector<SExpr> out;
  size_t i = 0;
  while (i < tokens.size()) out.push_back(parse_one(tokens, i));
  return out;
}

Script parse_script(const std::vector<Token>& tokens) {
  Script script;
  for (SExpr& form : parse_sexprs(tokens)) {
    if (form.leaf) parse_error(form.pos, "expected a command, got an atom");
    if (form.items.empty()) parse_error(form.pos, "empty command");
    const SExpr& head = form.items[0];
    if (!head.leaf || head.atom.kind != TokenKind::Symbol) {
      parse_error(head.pos, "command name must be a symbol");
    }
    const std::string& name = head.atom.text;
    ParsedCommand::Kind kind;

    if (name == "set-logic") {
      require_arity(form, 2, "set-logic");
      if (!nth(form, 1).leaf || nth(form, 1).atom.kind != TokenKind::Symbol) {
        parse_error(nth(form, 1).pos, "set-logic expects a logic name");
      }
      kind = ParsedCommand::Kind::SetLogic;
    } else if (name == "set-info") {
      if (form.items.size() != 2 && form.items.size() != 3) {
        parse_error(form.pos, "set-info expects a keyword and an optional value");
      }
      if (!nth(form, 1).leaf || nth(form, 1).atom.kind != TokenKind::Keyword) {
        parse_error(nth(form, 1).pos, "set-info expects a :keyword");
      }
      kind = ParsedCommand::Kind::SetInfo;
    } else if (name == "declare-fun") {
      require_arity(form, 4, "declare-fun");
      declared_name(nth(form, 1), "declare-fun");
      const SExpr& params = nth(form, 2);
      if (params.leaf) parse_error(params.pos, "declare-fun expects a parameter sort list");
      if (!params.items.empty()) {
        unsupported(params.pos,
                    "only zero-arity declarations (constants) are available");
      }
      kind = ParsedCommand::Kind::DeclareFun;
    } else if (name == "define-sort") {
      require_arity(form, 4, "define-sort");
      declared_name(nth(form, 1), "define-sort");
      const SExpr& params = nth(form, 2);
      if (params.leaf) parse_error(params.pos, "define-sort expects a parameter list");
      if (!params.items.empty()) {
        unsupported(params.pos, "parametric sort definitions are not available");
      }
      kind = ParsedCommand::Kind::DefineSort;
    } else if (name == "assert") {
      require_arity(form, 2, "assert");
      reject_quantifiers(nth(form, 1));
      kind = ParsedCommand::Kind::Assert;
    } else if (name == "check-sat") {
      require_arity(form, 1, "check-sat");
      kind = ParsedCommand::Kind::CheckSat;
    } else if (name == "get-model") {
      require_arity(form, 1, "get-model");
      kind = ParsedCommand::Kind::GetModel;
    } else if (name == "get-value") {
      require_arity(form, 2, "get-value");
      const SExpr& terms = nth(form, 1);
      if (terms.leaf || terms.items.empty()) {
        parse_error(terms.pos, "get-value expects a nonempty term list");
      }
      reject_quantifiers(terms);
      kind = ParsedCommand::Kind::GetValue;
    } else if (name == "exit") {
      require_arity(form, 1, "exit");
      kind = ParsedCommand::Kind::Exit;
    } else {
      parse_error(head.pos, "unknown command '" + name + "'");
    }
    script.commands.push_back({kind, form.pos, std::move(form)});
  }
  return script;
}

Script parse_script_text(std::string_view text) {
  return parse_script(tokenize(text));
}

}  // namespace ffa::smtlib

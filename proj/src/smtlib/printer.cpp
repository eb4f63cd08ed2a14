#include "ffa/smtlib/printer.hpp"

#include <cctype>

#include "ffa/normalizer.hpp"

namespace ffa::smtlib {

namespace {

bool is_simple_symbol(const std::string& name) {
  if (name.empty()) return false;
  if (std::isdigit(static_cast<unsigned char>(name[0]))) return false;
  for (char c : name) {
    if (std::isalnum(static_cast<unsigned char>(c))) continue;
    if (std::string_view("~!@$%^&*_-+=<>.?/").find(c) == std::string_view::npos) {
      return false;
    }
  }
  return true;
}

std::string op_name(FfOpKind op) {
  switch (op) {
    case FfOpKind::Add: return "ff.add";
    case FfOpKind::Sub: return "ff.sub";
    case FfOpKind::Mul: return "ff.mul";
    case FfOpKind::Div: return "ff.div";
    case FfOpKind::Neg: return "ff.neg";
    case FfOpKind::Recip: return "ff.recip";
  }
  throw Error("unreachable operator kind");
}

std::string print_application(const std::string& head,
                              const std::vector<Term>& args) {
  std::string out = "(" + head;
  for (const Term& a : args) out += " " + print_term(a);
  return out + ")";
}

}  // namespace

std::string print_symbol(const std::string& name) {
  if (is_simple_symbol(name)) return name;
  if (name.find('|') != std::string::npos ||
      name.find('\\') != std::string::npos) {
    throw Error("symbol '" + name + "' cannot be spelled");
  }
  return "|" + name + "|";
}

std::string print_sexpr(const SExpr& e) {
  if (e.leaf) {
    switch (e.atom.kind) {
      case TokenKind::Symbol:
        return print_symbol(e.atom.text);
      case TokenKind::Keyword:
        return ":" + e.atom.text;
      case TokenKind::String: {
        std::string s = "\"";
        for (char c : e.atom.text) {
          s += c;
          if (c == '"') s += '"';
        }
        return s + "\"";
      }
      default:
        return e.atom.text;
    }
  }
  std::string out = "(";
  for (size_t i = 0; i < e.items.size(); ++i) {
    if (i > 0) out += " ";
    out += print_sexpr(e.items[i]);
  }
  return out + ")";
}

std::string print_term(const Term& t) {
  switch (t.kind()) {
    case TermKind::Literal:
      return print_literal(t.value());
    case TermKind::Const:
    case TermKind::Var:
      return print_symbol(t.name());
    case TermKind::BoolLit:
      return t.bool_value() ? "true" : "false";
    case TermKind::FfOp:
      return print_application(op_name(t.op()), t.children());
    case TermKind::Eq:
      return print_application("=", t.children());
    case TermKind::Not:
      return print_application("not", t.children());
    case TermKind::And:
      return print_application("and", t.children());
    case TermKind::Or:
      return print_application("or", t.children());
    case TermKind::Implies:
      return print_application("=>", t.children());
    case TermKind::Xor:
      return print_application("xor", t.children());
    case TermKind::Ite:
      return print_application("ite", t.children());
    case TermKind::Let: {
      std::string out = "(let (";
      for (size_t i = 0; i < t.bindings().size(); ++i) {
        if (i > 0) out += " ";
        out += "(" + print_symbol(t.bindings()[i].first) + " " +
               print_term(t.bindings()[i].second) + ")";
      }
      return out + ") " + print_term(t.children()[0]) + ")";
    }
  }
  throw Error("unreachable term kind");
}

std::string print_command(const TypedCommand& c) {
  switch (c.kind) {
    case TypedCommand::Kind::SetLogic:
      return "(set-logic " + c.symbol + ")";
    case TypedCommand::Kind::SetInfo: {
      std::string out = "(set-info :" + c.symbol;
      if (!c.text.empty()) out += " " + c.text;
      return out + ")";
    }
    case TypedCommand::Kind::DeclareFun:
      return "(declare-fun " + print_symbol(c.symbol) + " () " +
             print_sort(*c.sort) + ")";
    case TypedCommand::Kind::DefineSort:
      return "(define-sort " + print_symbol(c.symbol) + " () " +
             print_sort(*c.sort) + ")";
    case TypedCommand::Kind::Assert:
      return "(assert " + print_term(c.terms[0]) + ")";
    case TypedCommand::Kind::CheckSat:
      return "(check-sat)";
    case TypedCommand::Kind::GetModel:
      return "(get-model)";
    case TypedCommand::Kind::GetValue: {
      std::string out = "(get-value (";
      for (size_t i = 0; i < c.terms.size(); ++i) {
        if (i > 0) out += " ";
        out += print_term(c.terms[i]);
      }
      return out + "))";
    }
    case TypedCommand::Kind::Exit:
      return "(exit)";
  }
  throw Error("unreachable command kind");
}

std::string print_script(const TypedScript& s) {
  std::string out;
  for (const TypedCommand& c : s.commands) {
    out += print_command(c);
    out += "\n";
  }
  return out;
}

}  // namespace ffa::smtlib

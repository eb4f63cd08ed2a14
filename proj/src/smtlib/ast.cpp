#include "ffa/smtlib/ast.hpp"

namespace ffa::smtlib {

namespace {

const FieldSort& require_common_field_sort(const std::vector<Term>& args) {
  for (const Term& a : args) {
    if (!a.sort().is_field()) {
      throw SortError("field operator applied to a Boolean argument");
    }
  }
  const FieldSort& s = args.front().sort().field_sort();
  for (const Term& a : args) {
    if (a.sort().field_sort() != s) {
      throw SortError("field operator arguments have different sorts");
    }
  }
  return s;
}

void require_bool(const Term& t) {
  if (!t.sort().is_bool()) {
    throw SortError("Boolean connective applied to a field argument");
  }
}

}  // namespace

Term Term::make(TermNode n) {
  return Term(std::make_shared<const TermNode>(std::move(n)));
}

Term Term::literal(FieldElement v) {
  Sort s = Sort::field(v.sort());
  TermNode n{TermKind::Literal, std::move(s)};
  n.value = std::move(v);
  return make(std::move(n));
}

Term Term::constant(std::string name, FieldSort sort) {
  TermNode n{TermKind::Const, Sort::field(std::move(sort))};
  n.name = std::move(name);
  return make(std::move(n));
}

Term Term::variable(std::string name, Sort sort) {
  TermNode n{TermKind::Var, std::move(sort)};
  n.name = std::move(name);
  return make(std::move(n));
}

Term Term::ff_op(FfOpKind op, std::vector<Term> args) {
  const size_t k = args.size();
  const bool arity_ok = (op == FfOpKind::Add || op == FfOpKind::Mul) ? k >= 2
                        : (op == FfOpKind::Neg || op == FfOpKind::Recip)
                            ? k == 1
                            : k == 2;
  if (!arity_ok) throw SortError("wrong argument count for field operator");
  Sort s = Sort::field(require_common_field_sort(args));
  TermNode n{TermKind::FfOp, std::move(s)};
  n.op = op;
  n.children = std::move(args);
  return make(std::move(n));
}

Term Term::eq(Term a, Term b) {
  if (a.sort() != b.sort()) {
    throw SortError("equality between terms of different sorts");
  }
  TermNode n{TermKind::Eq, Sort::boolean()};
  n.children = {std::move(a), std::move(b)};
  return make(std::move(n));
}

Term Term::bool_lit(bool b) {
  TermNode n{TermKind::BoolLit, Sort::boolean()};
  n.bool_value = b;
  return make(std::move(n));
}

Term Term::negation(Term a) {
  require_bool(a);
  TermNode n{TermKind::Not, Sort::boolean()};
  n.children = {std::move(a)};
  return make(std::move(n));
}

Term Term::conj(std::vector<Term> args) {
  if (args.size() < 2) throw SortError("and needs at least two arguments");
  for (const Term& a : args) require_bool(a);
  TermNode n{TermKind::And, Sort::boolean()};
  n.children = std::move(args);
  return make(std::move(n));
}

Term Term::disj(std::vector<Term> args) {
  if (args.size() < 2) throw SortError("or needs at least two arguments");
  for (const Term& a : args) require_bool(a);
  TermNode n{TermKind::Or, Sort::boolean()};
  n.children = std::move(args);
  return make(std::move(n));
}

Term Term::implies(Term a, Term b) {
  require_bool(a);
  require_bool(b);
  TermNode n{TermKind::Implies, Sort::boolean()};
  n.children = {std::move(a), std::move(b)};
  return make(std::move(n));
}

Term Term::xor_of(Term a, Term b) {
  require_bool(a);
  require_bool(b);
  TermNode n{TermKind::Xor, Sort::boolean()};
  n.children = {std::move(a), std::move(b)};
  return make(std::move(n));
}

Term Term::ite(Term cond, Term then_t, Term else_t) {
  require_bool(cond);
  if (then_t.sort() != else_t.sort()) {
    throw SortError("ite branches have different sorts");
  }
  TermNode n{TermKind::Ite, then_t.sort()};
  n.children = {std::move(cond), std::move(then_t), std::move(else_t)};
  return make(std::move(n));
}

Term Term::let(std::vector<std::pair<std::string, Term>> bindings, Term body) {
  if (bindings.empty()) throw SortError("let needs at least one binding");
  TermNode n{TermKind::Let, body.sort()};
  n.bindings = std::move(bindings);
  n.children = {std::move(body)};
  return make(std::move(n));
}

bool Term::operator==(const Term& o) const {
  if (node_ == o.node_) return true;
  const TermNode& a = *node_;
  const TermNode& b = *o.node_;
  if (a.kind != b.kind || a.sort != b.sort) return false;
  switch (a.kind) {
    case TermKind::Literal:
      if (*a.value != *b.value) return false;
      break;
    case TermKind::BoolLit:
      if (a.bool_value != b.bool_value) return false;
      break;
    case TermKind::Const:
    case TermKind::Var:
      if (a.name != b.name) return false;
      break;
    case TermKind::FfOp:
      if (a.op != b.op) return false;
      break;
    default:
      break;
  }
  if (a.bindings.size() != b.bindings.size()) return false;
  for (size_t i = 0; i < a.bindings.size(); ++i) {
    if (a.bindings[i].first != b.bindings[i].first ||
        a.bindings[i].second != b.bindings[i].second) {
      return false;
    }
  }
  if (a.children.size() != b.children.size()) return false;
  for (size_t i = 0; i < a.children.size(); ++i) {
    if (a.children[i] != b.children[i]) return false;
  }
  return true;
}

void collect_constants(const Term& t, std::set<std::string>& out) {
  if (t.kind() == TermKind::Const) out.insert(t.name());
  for (const auto& [name, value] : t.bindings()) collect_constants(value, out);
  for (const Term& c : t.children()) collect_constants(c, out);
}

Term substitute(const Term& t, const std::map<std::string, Term>& env) {
  if (env.empty()) return t;
  switch (t.kind()) {
    case TermKind::Var: {
      auto it = env.find(t.name());
      return it == env.end() ? t : it->second;
    }
    case TermKind::Literal:
    case TermKind::Const:
    case TermKind::BoolLit:
      return t;
    case TermKind::Let: {
      std::vector<std::pair<std::string, Term>> bindings;
      bindings.reserve(t.bindings().size());
      std::map<std::string, Term> inner = env;
      for (const auto& [name, value] : t.bindings()) {
        bindings.emplace_back(name, substitute(value, env));
        inner.erase(name);  // inner scope shadows the outer binding
      }
      return Term::let(std::move(bindings), substitute(t.children().front(), inner));
    }
    default: {
      std::vector<Term> kids;
      kids.reserve(t.children().size());
      for (const Term& c : t.children()) kids.push_back(substitute(c, env));
      switch (t.kind()) {
        case TermKind::FfOp:
          return Term::ff_op(t.op(), std::move(kids));
        case TermKind::Eq:
          return Term::eq(kids[0], kids[1]);
        case TermKind::Not:
          return Term::negation(kids[0]);
        case TermKind::And:
          return Term::conj(std::move(kids));
        case TermKind::Or:
          return Term::disj(std::move(kids));
        case TermKind::Implies:
          return Term::implies(kids[0], kids[1]);
        case TermKind::Xor:
          return Term::xor_of(kids[0], kids[1]);
        case TermKind::Ite:
          return Term::ite(kids[0], kids[1], kids[2]);
        default:
          throw Error("internal: unexpected term kind in substitute");
      }
    }
  }
}

bool TypedCommand::operator==(const TypedCommand& o) const {
  if (kind != o.kind || symbol != o.symbol || text != o.text) return false;
  if (sort.has_value() != o.sort.has_value()) return false;
  if (sort && *sort != *o.sort) return false;
  return terms == o.terms;
}

const Declaration* TypedScript::find_declaration(std::string_view name) const {
  auto it = index_.find(name);
  return it == index_.end() ? nullptr : &declarations[it->second];
}

void TypedScript::add_declaration(Declaration d) {
  auto [it, fresh] = index_.try_emplace(d.name, declarations.size());
  if (!fresh) throw Error("internal: duplicate declaration '" + d.name + "'");
  declarations.push_back(std::move(d));
}

bool TypedScript::operator==(const TypedScript& o) const {
  if (commands != o.commands) return false;
  if (declarations.size() != o.declarations.size()) return false;
  for (size_t i = 0; i < declarations.size(); ++i) {
    if (declarations[i].name != o.declarations[i].name ||
        declarations[i].sort != o.declarations[i].sort ||
        declarations[i].internal != o.declarations[i].internal) {
      return false;
    }
  }
  return true;
}

}  // namespace ffa::smtlib

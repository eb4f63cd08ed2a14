#include "ffa/smtlib/sort_check.hpp"

#include <array>

#include "ffa/smtlib/lexer.hpp"
#include "ffa/smtlib/printer.hpp"

namespace ffa::smtlib {

namespace {

[[noreturn]] void sort_error(SourcePos pos, const std::string& msg) {
  throw ScriptError(ScriptError::Kind::Sort, pos, msg);
}

[[noreturn]] void unsupported(SourcePos pos, const std::string& msg) {
  throw ScriptError(ScriptError::Kind::Unsupported, pos, msg);
}

constexpr std::array<std::string_view, 22> kTheorySymbols = {
    "true",   "false",  "not",    "and",    "or",     "xor",
    "=>",     "=",      "distinct", "ite",  "let",    "as",
    "_",      "forall", "exists", "Bool",   "FiniteField",
    "ff.add", "ff.sub", "ff.mul", "ff.div", "ff.neg",
};

bool is_theory_symbol(const std::string& name) {
  if (name == "ff.recip") return true;
  for (std::string_view s : kTheorySymbols) {
    if (name == s) return true;
  }
  return false;
}

void check_declarable(const std::string& name, SourcePos pos) {
  if (is_ff_literal_text(name)) {
    sort_error(pos, "'" + name +
                        "' is reserved: literal-shaped names cannot be declared");
  }
  if (is_theory_symbol(name)) {
    sort_error(pos, "'" + name + "' shadows a theory symbol");
  }
}

Integer parse_numeral(const SExpr& e, const std::string& what) {
  if (!e.leaf || e.atom.kind != TokenKind::Numeral) {
    sort_error(e.pos, what + " must be a numeral");
  }
  return Integer(e.atom.text);
}

unsigned parse_degree(const SExpr& e) {
  Integer n = parse_numeral(e, "the extension degree");
  if (!n.fits_uint_p()) sort_error(e.pos, "extension degree is out of range");
  unsigned v = static_cast<unsigned>(n.get_ui());
  if (v == 0) sort_error(e.pos, "extension degree must be positive");
  if (v == 1) {
    sort_error(e.pos, "write the prime field as (_ FiniteField p), not degree 1");
  }
  return v;
}

struct CheckContext {
  SortBuilder& sorts;
  std::map<std::string, FieldSort> aliases;
  TypedScript out;
  // Let scopes, innermost last; each maps a bound name to its sort.
  std::vector<std::map<std::string, Sort>> scopes;
};

Sort resolve_sort(CheckContext& cx, const SExpr& e) {
  if (e.leaf) {
    if (e.atom.kind == TokenKind::Symbol) {
      if (e.atom.text == "Bool") return Sort::boolean();
      auto it = cx.aliases.find(e.atom.text);
      if (it != cx.aliases.end()) return Sort::field(it->second);
      sort_error(e.pos, "unknown sort '" + e.atom.text + "'");
    }
    sort_error(e.pos, "malformed sort");
  }
  if (e.items.size() >= 2 && e.items[0].is_symbol("_") &&
      e.items[1].is_symbol("FiniteField")) {
    if (e.items.size() < 3 || e.items.size() > 4) {
      sort_error(e.pos, "(_ FiniteField p) takes one or two indices");
    }
    Integer p = parse_numeral(e.items[2], "the field modulus");
    unsigned n = e.items.size() == 4 ? parse_degree(e.items[3]) : 1;
    return Sort::field(cx.sorts.get(p, n, e.pos));
  }
  sort_error(e.pos, "malformed sort");
}

FieldSort resolve_field_sort(CheckContext& cx, const SExpr& e) {
  Sort s = resolve_sort(cx, e);
  if (!s.is_field()) sort_error(e.pos, "expected a finite-field sort");
  return s.field_sort();
}

Term typed_literal(const std::string& text, const FieldSort& sort, SourcePos pos) {
  std::vector<Integer> cs = literal_coefficients(text.substr(2));
  if (sort.is_prime_field() && cs.size() != 1) {
    sort_error(pos, "a prime-field literal takes exactly one coefficient");
  }
  try {
    return Term::literal(FieldElement::from_coeffs(sort, std::move(cs)));
  } catch (const SortError& e) {
    sort_error(pos, e.what());
  }
}

Term check_term(CheckContext& cx, const SExpr& e);

std::vector<Term> check_all(CheckContext& cx, const SExpr& form, size_t from) {
  std::vector<Term> out;
  for (size_t i = from; i < form.items.size(); ++i) {
    out.push_back(check_term(cx, form.items[i]));
  }
  return out;
}

void require_min_args(const SExpr& form, size_t n, const std::string& what) {
  if (form.items.size() < n + 1) {
    sort_error(form.pos, what + " expects at least " + std::to_string(n) +
                             " argument(s)");
  }
}

void require_args(const SExpr& form, size_t n, const std::string& what) {
  if (form.items.size() != n + 1) {
    sort_error(form.pos, what + " expects exactly " + std::to_string(n) +
                             " argument(s), got " +
                             std::to_string(form.items.size() - 1));
  }
}

const FieldSort& common_field_sort(const std::vector<Term>& args, SourcePos pos,
                                   const std::string& what) {
  for (const Term& a : args) {
    if (!a.sort().is_field()) {
      sort_error(pos, what + " expects finite-field arguments");
    }
  }
  const FieldSort& s = args.front().sort().field_sort();
  for (const Term& a : args) {
    if (a.sort().field_sort() != s) {
      sort_error(pos, what + " arguments must share one sort");
    }
  }
  return s;
}

void require_same_sort(const std::vector<Term>& args, SourcePos pos,
                       const std::string& what) {
  for (const Term& a : args) {
    if (a.sort() != args.front().sort()) {
      sort_error(pos, what + " arguments must share one sort");
    }
  }
}

TypedCommand::Kind typed_kind(ParsedCommand::Kind k) {
  switch (k) {
    case ParsedCommand::Kind::SetLogic: return TypedCommand::Kind::SetLogic;
    case ParsedCommand::Kind::SetInfo: return TypedCommand::Kind::SetInfo;
    case ParsedCommand::Kind::DeclareFun: return TypedCommand::Kind::DeclareFun;
    case ParsedCommand::Kind::DefineSort: return TypedCommand::Kind::DefineSort;
    case ParsedCommand::Kind::Assert: return TypedCommand::Kind::Assert;
    case ParsedCommand::Kind::CheckSat: return TypedCommand::Kind::CheckSat;
    case ParsedCommand::Kind::GetModel: return TypedCommand::Kind::GetModel;
    case ParsedCommand::Kind::GetValue: return TypedCommand::Kind::GetValue;
    case ParsedCommand::Kind::Exit: return TypedCommand::Kind::Exit;
  }
  throw Error("unreachable command kind");
}

Term check_symbol(CheckContext& cx, const SExpr& e) {
  const std::string& name = e.atom.text;
  if (name == "true") return Term::bool_lit(true);
  if (name == "false") return Term::bool_lit(false);
  for (auto scope = cx.scopes.rbegin(); scope != cx.scopes.rend(); ++scope) {
    auto it = scope->find(name);
    if (it != scope->end()) return Term::variable(name, it->second);
  }
  if (const Declaration* d = cx.out.find_declaration(name)) {
    return Term::constant(name, d->sort);
  }
  sort_error(e.pos, "unknown symbol '" + name + "'");
}

Term check_ff_op(CheckContext& cx, const SExpr& e, FfOpKind op,
                 const std::string& what) {
  const bool nary = op == FfOpKind::Add || op == FfOpKind::Mul;
  const size_t arity = (op == FfOpKind::Neg || op == FfOpKind::Recip) ? 1 : 2;
  if (nary) {
    require_min_args(e, 2, what);
  } else {
    require_args(e, arity, what);
  }
  std::vector<Term> args = check_all(cx, e, 1);
  common_field_sort(args, e.pos, what);
  return Term::ff_op(op, std::move(args));
}

Term check_let(CheckContext& cx, const SExpr& e) {
  require_args(e, 2, "let");
  const SExpr& binding_list = e.items[1];
  if (binding_list.leaf || binding_list.items.empty()) {
    sort_error(binding_list.pos, "let expects a nonempty binding list");
  }
  std::vector<std::pair<std::string, Term>> bindings;
  std::map<std::string, Sort> scope;
  for (const SExpr& b : binding_list.items) {
    if (b.leaf || b.items.size() != 2) {
      sort_error(b.pos, "let binding must be (name term)");
    }
    const SExpr& name_e = b.items[0];
    if (!name_e.leaf || (name_e.atom.kind != TokenKind::Symbol &&
                         name_e.atom.kind != TokenKind::FfLiteral)) {
      sort_error(name_e.pos, "let binding name must be a symbol");
    }
    const std::string& name = name_e.atom.text;
    check_declarable(name, name_e.pos);
    // Bound terms see the scope outside the let (parallel binding).
    Term value = check_term(cx, b.items[1]);
    if (!scope.emplace(name, value.sort()).second) {
      sort_error(name_e.pos, "duplicate let binding '" + name + "'");
    }
    bindings.emplace_back(name, std::move(value));
  }
  cx.scopes.push_back(std::move(scope));
  Term body = check_term(cx, e.items[2]);
  cx.scopes.pop_back();
  return Term::let(std::move(bindings), std::move(body));
}

Term check_term(CheckContext& cx, const SExpr& e) {
  if (e.leaf) {
    switch (e.atom.kind) {
      case TokenKind::Symbol:
        return check_symbol(cx, e);
      case TokenKind::FfLiteral:
        sort_error(e.pos, "literal '" + e.atom.text +
                              "' needs a sort: (_ " + e.atom.text +
                              " p [n]) or (as " + e.atom.text + " S)");
      case TokenKind::Numeral:
        sort_error(e.pos, "bare numerals are not terms of this theory");
      default:
        sort_error(e.pos, "unexpected token in a term");
    }
  }
  if (e.items.empty()) sort_error(e.pos, "empty application");
  const SExpr& head = e.items[0];
  if (!head.leaf) sort_error(head.pos, "malformed application head");

  if (head.is_symbol("_")) {
    // Indexed literal (_ ffLIT p [n]).
    if (e.items.size() >= 2 && e.items[1].is_symbol("FiniteField")) {
      sort_error(e.pos, "a sort cannot appear in term position");
    }
    if (e.items.size() < 3 || e.items.size() > 4 || !e.items[1].leaf ||
        e.items[1].atom.kind != TokenKind::FfLiteral) {
      sort_error(e.pos, "malformed indexed literal");
    }
    Integer p = parse_numeral(e.items[2], "the field modulus");
    unsigned n = e.items.size() == 4 ? parse_degree(e.items[3]) : 1;
    FieldSort sort = cx.sorts.get(p, n, e.pos);
    return typed_literal(e.items[1].atom.text, sort, e.items[1].pos);
  }

  if (head.is_symbol("as")) {
    require_args(e, 2, "as");
    if (!e.items[1].leaf || e.items[1].atom.kind != TokenKind::FfLiteral) {
      sort_error(e.items[1].pos, "as-annotations apply to field literals");
    }
    FieldSort sort = resolve_field_sort(cx, e.items[2]);
    return typed_literal(e.items[1].atom.text, sort, e.items[1].pos);
  }

  if (head.is_symbol("let")) return check_let(cx, e);

  if (head.is_symbol("ff.add")) return check_ff_op(cx, e, FfOpKind::Add, "ff.add");
  if (head.is_symbol("ff.sub")) return check_ff_op(cx, e, FfOpKind::Sub, "ff.sub");
  if (head.is_symbol("ff.mul")) return check_ff_op(cx, e, FfOpKind::Mul, "ff.mul");
  if (head.is_symbol("ff.div")) return check_ff_op(cx, e, FfOpKind::Div, "ff.div");
  if (head.is_symbol("ff.neg")) return check_ff_op(cx, e, FfOpKind::Neg, "ff.neg");
  if (head.is_symbol("ff.recip")) return check_ff_op(cx, e, FfOpKind::Recip, "ff.recip");

  if (head.is_symbol("=")) {
    require_min_args(e, 2, "=");
    std::vector<Term> args = check_all(cx, e, 1);
    require_same_sort(args, e.pos, "=");
    Term acc = Term::eq(args[0], args[1]);
    if (args.size() == 2) return acc;
    std::vector<Term> pairs{acc};
    for (size_t i = 2; i < args.size(); ++i) {
      pairs.push_back(Term::eq(args[i - 1], args[i]));
    }
    return Term::conj(std::move(pairs));
  }

  if (head.is_symbol("distinct")) {
    require_min_args(e, 2, "distinct");
    std::vector<Term> args = check_all(cx, e, 1);
    require_same_sort(args, e.pos, "distinct");
    std::vector<Term> pairs;
    for (size_t i = 0; i < args.size(); ++i) {
      for (size_t j = i + 1; j < args.size(); ++j) {
        pairs.push_back(Term::negation(Term::eq(args[i], args[j])));
      }
    }
    return pairs.size() == 1 ? pairs[0] : Term::conj(std::move(pairs));
  }

  if (head.is_symbol("not")) {
    require_args(e, 1, "not");
    Term a = check_term(cx, e.items[1]);
    if (!a.sort().is_bool()) sort_error(e.pos, "not expects a Boolean argument");
    return Term::negation(std::move(a));
  }

  auto bool_args = [&](const std::string& what) {
    require_min_args(e, 2, what);
    std::vector<Term> args = check_all(cx, e, 1);
    for (const Term& a : args) {
      if (!a.sort().is_bool()) {
        sort_error(e.pos, what + " expects Boolean arguments");
      }
    }
    return args;
  };

  if (head.is_symbol("and")) return Term::conj(bool_args("and"));
  if (head.is_symbol("or")) return Term::disj(bool_args("or"));

  if (head.is_symbol("=>")) {
    std::vector<Term> args = bool_args("=>");
    Term acc = args.back();
    for (size_t i = args.size() - 1; i-- > 0;) {
      acc = Term::implies(args[i], std::move(acc));
    }
    return acc;
  }

  if (head.is_symbol("xor")) {
    std::vector<Term> args = bool_args("xor");
    Term acc = args[0];
    for (size_t i = 1; i < args.size(); ++i) {
      acc = Term::xor_of(std::move(acc), args[i]);
    }
    return acc;
  }

  if (head.is_symbol("ite")) {
    require_args(e, 3, "ite");
    Term c = check_term(cx, e.items[1]);
    if (!c.sort().is_bool()) sort_error(e.items[1].pos, "ite condition must be Boolean");
    Term t = check_term(cx, e.items[2]);
    Term f = check_term(cx, e.items[3]);
    if (t.sort() != f.sort()) sort_error(e.pos, "ite branches must share one sort");
    return Term::ite(std::move(c), std::move(t), std::move(f));
  }

  if (head.is_symbol("forall") || head.is_symbol("exists")) {
    unsupported(head.pos, "quantifiers are not available in QF_FFA");
  }

  if (head.leaf && head.atom.kind == TokenKind::Symbol) {
    sort_error(head.pos, "unknown function '" + head.atom.text + "'");
  }
  sort_error(head.pos, "malformed term");
}

}  // namespace

SortBuilder::SortBuilder(ConwayCache& cache, FrontendConfig cfg)
    : cache_(cache), cfg_(cfg) {}

FieldSort SortBuilder::get(const Integer& p, unsigned n, SourcePos pos) {
  auto it = memo_.find({p, n});
  if (it != memo_.end()) return it->second;
  try {
    FieldSort s = n == 1 ? FieldSort::prime_field(p, cfg_.mr_rounds)
                         : FieldSort::extension(p, n, cache_, cfg_.conway_budget);
    return memo_.emplace(std::make_pair(p, n), std::move(s)).first->second;
  } catch (const InvalidInputError& e) {
    sort_error(pos, e.what());
  }
}

TypedScript sort_check(const Script& script, SortBuilder& sorts) {
  CheckContext cx{sorts, {}, {}, {}};
  bool logic_seen = false;
  bool exited = false;

  for (const ParsedCommand& cmd : script.commands) {
    if (exited) {
      sort_error(cmd.pos, "command after exit");
    }
    const SExpr& form = cmd.form;
    const bool semantic = cmd.kind != ParsedCommand::Kind::SetInfo &&
                          cmd.kind != ParsedCommand::Kind::Exit;
    if (semantic && cmd.kind != ParsedCommand::Kind::SetLogic && !logic_seen) {
      sort_error(cmd.pos, "set-logic must come first");
    }

    TypedCommand out{typed_kind(cmd.kind), cmd.pos, "", "", std::nullopt, {}};
    switch (cmd.kind) {
      case ParsedCommand::Kind::SetLogic: {
        if (logic_seen) sort_error(cmd.pos, "set-logic may appear only once");
        const std::string& logic = form.items[1].atom.text;
        if (logic == "FFA") {
          unsupported(form.items[1].pos,
                      "logic FFA is quantified; only QF_FFA is available");
        }
        if (logic != "QF_FFA") {
          unsupported(form.items[1].pos, "unknown logic '" + logic +
                                             "'; only QF_FFA is available");
        }
        logic_seen = true;
        out.symbol = logic;
        break;
      }
      case ParsedCommand::Kind::SetInfo: {
        out.symbol = form.items[1].atom.text;
        if (form.items.size() == 3) out.text = print_sexpr(form.items[2]);
        break;
      }
      case ParsedCommand::Kind::DeclareFun: {
        const std::string& name = form.items[1].atom.text;
        check_declarable(name, form.items[1].pos);
        if (cx.out.find_declaration(name)) {
          sort_error(form.items[1].pos, "'" + name + "' is already declared");
        }
        Sort s = resolve_sort(cx, form.items[3]);
        if (!s.is_field()) {
          sort_error(form.items[3].pos,
                     "constants must have a finite-field sort");
        }
        cx.out.add_declaration({name, s.field_sort(), false});
        out.symbol = name;
        out.sort = s.field_sort();
        break;
      }
      case ParsedCommand::Kind::DefineSort: {
        const std::string& name = form.items[1].atom.text;
        check_declarable(name, form.items[1].pos);
        if (name == "Bool" || cx.aliases.count(name)) {
          sort_error(form.items[1].pos, "sort '" + name + "' is already defined");
        }
        FieldSort s = resolve_field_sort(cx, form.items[3]);
        cx.aliases.emplace(name, s);
        out.symbol = name;
        out.sort = s;
        break;
      }
      case ParsedCommand::Kind::Assert: {
        Term t = check_term(cx, form.items[1]);
        if (!t.sort().is_bool()) {
          sort_error(form.items[1].pos, "assert expects a Boolean term");
        }
        out.terms.push_back(std::move(t));
        break;
      }
      case ParsedCommand::Kind::GetValue: {
        for (const SExpr& te : form.items[1].items) {
          Term t = check_term(cx, te);
          if (!t.sort().is_field()) {
            sort_error(te.pos, "get-value expects finite-field terms");
          }
          out.terms.push_back(std::move(t));
        }
        break;
      }
      case ParsedCommand::Kind::CheckSat:
      case ParsedCommand::Kind::GetModel:
        break;
      case ParsedCommand::Kind::Exit:
        exited = true;
        break;
    }
    cx.out.commands.push_back(std::move(out));
  }
  if (!logic_seen) {
    SourcePos end{0, 0};
    if (!script.commands.empty()) end = script.commands.front().pos;
    sort_error(end, "script has no set-logic command");
  }
  return std::move(cx.out);
}

TypedScript check_script_text(std::string_view text, SortBuilder& sorts) {
  return sort_check(parse_script_text(text), sorts);
}

}  // namespace ffa::smtlib

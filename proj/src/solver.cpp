#include "ffa/solver.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "ffa/smtlib/printer.hpp"

namespace ffa {

namespace smt = smtlib;
using smt::FfOpKind;
using smt::Term;
using smt::TermKind;
using smt::TypedCommand;
using smt::TypedScript;

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Sat: return "sat";
    case Verdict::Unsat: return "unsat";
    case Verdict::Unknown: return "unknown";
  }
  throw Error("unreachable verdict");
}

namespace {

class Evaluator {
 public:
  explicit Evaluator(const Model& assignment) : assign_(assignment) {}

  Value eval(const Term& t) {
    switch (t.kind()) {
      case TermKind::Literal:
        return t.value();
      case TermKind::BoolLit:
        return t.bool_value();
      case TermKind::Const: {
        const FieldElement* v = assign_.find(t.name());
        if (!v) throw Error("internal: unassigned constant '" + t.name() + "'");
        return *v;
      }
      case TermKind::Var: {
        for (auto scope = scopes_.rbegin(); scope != scopes_.rend(); ++scope) {
          auto it = scope->find(t.name());
          if (it != scope->end()) return it->second;
        }
        throw Error("internal: unbound variable '" + t.name() + "'");
      }
      case TermKind::FfOp:
        return eval_ff(t);
      case TermKind::Eq: {
        Value a = eval(t.children()[0]);
        Value b = eval(t.children()[1]);
        if (a.index() != b.index()) {
          throw Error("internal: equality across value kinds");
        }
        return a.index() == 0 ? std::get<bool>(a) == std::get<bool>(b)
                              : std::get<FieldElement>(a) ==
                                    std::get<FieldElement>(b);
      }
      case TermKind::Not:
        return !truth(t.children()[0]);
      case TermKind::And: {
        for (const Term& c : t.children()) {
          if (!truth(c)) return false;
        }
        return true;
      }
      case TermKind::Or: {
        for (const Term& c : t.children()) {
          if (truth(c)) return true;
        }
        return false;
      }
      case TermKind::Implies:
        return !truth(t.children()[0]) || truth(t.children()[1]);
      case TermKind::Xor:
        return truth(t.children()[0]) != truth(t.children()[1]);
      case TermKind::Ite:
        return eval(t.children()[truth(t.children()[0]) ? 1 : 2]);
      case TermKind::Let: {
        std::map<std::string, Value> scope;
        for (const auto& [name, bound] : t.bindings()) {
          scope.emplace(name, eval(bound));  // parallel: outer scope only
        }
        scopes_.push_back(std::move(scope));
        Value v = eval(t.children()[0]);
        scopes_.pop_back();
        return v;
      }
    }
    throw Error("unreachable term kind");
  }

 private:
  bool truth(const Term& t) { return std::get<bool>(eval(t)); }

  FieldElement field(const Term& t) { return std::get<FieldElement>(eval(t)); }

  Value eval_ff(const Term& t) {
    FieldElement acc = field(t.children()[0]);
    switch (t.op()) {
      case FfOpKind::Add:
        for (size_t i = 1; i < t.children().size(); ++i) {
          acc = acc + field(t.children()[i]);
        }
        return acc;
      case FfOpKind::Mul:
        for (size_t i = 1; i < t.children().size(); ++i) {
          acc = acc * field(t.children()[i]);
        }
        return acc;
      case FfOpKind::Sub:
        return acc - field(t.children()[1]);
      case FfOpKind::Div:
        return acc / field(t.children()[1]);
      case FfOpKind::Neg:
        return -acc;
      case FfOpKind::Recip:
        return acc.recip();
    }
    throw Error("unreachable operator kind");
  }

  const Model& assign_;
  std::vector<std::map<std::string, Value>> scopes_;
};

Term inline_lets(const Term& t) {
  switch (t.kind()) {
    case TermKind::Literal:
    case TermKind::Const:
    case TermKind::BoolLit:
      return t;
    case TermKind::Var:
      throw Error("internal: unbound variable survived let inlining");
    case TermKind::Let: {
      std::map<std::string, Term> env;
      for (const auto& [name, bound] : t.bindings()) {
        env.emplace(name, inline_lets(bound));
      }
      return inline_lets(smt::substitute(t.children()[0], env));
    }
    default: {
      std::vector<Term> kids;
      kids.reserve(t.children().size());
      for (const Term& c : t.children()) kids.push_back(inline_lets(c));
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
          throw Error("internal: unexpected term kind in let inlining");
      }
    }
  }
}

/// Introduces the fresh reciprocal constants; one per structurally distinct
/// argument across the whole script.
class RecipHoister {
 public:
  explicit RecipHoister(const TypedScript& script) {
    for (const auto& d : script.declarations) taken_.insert(d.name);
  }

  struct Fresh {
    std::string name;
    Term argument;  // division-free
  };

  Term rewrite(const Term& t) {
    switch (t.kind()) {
      case TermKind::Literal:
      case TermKind::Const:
      case TermKind::BoolLit:
        return t;
      case TermKind::Var:
      case TermKind::Let:
        throw Error("internal: let form reached division rewriting");
      case TermKind::FfOp: {
        std::vector<Term> kids;
        for (const Term& c : t.children()) kids.push_back(rewrite(c));
        if (t.op() == FfOpKind::Div) {
          Term z = reciprocal_of(kids[1]);
          return Term::ff_op(FfOpKind::Mul, {kids[0], std::move(z)});
        }
        if (t.op() == FfOpKind::Recip) {
          return reciprocal_of(kids[0]);
        }
        return Term::ff_op(t.op(), std::move(kids));
      }
      case TermKind::Eq: {
        Term a = rewrite(t.children()[0]);
        Term b = rewrite(t.children()[1]);
        return Term::eq(std::move(a), std::move(b));
      }
      case TermKind::Not:
        return Term::negation(rewrite(t.children()[0]));
      case TermKind::And:
      case TermKind::Or: {
        std::vector<Term> kids;
        for (const Term& c : t.children()) kids.push_back(rewrite(c));
        return t.kind() == TermKind::And ? Term::conj(std::move(kids))
                                         : Term::disj(std::move(kids));
      }
      case TermKind::Implies: {
        Term a = rewrite(t.children()[0]);
        Term b = rewrite(t.children()[1]);
        return Term::implies(std::move(a), std::move(b));
      }
      case TermKind::Xor: {
        Term a = rewrite(t.children()[0]);
        Term b = rewrite(t.children()[1]);
        return Term::xor_of(std::move(a), std::move(b));
      }
      case TermKind::Ite: {
        Term c = rewrite(t.children()[0]);
        Term a = rewrite(t.children()[1]);
        Term b = rewrite(t.children()[2]);
        return Term::ite(std::move(c), std::move(a), std::move(b));
      }
    }
    throw Error("unreachable term kind");
  }

  /// Fresh constants created since the last call, oldest first.
  std::vector<Fresh> take_created() {
    std::vector<Fresh> out = std::move(created_);
    created_.clear();
    return out;
  }

 private:
  Term reciprocal_of(const Term& arg) {
    for (const auto& [known, name] : table_) {
      if (known == arg) return Term::constant(name, arg.sort().field_sort());
    }
    std::string name;
    do {
      name = "@recip" + std::to_string(counter_++);
    } while (taken_.count(name));
    taken_.insert(name);
    table_.emplace_back(arg, name);
    created_.push_back({name, arg});
    return Term::constant(name, arg.sort().field_sort());
  }

  std::vector<std::pair<Term, std::string>> table_;
  std::vector<Fresh> created_;
  std::set<std::string> taken_;
  unsigned counter_ = 0;
};

Term reciprocal_definition(const Term& z, const Term& x) {
  Term zzx = Term::ff_op(FfOpKind::Mul, {z, z, x});
  Term zxx = Term::ff_op(FfOpKind::Mul, {z, x, x});
  return Term::conj({Term::eq(std::move(zzx), z), Term::eq(std::move(zxx), x)});
}

struct Enumeration {
  std::vector<const smt::Declaration*> consts;
  // ready[d] holds the assertions decidable once the first d constants are
  // assigned.
  std::vector<std::vector<const Term*>> ready;
  Model assign;

  bool dfs(size_t depth) {
    for (const Term* t : ready[depth]) {
      if (!eval_assertion(*t, assign)) return false;
    }
    if (depth == consts.size()) return true;
    const FieldSort& sort = consts[depth]->sort;
    for (Integer i = 0; i < sort.order(); ++i) {
      assign.set(consts[depth]->name, element_at(sort, i));
      if (dfs(depth + 1)) return true;
    }
    assign.erase(consts[depth]->name);
    return false;
  }
};

struct ProblemView {
  std::vector<const smt::Declaration*> consts;
  std::vector<const Term*> asserts;
  Integer space = 1;
};

ProblemView problem_of(const TypedScript& script) {
  ProblemView p;
  for (const auto& d : script.declarations) {
    p.consts.push_back(&d);
    p.space *= d.sort.order();
  }
  for (const auto& c : script.commands) {
    if (c.kind == TypedCommand::Kind::Assert) p.asserts.push_back(&c.terms[0]);
  }
  return p;
}

SolveResult sat_result(const TypedScript& script, const ProblemView& p,
                       const Model& full) {
  for (const Term* t : p.asserts) {
    if (!eval_assertion(*t, full)) {
      throw Error("internal: model fails an assertion it was built from");
    }
  }
  Model visible;
  for (const auto& d : script.declarations) {
    if (!d.internal) visible.insert(d.name, *full.find(d.name));
  }
  return {Verdict::Sat, std::move(visible), ""};
}

}  // namespace

Value eval_term(const Term& t, const Model& assignment) {
  return Evaluator(assignment).eval(t);
}

bool eval_assertion(const Term& t, const Model& assignment) {
  Value v = eval_term(t, assignment);
  if (!std::holds_alternative<bool>(v)) {
    throw Error("internal: assertion evaluated to a field value");
  }
  return std::get<bool>(v);
}

TypedScript preprocess(const TypedScript& script) {
  TypedScript out;
  for (const auto& d : script.declarations) out.add_declaration(d);
  RecipHoister hoister(script);

  for (const TypedCommand& cmd : script.commands) {
    if (cmd.kind != TypedCommand::Kind::Assert) {
      out.commands.push_back(cmd);
      continue;
    }
    Term rewritten = hoister.rewrite(inline_lets(cmd.terms[0]));
    for (const RecipHoister::Fresh& f : hoister.take_created()) {
      const FieldSort sort = f.argument.sort().field_sort();
      out.add_declaration({f.name, sort, true});
      TypedCommand decl{TypedCommand::Kind::DeclareFun, cmd.pos, f.name, "",
                        sort, {}};
      out.commands.push_back(std::move(decl));
      Term z = Term::constant(f.name, sort);
      TypedCommand define{TypedCommand::Kind::Assert, cmd.pos, "", "",
                          std::nullopt, {reciprocal_definition(z, f.argument)}};
      out.commands.push_back(std::move(define));
    }
    TypedCommand rewritten_cmd{TypedCommand::Kind::Assert, cmd.pos, "", "",
                               std::nullopt, {std::move(rewritten)}};
    out.commands.push_back(std::move(rewritten_cmd));
  }
  return out;
}

SolveResult check_sat(const TypedScript& script, const SolverConfig& cfg) {
  ProblemView p = problem_of(script);
  if (p.space > cfg.budget) return {Verdict::Unknown, std::nullopt, "budget"};

  Enumeration e;
  e.consts = p.consts;
  e.ready.resize(p.consts.size() + 1);
  std::map<std::string, size_t> index_of;
  for (size_t i = 0; i < p.consts.size(); ++i) {
    index_of.emplace(p.consts[i]->name, i);
  }
  for (const Term* t : p.asserts) {
    std::set<std::string> names;
    smt::collect_constants(*t, names);
    size_t depth = 0;
    for (const std::string& n : names) {
      auto it = index_of.find(n);
      if (it == index_of.end()) {
        throw Error("internal: assertion uses undeclared constant '" + n + "'");
      }
      depth = std::max(depth, it->second + 1);
    }
    e.ready[depth].push_back(t);
  }

  if (!e.dfs(0)) return {Verdict::Unsat, std::nullopt, ""};
  return sat_result(script, p, e.assign);
}

SolveResult check_sat_naive(const TypedScript& script, const SolverConfig& cfg) {
  ProblemView p = problem_of(script);
  if (p.space > cfg.budget) return {Verdict::Unknown, std::nullopt, "budget"};

  std::vector<Integer> digits(p.consts.size(), 0);
  while (true) {
    Model assign;
    for (size_t i = 0; i < p.consts.size(); ++i) {
      assign.insert(p.consts[i]->name, element_at(p.consts[i]->sort, digits[i]));
    }
    bool ok = true;
    for (const Term* t : p.asserts) {
      if (!eval_assertion(*t, assign)) {
        ok = false;
        break;
      }
    }
    if (ok) return sat_result(script, p, assign);

    // Odometer step, last constant fastest, to match the search order above.
    size_t k = p.consts.size();
    while (k > 0) {
      ++digits[k - 1];
      if (digits[k - 1] < p.consts[k - 1]->sort.order()) break;
      digits[k - 1] = 0;
      --k;
    }
    if (k == 0) return {Verdict::Unsat, std::nullopt, ""};
  }
}

std::vector<std::string> run_script(const TypedScript& script,
                                    const SolverConfig& cfg) {
  std::vector<std::string> out;
  TypedScript current;
  std::optional<SolveResult> last;

  for (const TypedCommand& cmd : script.commands) {
    switch (cmd.kind) {
      case TypedCommand::Kind::SetLogic:
      case TypedCommand::Kind::SetInfo:
      case TypedCommand::Kind::DefineSort:
        break;
      case TypedCommand::Kind::DeclareFun:
        current.add_declaration({cmd.symbol, *cmd.sort, false});
        current.commands.push_back(cmd);
        break;
      case TypedCommand::Kind::Assert:
        current.commands.push_back(cmd);
        last.reset();
        break;
      case TypedCommand::Kind::CheckSat:
        last = check_sat(preprocess(current), cfg);
        out.push_back(to_string(last->verdict));
        break;
      case TypedCommand::Kind::GetModel:
        if (!last || last->verdict != Verdict::Sat) {
          throw CommandError("get-model: the last check-sat did not answer sat");
        }
        out.push_back(print_model(*last->model));
        break;
      case TypedCommand::Kind::GetValue: {
        if (!last || last->verdict != Verdict::Sat) {
          throw CommandError("get-value: the last check-sat did not answer sat");
        }
        std::string line = "(";
        for (size_t i = 0; i < cmd.terms.size(); ++i) {
          if (i > 0) line += " ";
          Value v = eval_term(cmd.terms[i], *last->model);
          line += "(" + smt::print_term(cmd.terms[i]) + " " +
                  print_literal(std::get<FieldElement>(v)) + ")";
        }
        out.push_back(line + ")");
        break;
      }
      case TypedCommand::Kind::Exit:
        return out;
    }
  }
  return out;
}

}  // namespace ffa

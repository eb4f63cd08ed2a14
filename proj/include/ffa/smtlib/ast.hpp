#pragma once

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "ffa/ext_field.hpp"
#include "ffa/smtlib/token.hpp"

namespace ffa::smtlib {

/// Parse tree node: an atom token or a parenthesized list.
struct SExpr {
  Token atom;               // meaningful when leaf
  std::vector<SExpr> items; // meaningful when !leaf
  bool leaf = true;
  SourcePos pos;

  bool is_symbol(std::string_view s) const {
    return leaf && atom.kind == TokenKind::Symbol && atom.text == s;
  }
};

/// Untyped script: the command sequence with shape-validated forms, before
/// sort checking.
struct ParsedCommand {
  enum class Kind {
    SetLogic,
    SetInfo,
    DeclareFun,
    DefineSort,
    Assert,
    CheckSat,
    GetModel,
    GetValue,
    Exit,
  };
  Kind kind;
  SourcePos pos;
  SExpr form;  // the whole command s-expression
};

struct Script {
  std::vector<ParsedCommand> commands;
};

/// Resolved sort of a term: Boolean or a finite field sort.
class Sort {
 public:
  static Sort boolean() { return Sort(std::nullopt); }
  static Sort field(FieldSort s) { return Sort(std::move(s)); }

  bool is_bool() const { return !field_.has_value(); }
  bool is_field() const { return field_.has_value(); }
  const FieldSort& field_sort() const { return *field_; }

  bool operator==(const Sort& o) const {
    if (is_bool() != o.is_bool()) return false;
    return is_bool() || *field_ == *o.field_;
  }
  bool operator!=(const Sort& o) const { return !(*this == o); }

 private:
  explicit Sort(std::optional<FieldSort> f) : field_(std::move(f)) {}
  std::optional<FieldSort> field_;
};

enum class TermKind {
  Literal,  // field literal
  Const,    // declared constant
  Var,      // let-bound variable
  FfOp,
  Eq,
  BoolLit,
  Not,
  And,
  Or,
  Implies,
  Xor,
  Ite,
  Let,
};

enum class FfOpKind { Add, Sub, Mul, Div, Neg, Recip };

class Term;

struct TermNode {
  TermNode(TermKind k, Sort s) : kind(k), sort(std::move(s)) {}

  TermKind kind;
  Sort sort;
  std::optional<FieldElement> value;  // Literal
  bool bool_value = false;            // BoolLit
  std::string name;                   // Const, Var
  FfOpKind op = FfOpKind::Add;        // FfOp
  std::vector<Term> children;
  std::vector<std::pair<std::string, Term>> bindings;  // Let
};

/// Immutable sort-annotated term; a shared handle to a TermNode, so copies
/// are cheap and subterms are shared freely. Factories enforce the sorting
/// rules (operand sorts must agree, arities per operator) and throw
/// SortError on misuse.
class Term {
 public:
  static Term literal(FieldElement v);
  static Term constant(std::string name, FieldSort sort);
  static Term variable(std::string name, Sort sort);
  /// Add/Mul take >= 2 arguments (evaluated left-associatively), Sub/Div
  /// exactly 2, Neg/Recip exactly 1; all arguments must share one field sort.
  static Term ff_op(FfOpKind op, std::vector<Term> args);
  static Term eq(Term a, Term b);
  static Term bool_lit(bool b);
  static Term negation(Term a);
  static Term conj(std::vector<Term> args);
  static Term disj(std::vector<Term> args);
  static Term implies(Term a, Term b);
  static Term xor_of(Term a, Term b);
  static Term ite(Term cond, Term then_t, Term else_t);
  static Term let(std::vector<std::pair<std::string, Term>> bindings, Term body);

  TermKind kind() const { return node_->kind; }
  const Sort& sort() const { return node_->sort; }
  const FieldElement& value() const { return *node_->value; }
  bool bool_value() const { return node_->bool_value; }
  const std::string& name() const { return node_->name; }
  FfOpKind op() const { return node_->op; }
  const std::vector<Term>& children() const { return node_->children; }
  const std::vector<std::pair<std::string, Term>>& bindings() const {
    return node_->bindings;
  }

  /// Structural equality (sorts, kinds, payloads, children).
  bool operator==(const Term& o) const;
  bool operator!=(const Term& o) const { return !(*this == o); }

 private:
  explicit Term(std::shared_ptr<const TermNode> n) : node_(std::move(n)) {}
  static Term make(TermNode n);
  std::shared_ptr<const TermNode> node_;
};

/// Names of the user-declared constants appearing free in t (let-bound
/// variables are not constants and are excluded by construction).
void collect_constants(const Term& t, std::set<std::string>& out);

/// Replaces let-bound variables by the mapped terms, respecting shadowing by
/// inner bindings of the same name.
Term substitute(const Term& t, const std::map<std::string, Term>& env);

struct Declaration {
  std::string name;
  FieldSort sort;
  bool internal = false;  // introduced by preprocessing, hidden from models
};

struct TypedCommand {
  enum class Kind {
    SetLogic,
    SetInfo,
    DefineSort,
    DeclareFun,
    Assert,
    CheckSat,
    GetModel,
    GetValue,
    Exit,
  };
  Kind kind;
  SourcePos pos;
  std::string symbol;             // logic / keyword / declared or aliased name
  std::string text;               // set-info attribute value, verbatim
  std::optional<FieldSort> sort;  // DeclareFun / DefineSort
  std::vector<Term> terms;        // Assert: 1; GetValue: >= 1

  bool operator==(const TypedCommand& o) const;
};

/// Sort-checked script: the typed command stream plus the declaration table
/// in declaration order.
struct TypedScript {
  std::vector<TypedCommand> commands;
  std::vector<Declaration> declarations;

  const Declaration* find_declaration(std::string_view name) const;
  void add_declaration(Declaration d);
  bool operator==(const TypedScript& o) const;

 private:
  std::map<std::string, size_t, std::less<>> index_;
};

}  // namespace ffa::smtlib

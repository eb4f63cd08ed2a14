#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "ffa/normalizer.hpp"
#include "ffa/smtlib/ast.hpp"

namespace ffa {

enum class Verdict { Sat, Unsat, Unknown };

std::string to_string(Verdict v);

struct SolverConfig {
  /// Largest total assignment space (product of field orders over all
  /// constants) the enumeration will attempt; beyond it check_sat answers
  /// unknown rather than guessing.
  Integer budget = Integer(10000000);
};

struct SolveResult {
  Verdict verdict;
  /// Present iff sat; binds every user-declared constant, in declaration
  /// order. Constants introduced by preprocessing are checked internally but
  /// do not appear here.
  std::optional<Model> model;
  /// Present iff unknown ("budget").
  std::string reason;
};

/// A term's value under an assignment: Boolean or a field element.
using Value = std::variant<bool, FieldElement>;

/// Bottom-up evaluation under an assignment total on the term's constants.
/// ff.div and ff.recip use the zero convention (recip(0) = 0, a/0 = 0), so
/// terms that were never preprocessed evaluate fine (get-value relies on
/// this). let bindings evaluate in parallel with inner shadowing.
Value eval_term(const smtlib::Term& t, const Model& assignment);

/// eval_term for assertion bodies; the term must be Boolean.
bool eval_assertion(const smtlib::Term& t, const Model& assignment);

/// Rewrites every assertion to a division-free form: lets are inlined, then
/// each ff.div a b becomes ff.mul a z and each ff.recip x becomes z, where z
/// is a fresh constant defined by the equational encoding
/// (z*z*x = z) and (z*x*x = x). Fresh constants are declared before their
/// defining assertions, which precede the rewritten assertion; structurally
/// identical arguments share one fresh constant. get-value terms are left
/// untouched.
smtlib::TypedScript preprocess(const smtlib::TypedScript& script);

/// Depth-first enumeration over all constants in declaration order, pruning
/// on any assertion whose constants are fully assigned but which evaluates
/// false. Answers unknown when the assignment space exceeds cfg.budget.
SolveResult check_sat(const smtlib::TypedScript& script,
                      const SolverConfig& cfg = {});

/// Reference enumeration without pruning; agrees with check_sat on verdict
/// and model. Kept as a cross-check oracle (diff runs, tests).
SolveResult check_sat_naive(const smtlib::TypedScript& script,
                            const SolverConfig& cfg = {});

/// Executes a sort-checked script in command order: check-sat preprocesses
/// the assertions so far and appends its verdict to the output; get-model
/// and get-value answer from the last sat result and throw CommandError
/// when there is none (unsat and unknown included); assert invalidates the
/// stored result. Returns one output string per answering command.
std::vector<std::string> run_script(const smtlib::TypedScript& script,
                                    const SolverConfig& cfg = {});

}  // namespace ffa

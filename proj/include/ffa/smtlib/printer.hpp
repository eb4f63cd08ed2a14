#pragma once

#include <string>

#include "ffa/smtlib/ast.hpp"

namespace ffa::smtlib {

/// Symbol spelling: verbatim when it is a simple symbol, |quoted| otherwise.
std::string print_symbol(const std::string& name);

/// Verbatim reprint of a parse tree (used for attribute values).
std::string print_sexpr(const SExpr& e);

/// Canonical term text: literals in indexed normalized form, operators fully
/// parenthesized in their stored arity.
std::string print_term(const Term& t);

/// Canonical command text; define-sort and declare-fun spell sorts in
/// indexed form.
std::string print_command(const TypedCommand& c);

/// Whole script, one command per line.
std::string print_script(const TypedScript& s);

}  // namespace ffa::smtlib

#pragma once

#include "ffa/conway.hpp"
#include "ffa/smtlib/parser.hpp"

namespace ffa::smtlib {

struct FrontendConfig {
  unsigned mr_rounds = 40;
  ConwayBudget conway_budget{};
};

/// Resolves and memoizes field sorts for scripts. Non-prime p is rejected at
/// construction (ScriptError at the sort's source position); extension sorts
/// resolve their reduction polynomial through the shared cache, so repeated
/// sorts across scripts are built once.
class SortBuilder {
 public:
  explicit SortBuilder(ConwayCache& cache, FrontendConfig cfg = {});

  FieldSort get(const Integer& p, unsigned n, SourcePos pos);
  ConwayCache& cache() { return cache_; }

 private:
  ConwayCache& cache_;
  FrontendConfig cfg_;
  std::map<std::pair<Integer, unsigned>, FieldSort> memo_;
};

/// Sort checking: resolves sorts and aliases, types every term, validates
/// script structure (one set-logic first, known logic, declarations before
/// use, reserved names). Throws ScriptError with source positions.
TypedScript sort_check(const Script& script, SortBuilder& sorts);

/// Convenience: tokenize + parse + sort_check.
TypedScript check_script_text(std::string_view text, SortBuilder& sorts);

}  // namespace ffa::smtlib

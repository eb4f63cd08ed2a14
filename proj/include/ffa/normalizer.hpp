#pragma once

#include <string>
#include <utility>
#include <vector>

#include "ffa/ext_field.hpp"

namespace ffa {

/// Maps raw literal coefficients into the canonical element: each coefficient
/// through the symmetric representative, trailing zeros trimmed. At most
/// degree() coefficients (SortError beyond that); an empty sequence is zero.
FieldElement normalize_literal(const FieldSort& sort, std::vector<Integer> coeffs);

/// Canonical indexed literal text: `(_ ffV p)` for prime sorts, or
/// `(_ ffc0.c1.….ck p n)` with trailing zeros omitted; zero prints as ff0.
std::string print_literal(const FieldElement& e);

/// Indexed sort text `(_ FiniteField p)` / `(_ FiniteField p n)`.
std::string print_sort(const FieldSort& s);

/// Assignment of elements to constant names, ordered by insertion (the
/// declaration order of the script it belongs to).
class Model {
 public:
  /// Adds a fresh binding; rebinding an existing name is an internal error.
  void insert(const std::string& name, FieldElement v);
  /// Adds or replaces a binding, keeping the original position on replace.
  void set(const std::string& name, FieldElement v);
  void erase(const std::string& name);
  const FieldElement* find(std::string_view name) const;
  bool empty() const { return entries_.empty(); }
  size_t size() const { return entries_.size(); }
  const std::vector<std::pair<std::string, FieldElement>>& entries() const {
    return entries_;
  }

 private:
  std::vector<std::pair<std::string, FieldElement>> entries_;
};

/// SMT-LIB model block: `(` + one `(define-fun name () SORT LITERAL)` per
/// entry in order, joined by newlines, + `)`.
std::string print_model(const Model& m);

}  // namespace ffa

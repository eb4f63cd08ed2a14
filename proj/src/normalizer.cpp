#include "ffa/normalizer.hpp"

#include <algorithm>

#include "ffa/smtlib/printer.hpp"

namespace ffa {

FieldElement normalize_literal(const FieldSort& sort, std::vector<Integer> coeffs) {
  return FieldElement::from_coeffs(sort, std::move(coeffs));
}

std::string print_literal(const FieldElement& e) {
  std::string body;
  if (e.coeffs().empty()) {
    body = "0";
  } else if (e.sort().is_prime_field()) {
    body = e.coeffs()[0].get_str();
  } else {
    for (size_t i = 0; i < e.coeffs().size(); ++i) {
      if (i > 0) body += '.';
      body += e.coeffs()[i].get_str();
    }
  }
  std::string out = "(_ ff" + body + " " + e.sort().p().get_str();
  if (!e.sort().is_prime_field()) {
    out += " " + std::to_string(e.sort().degree());
  }
  return out + ")";
}

std::string print_sort(const FieldSort& s) {
  std::string out = "(_ FiniteField " + s.p().get_str();
  if (!s.is_prime_field()) out += " " + std::to_string(s.degree());
  return out + ")";
}

void Model::insert(const std::string& name, FieldElement v) {
  if (find(name)) throw Error("internal: model already binds '" + name + "'");
  entries_.emplace_back(name, std::move(v));
}

void Model::set(const std::string& name, FieldElement v) {
  for (auto& [n, value] : entries_) {
    if (n == name) {
      value = std::move(v);
      return;
    }
  }
  entries_.emplace_back(name, std::move(v));
}

void Model::erase(const std::string& name) {
  entries_.erase(std::remove_if(entries_.begin(), entries_.end(),
                                [&](const auto& e) { return e.first == name; }),
                 entries_.end());
}

const FieldElement* Model::find(std::string_view name) const {
  for (const auto& [n, value] : entries_) {
    if (n == name) return &value;
  }
  return nullptr;
}

std::string print_model(const Model& m) {
  std::string out = "(";
  bool first = true;
  for (const auto& [name, value] : m.entries()) {
    if (!first) out += '\n';
    first = false;
    out += "(define-fun " + smtlib::print_symbol(name) + " () " +
           print_sort(value.sort()) + " " + print_literal(value) + ")";
  }
  return out + ")";
}

}  // namespace ffa

#include "ffa/fuzz.hpp"

#include <random>

#include "ffa/errors.hpp"

namespace ffa {

namespace {

struct Gen {
  std::mt19937_64 rng;
  unsigned p = 0;
  bool alias = false;
  std::vector<std::string> names;

  size_t roll(size_t k) { return static_cast<size_t>(rng() % k); }

  std::string sort_text() {
    if (alias && roll(2) == 0) return "S";
    return "(_ FiniteField " + std::to_string(p) + ")";
  }

  std::string literal() {
    // Raw values beyond the residue range exercise normalization.
    const long span = 2L * p + 5;
    const long raw = static_cast<long>(roll(span)) - (span / 2);
    const std::string body = "ff" + std::to_string(raw);
    switch (roll(3)) {
      case 0:
        return "(_ " + body + " " + std::to_string(p) + ")";
      case 1:
        return "(as " + body + " " + sort_text() + ")";
      default:
        return "(as " + body + " (_ FiniteField " + std::to_string(p) + "))";
    }
  }

  std::string field_term(unsigned depth) {
    if (depth == 0 || roll(3) == 0) {
      return roll(2) == 0 ? literal() : names[roll(names.size())];
    }
    switch (roll(8)) {
      case 0:
        return "(ff.add " + field_term(depth - 1) + " " + field_term(depth - 1) + ")";
      case 1:
        return "(ff.sub " + field_term(depth - 1) + " " + field_term(depth - 1) + ")";
      case 2:
        return "(ff.mul " + field_term(depth - 1) + " " + field_term(depth - 1) + ")";
      case 3:
        return "(ff.neg " + field_term(depth - 1) + ")";
      case 4:
      case 5:
        return "(ff.div " + field_term(depth - 1) + " " + field_term(depth - 1) + ")";
      default:
        return "(ff.recip " + field_term(depth - 1) + ")";
    }
  }

  std::string bool_term(unsigned depth) {
    if (depth == 0 || roll(4) == 0) {
      if (roll(4) == 0) {
        return "(distinct " + field_term(1) + " " + field_term(1) + ")";
      }
      return "(= " + field_term(depth == 0 ? 1 : depth) + " " +
             field_term(depth == 0 ? 1 : depth) + ")";
    }
    switch (roll(6)) {
      case 0:
        return "(and " + bool_term(depth - 1) + " " + bool_term(depth - 1) + ")";
      case 1:
        return "(or " + bool_term(depth - 1) + " " + bool_term(depth - 1) + ")";
      case 2:
        return "(not " + bool_term(depth - 1) + ")";
      case 3:
        return "(xor " + bool_term(depth - 1) + " " + bool_term(depth - 1) + ")";
      case 4:
        return "(=> " + bool_term(depth - 1) + " " + bool_term(depth - 1) + ")";
      default:
        return "(ite " + bool_term(depth - 1) + " " + bool_term(depth - 1) +
               " " + bool_term(depth - 1) + ")";
    }
  }
};

}  // namespace

std::string fuzz_generate(unsigned long seed, const FuzzParams& params) {
  if (params.moduli.empty() || params.max_constants == 0) {
    throw InvalidInputError("fuzz parameters need a sort pool and constants");
  }
  Gen g{std::mt19937_64(seed), 0, false, {}};
  g.p = params.moduli[g.roll(params.moduli.size())];
  g.alias = g.roll(3) == 0;

  std::string out = "(set-logic QF_FFA)\n";
  if (g.alias) {
    out += "(define-sort S () (_ FiniteField " + std::to_string(g.p) + "))\n";
  }
  const size_t n_consts = 1 + g.roll(params.max_constants);
  for (size_t i = 0; i < n_consts; ++i) {
    g.names.push_back("x" + std::to_string(i));
    out += "(declare-fun " + g.names.back() + " () " + g.sort_text() + ")\n";
  }
  const size_t n_asserts = 1 + g.roll(params.max_asserts);
  for (size_t i = 0; i < n_asserts; ++i) {
    const unsigned depth = 1 + static_cast<unsigned>(g.roll(params.max_depth));
    out += "(assert " + g.bool_term(depth) + ")\n";
  }
  out += "(check-sat)\n";
  return out;
}

}  // namespace ffa

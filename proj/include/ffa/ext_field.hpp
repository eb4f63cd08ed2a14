#pragma once

#include <memory>
#include <vector>

#include "ffa/conway.hpp"
#include "ffa/poly.hpp"

namespace ffa {

/// A finite field sort F_{p^n}. Prime fields have degree 1; extension sorts
/// (n >= 2) carry the canonical reduction polynomial, computed or loaded
/// from a cache at construction, so elements can reduce without further
/// lookups. Copies share one representation; identity is structural on
/// (p, n), so two independently built sorts over the same field compare
/// equal and their elements interoperate.
class FieldSort {
 public:
  static FieldSort prime_field(PrimeModulus m);
  /// Checks primality of p (throws InvalidInputError if composite).
  static FieldSort prime_field(const Integer& p, unsigned mr_rounds = 40);
  /// n = 1 collapses to the prime field; n >= 2 resolves the reduction
  /// polynomial through the cache.
  static FieldSort extension(const Integer& p, unsigned n, ConwayCache& cache,
                             const ConwayBudget& budget = {});

  const Integer& p() const { return rep_->mod.p(); }
  unsigned degree() const { return rep_->n; }
  const PrimeModulus& modulus() const { return rep_->mod; }
  bool is_prime_field() const { return rep_->n == 1; }
  /// Number of elements, p^n.
  const Integer& order() const { return rep_->order; }
  /// Reduction polynomial; defined for extension sorts only.
  const Polynomial& reduction() const;

  bool operator==(const FieldSort& o) const {
    return rep_ == o.rep_ || (p() == o.p() && degree() == o.degree());
  }
  bool operator!=(const FieldSort& o) const { return !(*this == o); }

 private:
  struct Rep {
    PrimeModulus mod;
    unsigned n;
    std::vector<Polynomial> reduction;  // empty for prime fields
    Integer order;
  };
  explicit FieldSort(std::shared_ptr<const Rep> rep) : rep_(std::move(rep)) {}
  std::shared_ptr<const Rep> rep_;
};

/// An element of F_{p^n}, stored as the coefficients of its residue
/// polynomial by ascending degree: symmetric representatives, trailing zeros
/// trimmed, at most n coefficients (so prime-field elements hold at most one
/// and zero holds none). Value semantics; operands of different sorts throw
/// SortError, and equality across sorts is false.
class FieldElement {
 public:
  static FieldElement zero(const FieldSort& s) { return FieldElement(s, {}); }
  static FieldElement one(const FieldSort& s);
  /// Reduces each coefficient into the symmetric range and trims; more than
  /// degree() coefficients is a SortError.
  static FieldElement from_coeffs(const FieldSort& s, std::vector<Integer> cs);
  static FieldElement from_residue(const FieldSort& s, const Residue& r);

  const FieldSort& sort() const { return sort_; }
  const std::vector<Integer>& coeffs() const { return coeffs_; }
  bool is_zero() const { return coeffs_.empty(); }
  /// The element as a prime-field residue; requires a prime sort.
  Residue as_residue() const;

  FieldElement operator+(const FieldElement& o) const;
  FieldElement operator-(const FieldElement& o) const;
  FieldElement operator-() const;
  FieldElement operator*(const FieldElement& o) const;
  /// Multiplicative inverse with recip(0) = 0.
  FieldElement recip() const;
  /// a / b = a * recip(b), so a / 0 = 0.
  FieldElement operator/(const FieldElement& o) const;

  bool operator==(const FieldElement& o) const {
    return sort_ == o.sort_ && coeffs_ == o.coeffs_;
  }
  bool operator!=(const FieldElement& o) const { return !(*this == o); }

 private:
  FieldElement(FieldSort s, std::vector<Integer> cs)
      : sort_(std::move(s)), coeffs_(std::move(cs)) {}
  Polynomial as_poly() const;
  static FieldElement from_poly(const FieldSort& s, const Polynomial& f);

  FieldSort sort_;
  std::vector<Integer> coeffs_;
};

/// The i-th element of the sort in the canonical enumeration order: the
/// coefficients of element i are the base-p digits of i (least significant
/// digit = constant coefficient) mapped through the symmetric representative.
/// Requires 0 <= i < order.
FieldElement element_at(const FieldSort& s, const Integer& i);

}  // namespace ffa

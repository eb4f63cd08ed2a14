#pragma once

#include <vector>

#include "ffa/field_core.hpp"

namespace ffa {

/// Dense univariate polynomial over F_p in the indeterminate alpha.
/// Coefficients are stored by ascending degree as symmetric representatives,
/// with trailing zeros trimmed; the zero polynomial has no coefficients and
/// degree -1. Value semantics throughout.
class Polynomial {
 public:
  /// The zero polynomial over F_p.
  explicit Polynomial(PrimeModulus m) : mod_(std::move(m)) {}

  static Polynomial constant(PrimeModulus m, const Integer& c);
  /// The monomial alpha.
  static Polynomial alpha(PrimeModulus m);
  /// Builds from coefficients by ascending degree; reduces each into the
  /// symmetric range and trims trailing zeros.
  static Polynomial from_coeffs(PrimeModulus m, std::vector<Integer> cs);

  const PrimeModulus& modulus() const { return mod_; }
  const std::vector<Integer>& coeffs() const { return coeffs_; }
  bool is_zero() const { return coeffs_.empty(); }
  /// Degree of the zero polynomial is -1.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  /// Coefficient of alpha^i, zero beyond the degree.
  const Integer& coeff(size_t i) const;
  const Integer& leading() const;
  bool is_monic() const { return !is_zero() && leading() == 1; }

  Polynomial operator+(const Polynomial& o) const;
  Polynomial operator-(const Polynomial& o) const;
  Polynomial operator-() const;
  Polynomial operator*(const Polynomial& o) const;
  /// Multiplies by the scalar c.
  Polynomial scaled(const Integer& c) const;
  /// Multiplies by alpha^k.
  Polynomial shifted(unsigned k) const;

  /// Evaluates at a point of F_p.
  Residue eval(const Residue& x) const;

  bool operator==(const Polynomial& o) const {
    return mod_ == o.mod_ && coeffs_ == o.coeffs_;
  }
  bool operator!=(const Polynomial& o) const { return !(*this == o); }

 private:
  PrimeModulus mod_;
  std::vector<Integer> coeffs_;
};

/// Quotient and remainder with deg r < deg g. Throws InvalidInputError if g
/// is zero; mixing moduli throws SortError.
struct DivRem {
  Polynomial quot;
  Polynomial rem;
};
DivRem divrem(const Polynomial& f, const Polynomial& g);

/// a * b reduced modulo m.
Polynomial mulmod(const Polynomial& a, const Polynomial& b, const Polynomial& m);

/// base^e modulo m for e >= 0; requires deg m >= 1.
Polynomial powmod(const Polynomial& base, const Integer& e, const Polynomial& m);

/// Monic greatest common divisor; gcd(0, 0) = 0.
Polynomial poly_gcd(Polynomial a, Polynomial b);

/// Inverse of f modulo the irreducible polynomial m, with inverse_mod(0) = 0
/// extending the total-division convention to extension elements.
Polynomial inverse_mod(const Polynomial& f, const Polynomial& m);

/// g(x) modulo m, by Horner evaluation in the quotient ring.
Polynomial compose_mod(const Polynomial& g, const Polynomial& x, const Polynomial& m);

/// Irreducibility over F_p: f of degree d >= 1 is irreducible iff
/// gcd(f, alpha^(p^k) - alpha) = 1 for every k <= d/2. Constant input (degree
/// <= 0) throws InvalidInputError.
bool is_irreducible(const Polynomial& f);

}  // namespace ffa

#pragma once

#include <gmpxx.h>

#include <memory>
#include <string>

#include "ffa/errors.hpp"

namespace ffa {

/// Arbitrary-precision integer. All field arithmetic is exact.
using Integer = mpz_class;

/// Symmetric remainder of z modulo p, for odd p the unique representative in
/// [-(p-1)/2, (p-1)/2] congruent to z. For general p >= 2 the range is
/// [-floor((p-1)/2), floor(p/2)], so F_2 is represented as {0, 1}.
Integer smod(const Integer& z, const Integer& p);

/// Result of the extended Euclidean algorithm: g = gcd(a, b) = a*x + b*y,
/// with g >= 0.
struct ExtGcd {
  Integer g;
  Integer x;
  Integer y;
};

/// Extended Euclidean algorithm on nonnegative inputs.
ExtGcd ext_gcd(Integer a, Integer b);

/// Probabilistic primality test. Exact below 2^16 (trial division); above
/// that, Miller-Rabin with `rounds` independent witnesses, so a composite
/// passes with probability at most 4^-rounds. Throws InvalidInputError for
/// p < 2 or rounds < 1.
bool is_probable_prime(const Integer& p, unsigned rounds = 40);

namespace detail {
/// Miller-Rabin core on odd n >= 3 with deterministically seeded random
/// witnesses. Exposed separately so the witness loop is testable on small
/// primes that the public entry point handles by trial division.
bool miller_rabin(const Integer& n, unsigned rounds);
}  // namespace detail

/// A prime modulus p together with the bounds of its symmetric representative
/// range. Cheap to copy; instances with equal p compare equal.
class PrimeModulus {
 public:
  /// Checks primality of p on construction (see is_probable_prime) and
  /// throws InvalidInputError if p is composite or p < 2.
  explicit PrimeModulus(Integer p, unsigned rounds = 40);

  const Integer& p() const { return rep_->p; }
  /// Largest representative, floor(p/2).
  const Integer& hi() const { return rep_->hi; }
  /// Smallest representative, -floor((p-1)/2).
  const Integer& lo() const { return rep_->lo; }

  /// Symmetric representative of z.
  Integer reduce(const Integer& z) const { return smod(z, rep_->p); }

  bool operator==(const PrimeModulus& o) const {
    return rep_ == o.rep_ || rep_->p == o.rep_->p;
  }
  bool operator!=(const PrimeModulus& o) const { return !(*this == o); }

 private:
  struct Rep {
    Integer p;
    Integer hi;
    Integer lo;
  };
  std::shared_ptr<const Rep> rep_;
};

/// An element of the prime field F_p, stored as its symmetric representative.
/// Value semantics; all operators return new elements and never mutate.
/// Mixing operands of different moduli throws SortError.
class Residue {
 public:
  Residue(const Integer& value, PrimeModulus m)
      : value_(m.reduce(value)), mod_(std::move(m)) {}

  const Integer& value() const { return value_; }
  const PrimeModulus& modulus() const { return mod_; }
  bool is_zero() const { return value_ == 0; }

  Residue operator+(const Residue& o) const;
  Residue operator-(const Residue& o) const;
  Residue operator*(const Residue& o) const;
  Residue operator-() const;

  /// Multiplicative inverse, with recip(0) = 0 by convention so that the
  /// operation is total.
  Residue recip() const;

  /// a / b = a * recip(b); in particular a / 0 = 0.
  Residue operator/(const Residue& o) const;

  /// Nonnegative exponent; pow(a, 0) = 1 for every a including 0.
  Residue pow(const Integer& e) const;

  /// Equality is modulus and value; residues over different moduli are
  /// unequal rather than an error.
  bool operator==(const Residue& o) const {
    return mod_ == o.mod_ && value_ == o.value_;
  }
  bool operator!=(const Residue& o) const { return !(*this == o); }

 private:
  Integer value_;
  PrimeModulus mod_;
};

}  // namespace ffa

#include "ffa/field_core.hpp"

#include <utility>

namespace ffa {

Integer smod(const Integer& z, const Integer& p) {
  Integer r;
  // mpz_mod yields the least nonnegative residue for p > 0.
  mpz_mod(r.get_mpz_t(), z.get_mpz_t(), p.get_mpz_t());
  if (r > p / 2) r -= p;
  return r;
}

ExtGcd ext_gcd(Integer a, Integer b) {
  Integer r0 = std::move(a), r1 = std::move(b);
  Integer x0 = 1, x1 = 0;
  Integer y0 = 0, y1 = 1;
  while (r1 != 0) {
    Integer q = r0 / r1;
    r0 -= q * r1;
    std::swap(r0, r1);
    x0 -= q * x1;
    std::swap(x0, x1);
    y0 -= q * y1;
    std::swap(y0, y1);
  }
  return ExtGcd{std::move(r0), std::move(x0), std::move(y0)};
}

namespace {

// Exact primality by trial division; n < 2^16.
bool trial_division_prime(unsigned long n) {
  if (n < 2) return false;
  if (n < 4) return true;
  if (n % 2 == 0) return false;
  for (unsigned long d = 3; d * d <= n; d += 2) {
    if (n % d == 0) return false;
  }
  return true;
}

// Fixed seed for witness selection: results are reproducible across runs.
constexpr unsigned long kWitnessSeed = 0x666172ul;

}  // namespace

namespace detail {

bool miller_rabin(const Integer& n, unsigned rounds) {
  if (n == 3) return true;  // witness range [2, n-2] is empty
  // Write n - 1 = d * 2^s with d odd.
  Integer d = n - 1;
  const mp_bitcnt_t s = mpz_scan1(d.get_mpz_t(), 0);
  mpz_tdiv_q_2exp(d.get_mpz_t(), d.get_mpz_t(), s);

  gmp_randclass rng(gmp_randinit_mt);
  rng.seed(kWitnessSeed);
  const Integer n1 = n - 1;
  const Integer span = n - 3;  // witnesses drawn from [2, n-2]

  for (unsigned i = 0; i < rounds; ++i) {
    Integer a = rng.get_z_range(span) + 2;
    Integer x;
    mpz_powm(x.get_mpz_t(), a.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
    if (x == 1 || x == n1) continue;
    bool witness = true;
    for (mp_bitcnt_t r = 1; r < s; ++r) {
      x = x * x % n;
      if (x == n1) {
        witness = false;
        break;
      }
    }
    if (witness) return false;
  }
  return true;
}

}  // namespace detail

bool is_probable_prime(const Integer& p, unsigned rounds) {
  if (rounds < 1) throw InvalidInputError("primality test needs at least one round");
  if (p < 2) {
    throw InvalidInputError("primality is defined for integers >= 2, got " +
                            p.get_str());
  }
  if (p < 65536) return trial_division_prime(p.get_ui());
  if (mpz_even_p(p.get_mpz_t())) return false;
  return detail::miller_rabin(p, rounds);
}

PrimeModulus::PrimeModulus(Integer p, unsigned rounds) {
  if (!is_probable_prime(p, rounds)) {
    throw InvalidInputError("modulus " + p.get_str() + " is not prime");
  }
  auto rep = std::make_shared<Rep>();
  rep->p = std::move(p);
  rep->hi = rep->p / 2;
  rep->lo = -((rep->p - 1) / 2);
  rep_ = std::move(rep);
}

namespace {

void require_same_modulus(const Residue& a, const Residue& b) {
  if (a.modulus() != b.modulus()) {
    throw SortError("operands over different prime fields: F_" +
                    a.modulus().p().get_str() + " vs F_" +
                    b.modulus().p().get_str());
  }
}

}  // namespace

Residue Residue::operator+(const Residue& o) const {
  require_same_modulus(*this, o);
  return Residue(value_ + o.value_, mod_);
}

Residue Residue::operator-(const Residue& o) const {
  require_same_modulus(*this, o);
  return Residue(value_ - o.value_, mod_);
}

Residue Residue::operator*(const Residue& o) const {
  require_same_modulus(*this, o);
  return Residue(value_ * o.value_, mod_);
}

Residue Residue::operator-() const { return Residue(-value_, mod_); }

Residue Residue::recip() const {
  if (is_zero()) return *this;
  Integer a = value_ < 0 ? Integer(value_ + mod_.p()) : value_;
  // p prime and a nonzero mod p, so gcd(a, p) = 1 and x is the inverse.
  ExtGcd e = ext_gcd(std::move(a), mod_.p());
  return Residue(e.x, mod_);
}

Residue Residue::operator/(const Residue& o) const {
  require_same_modulus(*this, o);
  return *this * o.recip();
}

Residue Residue::pow(const Integer& e) const {
  if (e < 0) throw InvalidInputError("negative exponent; use recip() and a nonnegative power");
  Residue acc(1, mod_);
  Residue base = *this;
  const size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
  for (size_t i = 0; i < bits; ++i) {
    if (mpz_tstbit(e.get_mpz_t(), i)) acc = acc * base;
    if (i + 1 < bits) base = base * base;
  }
  return acc;
}

}  // namespace ffa

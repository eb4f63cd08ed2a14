#include "ffa/poly.hpp"

#include <utility>

namespace ffa {

namespace {

const Integer kZero = 0;

void trim(std::vector<Integer>& cs) {
  while (!cs.empty() && cs.back() == 0) cs.pop_back();
}

void require_same_modulus(const Polynomial& a, const Polynomial& b) {
  if (a.modulus() != b.modulus()) {
    throw SortError("polynomials over different prime fields: F_" +
                    a.modulus().p().get_str() + " vs F_" +
                    b.modulus().p().get_str());
  }
}

}  // namespace

Polynomial Polynomial::constant(PrimeModulus m, const Integer& c) {
  return from_coeffs(std::move(m), {c});
}

Polynomial Polynomial::alpha(PrimeModulus m) {
  return from_coeffs(std::move(m), {0, 1});
}

Polynomial Polynomial::from_coeffs(PrimeModulus m, std::vector<Integer> cs) {
  Polynomial f(m);
  for (Integer& c : cs) c = m.reduce(c);
  trim(cs);
  f.coeffs_ = std::move(cs);
  return f;
}

const Integer& Polynomial::coeff(size_t i) const {
  return i < coeffs_.size() ? coeffs_[i] : kZero;
}

const Integer& Polynomial::leading() const {
  return is_zero() ? kZero : coeffs_.back();
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
  require_same_modulus(*this, o);
  std::vector<Integer> cs(std::max(coeffs_.size(), o.coeffs_.size()));
  for (size_t i = 0; i < cs.size(); ++i) cs[i] = coeff(i) + o.coeff(i);
  return from_coeffs(mod_, std::move(cs));
}

Polynomial Polynomial::operator-(const Polynomial& o) const {
  require_same_modulus(*this, o);
  std::vector<Integer> cs(std::max(coeffs_.size(), o.coeffs_.size()));
  for (size_t i = 0; i < cs.size(); ++i) cs[i] = coeff(i) - o.coeff(i);
  return from_coeffs(mod_, std::move(cs));
}

Polynomial Polynomial::operator-() const {
  std::vector<Integer> cs = coeffs_;
  for (Integer& c : cs) c = -c;
  return from_coeffs(mod_, std::move(cs));
}

Polynomial Polynomial::operator*(const Polynomial& o) const {
  require_same_modulus(*this, o);
  if (is_zero() || o.is_zero()) return Polynomial(mod_);
  std::vector<Integer> cs(coeffs_.size() + o.coeffs_.size() - 1);
  for (size_t i = 0; i < coeffs_.size(); ++i) {
    for (size_t j = 0; j < o.coeffs_.size(); ++j) {
      cs[i + j] += coeffs_[i] * o.coeffs_[j];
    }
  }
  return from_coeffs(mod_, std::move(cs));
}

Polynomial Polynomial::scaled(const Integer& c) const {
  std::vector<Integer> cs = coeffs_;
  for (Integer& x : cs) x *= c;
  return from_coeffs(mod_, std::move(cs));
}

Polynomial Polynomial::shifted(unsigned k) const {
  if (is_zero()) return *this;
  std::vector<Integer> cs(coeffs_.size() + k);
  for (size_t i = 0; i < coeffs_.size(); ++i) cs[i + k] = coeffs_[i];
  return from_coeffs(mod_, std::move(cs));
}

Residue Polynomial::eval(const Residue& x) const {
  Residue acc(0, mod_);
  for (size_t i = coeffs_.size(); i-- > 0;) {
    acc = acc * x + Residue(coeffs_[i], mod_);
  }
  return acc;
}

DivRem divrem(const Polynomial& f, const Polynomial& g) {
  require_same_modulus(f, g);
  if (g.is_zero()) throw InvalidInputError("polynomial division by zero");
  const PrimeModulus& m = f.modulus();
  if (f.degree() < g.degree()) return {Polynomial(m), f};

  Integer lead_inv = Residue(g.leading(), m).recip().value();
  std::vector<Integer> r = f.coeffs();
  std::vector<Integer> q(f.degree() - g.degree() + 1);
  for (int d = f.degree(); d >= g.degree(); --d) {
    Integer c = m.reduce(r[d] * lead_inv);
    if (c == 0) continue;
    const size_t shift = d - g.degree();
    q[shift] = c;
    for (size_t i = 0; i <= static_cast<size_t>(g.degree()); ++i) {
      r[shift + i] = m.reduce(r[shift + i] - c * g.coeff(i));
    }
  }
  r.resize(g.degree() < 0 ? 0 : g.degree());
  return {Polynomial::from_coeffs(m, std::move(q)),
          Polynomial::from_coeffs(m, std::move(r))};
}

Polynomial mulmod(const Polynomial& a, const Polynomial& b, const Polynomial& m) {
  return divrem(a * b, m).rem;
}

Polynomial powmod(const Polynomial& base, const Integer& e, const Polynomial& m) {
  if (e < 0) throw InvalidInputError("negative exponent in powmod");
  if (m.degree() < 1) throw InvalidInputError("powmod modulus must be nonconstant");
  Polynomial acc = Polynomial::constant(m.modulus(), 1);
  Polynomial b = divrem(base, m).rem;
  const size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
  for (size_t i = 0; i < bits; ++i) {
    if (mpz_tstbit(e.get_mpz_t(), i)) acc = mulmod(acc, b, m);
    if (i + 1 < bits) b = mulmod(b, b, m);
  }
  return e == 0 ? Polynomial::constant(m.modulus(), 1) : acc;
}

Polynomial poly_gcd(Polynomial a, Polynomial b) {
  require_same_modulus(a, b);
  while (!b.is_zero()) {
    Polynomial r = divrem(a, b).rem;
    a = std::move(b);
    b = std::move(r);
  }
  if (a.is_zero()) return a;
  return a.scaled(Residue(a.leading(), a.modulus()).recip().value());
}

Polynomial inverse_mod(const Polynomial& f, const Polynomial& m) {
  require_same_modulus(f, m);
  if (m.degree() < 1) throw InvalidInputError("inverse_mod modulus must be nonconstant");
  Polynomial r = divrem(f, m).rem;
  if (r.is_zero()) return r;

  // Extended Euclid on (m, r), tracking only the f-side cofactor.
  Polynomial r0 = m, r1 = r;
  Polynomial t0(m.modulus()), t1 = Polynomial::constant(m.modulus(), 1);
  while (!r1.is_zero()) {
    DivRem d = divrem(r0, r1);
    Polynomial t2 = t0 - d.quot * t1;
    r0 = std::move(r1);
    r1 = std::move(d.rem);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (r0.degree() != 0) {
    throw InvalidInputError("inverse does not exist: modulus is not irreducible");
  }
  Integer scale = Residue(r0.coeff(0), m.modulus()).recip().value();
  return divrem(t0.scaled(scale), m).rem;
}

Polynomial compose_mod(const Polynomial& g, const Polynomial& x, const Polynomial& m) {
  Polynomial acc(m.modulus());
  for (size_t i = g.coeffs().size(); i-- > 0;) {
    acc = mulmod(acc, x, m) + Polynomial::constant(m.modulus(), g.coeff(i));
  }
  return divrem(acc, m).rem;
}

bool is_irreducible(const Polynomial& f) {
  if (f.degree() < 1) {
    throw InvalidInputError("irreducibility is defined for nonconstant polynomials");
  }
  if (f.degree() == 1) return true;
  const PrimeModulus& mod = f.modulus();
  Polynomial m = f.scaled(Residue(f.leading(), mod).recip().value());

  // f is squarefree-irreducible iff it shares no root with any subfield
  // F_{p^k} for k up to deg/2: check gcd(f, alpha^(p^k) - alpha) = 1.
  const Polynomial alpha = Polynomial::alpha(mod);
  Polynomial frob = alpha;  // alpha^(p^k) mod m, starting at k = 0
  const Polynomial one = Polynomial::constant(mod, 1);
  for (int k = 1; k <= f.degree() / 2; ++k) {
    frob = powmod(frob, mod.p(), m);
    if (poly_gcd(m, frob - alpha) != one) return false;
  }
  return true;
}

}  // namespace ffa

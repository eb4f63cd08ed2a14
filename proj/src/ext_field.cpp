#include "ffa/ext_field.hpp"

#include <utility>

namespace ffa {

FieldSort FieldSort::prime_field(PrimeModulus m) {
  auto rep = std::make_shared<Rep>(Rep{std::move(m), 1, {}, 0});
  rep->order = rep->mod.p();
  return FieldSort(std::move(rep));
}

FieldSort FieldSort::prime_field(const Integer& p, unsigned mr_rounds) {
  return prime_field(PrimeModulus(p, mr_rounds));
}

FieldSort FieldSort::extension(const Integer& p, unsigned n, ConwayCache& cache,
                               const ConwayBudget& budget) {
  if (n < 1) throw InvalidInputError("extension degree must be at least 1");
  if (n == 1) return prime_field(p, budget.mr_rounds);
  Polynomial f = conway_polynomial(p, n, cache, budget);
  auto rep = std::make_shared<Rep>(Rep{f.modulus(), n, {std::move(f)}, 0});
  mpz_pow_ui(rep->order.get_mpz_t(), p.get_mpz_t(), n);
  return FieldSort(std::move(rep));
}

const Polynomial& FieldSort::reduction() const {
  if (rep_->reduction.empty()) {
    throw InvalidInputError("prime fields have no reduction polynomial");
  }
  return rep_->reduction.front();
}

namespace {

void require_same_sort(const FieldElement& a, const FieldElement& b) {
  if (a.sort() != b.sort()) {
    throw SortError("operands over different fields: F_" +
                    a.sort().p().get_str() + "^" +
                    std::to_string(a.sort().degree()) + " vs F_" +
                    b.sort().p().get_str() + "^" +
                    std::to_string(b.sort().degree()));
  }
}

}  // namespace

FieldElement FieldElement::one(const FieldSort& s) {
  return from_coeffs(s, {1});
}

FieldElement FieldElement::from_coeffs(const FieldSort& s, std::vector<Integer> cs) {
  if (cs.size() > s.degree()) {
    throw SortError("literal has " + std::to_string(cs.size()) +
                    " coefficients but the sort has degree " +
                    std::to_string(s.degree()));
  }
  for (Integer& c : cs) c = s.modulus().reduce(c);
  while (!cs.empty() && cs.back() == 0) cs.pop_back();
  return FieldElement(s, std::move(cs));
}

FieldElement FieldElement::from_residue(const FieldSort& s, const Residue& r) {
  if (s.modulus() != r.modulus()) {
    throw SortError("residue modulus does not match the sort");
  }
  return from_coeffs(s, {r.value()});
}

Residue FieldElement::as_residue() const {
  if (!sort_.is_prime_field()) {
    throw SortError("as_residue is defined for prime sorts");
  }
  return Residue(coeffs_.empty() ? Integer(0) : coeffs_[0], sort_.modulus());
}

Polynomial FieldElement::as_poly() const {
  return Polynomial::from_coeffs(sort_.modulus(), coeffs_);
}

FieldElement FieldElement::from_poly(const FieldSort& s, const Polynomial& f) {
  return from_coeffs(s, f.coeffs());
}

FieldElement FieldElement::operator+(const FieldElement& o) const {
  require_same_sort(*this, o);
  return from_poly(sort_, as_poly() + o.as_poly());
}

FieldElement FieldElement::operator-(const FieldElement& o) const {
  require_same_sort(*this, o);
  return from_poly(sort_, as_poly() - o.as_poly());
}

FieldElement FieldElement::operator-() const {
  return from_poly(sort_, -as_poly());
}

FieldElement FieldElement::operator*(const FieldElement& o) const {
  require_same_sort(*this, o);
  if (sort_.is_prime_field()) {
    return from_residue(sort_, as_residue() * o.as_residue());
  }
  return from_poly(sort_, mulmod(as_poly(), o.as_poly(), sort_.reduction()));
}

FieldElement FieldElement::recip() const {
  if (sort_.is_prime_field()) {
    return from_residue(sort_, as_residue().recip());
  }
  return from_poly(sort_, inverse_mod(as_poly(), sort_.reduction()));
}

FieldElement FieldElement::operator/(const FieldElement& o) const {
  require_same_sort(*this, o);
  return *this * o.recip();
}

FieldElement element_at(const FieldSort& s, const Integer& i) {
  if (i < 0 || i >= s.order()) {
    throw InvalidInputError("element index " + i.get_str() +
                            " out of range for a field of order " +
                            s.order().get_str());
  }
  std::vector<Integer> cs;
  Integer rest = i;
  while (rest != 0) {
    Integer digit;
    mpz_fdiv_qr(rest.get_mpz_t(), digit.get_mpz_t(), rest.get_mpz_t(),
                s.p().get_mpz_t());
    cs.push_back(std::move(digit));
  }
  return FieldElement::from_coeffs(s, std::move(cs));
}

}  // namespace ffa

#include "ffa/conway.hpp"

#include <fstream>
#include <sstream>
#include <utility>

namespace ffa {

std::vector<Integer> alt_sign_key(const Polynomial& f) {
  if (!f.is_monic()) {
    throw InvalidInputError("alt-sign key is defined for monic polynomials");
  }
  const Integer& p = f.modulus().p();
  const int d = f.degree();
  std::vector<Integer> key(d + 1);
  for (int j = d; j >= 0; --j) {
    Integer c = f.coeff(j);
    if ((d - j) % 2 == 1) c = -c;
    mpz_mod(c.get_mpz_t(), c.get_mpz_t(), p.get_mpz_t());  // canonical 0..p-1
    key[d - j] = std::move(c);
  }
  return key;
}

std::vector<Integer> prime_factors(const Integer& x, const ConwayBudget& budget) {
  if (x < 1) throw InvalidInputError("prime_factors expects a positive integer");
  std::vector<Integer> factors;
  Integer rest = x;
  auto strip = [&](const Integer& d) {
    if (rest % d == 0) {
      factors.push_back(d);
      while (rest % d == 0) rest /= d;
    }
  };
  strip(2);
  for (Integer d = 3; d <= budget.trial_division_bound && d * d <= rest; d += 2) {
    strip(d);
  }
  if (rest > 1) {
    if (rest < Integer(budget.trial_division_bound) * budget.trial_division_bound ||
        is_probable_prime(rest, budget.mr_rounds)) {
      factors.push_back(rest);
    } else {
      throw ResourceError("cannot factor " + x.get_str() +
                          " within the trial division bound; cofactor " +
                          rest.get_str() + " is composite");
    }
  }
  return factors;
}

namespace {

bool is_primitive_with_factors(const Polynomial& f,
                               const std::vector<Integer>& factors,
                               const Integer& group_order) {
  if (f.coeff(0) == 0) return false;  // alpha is not a unit
  const Polynomial one = Polynomial::constant(f.modulus(), 1);
  const Polynomial alpha = Polynomial::alpha(f.modulus());
  for (const Integer& ell : factors) {
    if (powmod(alpha, group_order / ell, f) == one) return false;
  }
  return true;
}

Integer pow_int(const Integer& p, unsigned n) {
  Integer q;
  mpz_pow_ui(q.get_mpz_t(), p.get_mpz_t(), n);
  return q;
}

std::vector<unsigned> proper_divisors(unsigned n) {
  std::vector<unsigned> ds;
  for (unsigned m = 1; m < n; ++m) {
    if (n % m == 0) ds.push_back(m);
  }
  return ds;
}

}  // namespace

bool is_primitive(const Polynomial& f, const ConwayBudget& budget) {
  if (f.degree() < 1) {
    throw InvalidInputError("primitivity is defined for nonconstant polynomials");
  }
  Integer group_order = pow_int(f.modulus().p(), f.degree()) - 1;
  return is_primitive_with_factors(f, prime_factors(group_order, budget),
                                   group_order);
}

bool is_compatible(const Polynomial& sub, const Polynomial& f) {
  if (sub.modulus() != f.modulus()) {
    throw SortError("compatibility check across different prime fields");
  }
  if (sub == f) return true;
  const int m = sub.degree(), n = f.degree();
  if (m < 1 || n < 1 || n % m != 0) {
    throw InvalidInputError("subfield degree must divide the extension degree");
  }
  const Integer& p = f.modulus().p();
  Integer r = (pow_int(p, n) - 1) / (pow_int(p, m) - 1);
  Polynomial beta = powmod(Polynomial::alpha(f.modulus()), r, f);
  return compose_mod(sub, beta, f).is_zero();
}

ConwayCache::ConwayCache(std::filesystem::path file) : file_(std::move(file)) {
  if (std::filesystem::exists(*file_)) load();
}

PrimeModulus ConwayCache::modulus_for(const Integer& p) const {
  auto it = moduli_.find(p);
  if (it == moduli_.end()) it = moduli_.emplace(p, PrimeModulus(p)).first;
  return it->second;
}

void ConwayCache::load() {
  std::ifstream in(*file_);
  if (!in) throw InvalidInputError("cannot read cache file " + file_->string());
  std::pair<Integer, unsigned> last{0, 0};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string p_text;
    if (!(ls >> p_text)) continue;  // blank or comment-only line

    auto fail = [&](const std::string& why) -> void {
      throw InvalidInputError("cache file " + file_->string() + " line " +
                              std::to_string(lineno) + ": " + why);
    };
    Integer p;
    unsigned n = 0;
    try {
      p = Integer(p_text);
    } catch (const std::invalid_argument&) {
      fail("malformed modulus '" + p_text + "'");
    }
    if (!(ls >> n) || n < 1) fail("malformed degree");
    std::vector<Integer> cs;
    std::string c_text;
    while (ls >> c_text) {
      try {
        cs.emplace_back(c_text);
      } catch (const std::invalid_argument&) {
        fail("malformed coefficient '" + c_text + "'");
      }
    }
    if (cs.size() != n + 1) {
      fail("expected " + std::to_string(n + 1) + " coefficients, got " +
           std::to_string(cs.size()));
    }
    PrimeModulus mod = [&] {
      try {
        return modulus_for(p);
      } catch (const InvalidInputError& e) {
        fail(e.what());
        throw;  // unreachable
      }
    }();
    for (const Integer& c : cs) {
      if (c != mod.reduce(c)) fail("coefficient " + c.get_str() + " is not a symmetric representative");
    }
    if (cs.back() != 1) fail("polynomial is not monic");
    std::pair<Integer, unsigned> k{p, n};
    if (!(last < k)) fail("entries out of (p, n) order");
    last = k;
    entries_.emplace(std::move(k), std::move(cs));
  }
}

std::optional<Polynomial> ConwayCache::find(const Integer& p, unsigned n) const {
  std::lock_guard<std::mutex> lock(mu_);
  auto it = entries_.find({p, n});
  if (it == entries_.end()) return std::nullopt;
  return Polynomial::from_coeffs(modulus_for(p), it->second);
}

void ConwayCache::insert(const Integer& p, unsigned n, const Polynomial& f) {
  std::lock_guard<std::mutex> lock(mu_);
  auto [it, fresh] = entries_.try_emplace({p, n}, f.coeffs());
  if (!fresh && it->second != f.coeffs()) {
    throw InvalidInputError("conflicting cache entry for p=" + p.get_str() +
                            " n=" + std::to_string(n));
  }
}

void ConwayCache::save() const {
  std::lock_guard<std::mutex> lock(mu_);
  if (!file_) return;
  std::filesystem::path tmp = *file_;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) throw InvalidInputError("cannot write cache file " + tmp.string());
    for (const auto& [key, cs] : entries_) {
      out << key.first.get_str() << ' ' << key.second;
      for (const Integer& c : cs) out << ' ' << c.get_str();
      out << '\n';
    }
  }
  std::filesystem::rename(tmp, *file_);
}

size_t ConwayCache::size() const {
  std::lock_guard<std::mutex> lock(mu_);
  return entries_.size();
}

namespace {

// Candidate with counter index i: coefficient key digits (c_{n-1}, ..., c_0)
// are the base-p digits of i with c_0 least significant; c_n = 1.
Polynomial candidate_at(const PrimeModulus& mod, unsigned n, const Integer& i) {
  std::vector<Integer> coeffs(n + 1);
  coeffs[n] = 1;
  Integer rest = i;
  for (unsigned j = 0; j < n; ++j) {
    Integer c;
    mpz_fdiv_qr(rest.get_mpz_t(), c.get_mpz_t(), rest.get_mpz_t(),
                mod.p().get_mpz_t());
    if ((n - j) % 2 == 1) c = -c;
    coeffs[j] = mod.reduce(c);
  }
  return Polynomial::from_coeffs(mod, std::move(coeffs));
}

}  // namespace

Polynomial conway_polynomial(const Integer& p, unsigned n, ConwayCache& cache,
                             const ConwayBudget& budget) {
  if (n < 1) throw InvalidInputError("extension degree must be at least 1");
  if (auto hit = cache.find(p, n)) return *hit;

  PrimeModulus mod(p, budget.mr_rounds);
  std::vector<Polynomial> subfield;
  for (unsigned m : proper_divisors(n)) {
    subfield.push_back(conway_polynomial(p, m, cache, budget));
  }
  const Integer group_order = pow_int(p, n) - 1;
  const std::vector<Integer> factors = prime_factors(group_order, budget);

  const Integer key_count = group_order + 1;  // p^n candidate keys
  for (Integer i = 0; i < key_count; ++i) {
    if (i >= budget.candidate_cap) {
      throw ResourceError("candidate cap exhausted searching for the degree-" +
                          std::to_string(n) + " polynomial over F_" + p.get_str());
    }
    Polynomial f = candidate_at(mod, n, i);
    if (f.coeff(0) == 0) continue;  // cannot be primitive
    if (!is_irreducible(f)) continue;
    if (!is_primitive_with_factors(f, factors, group_order)) continue;
    bool ok = true;
    for (const Polynomial& sub : subfield) {
      if (!is_compatible(sub, f)) {
        ok = false;
        break;
      }
    }
    if (!ok) continue;
    cache.insert(p, n, f);
    return f;
  }
  throw ResourceError("no qualifying polynomial found for p=" + p.get_str() +
                      " n=" + std::to_string(n));
}

bool verify_conway(const Integer& p, unsigned n, const Polynomial& f,
                   ConwayCache& cache, const ConwayBudget& budget) {
  if (f.modulus().p() != p) return false;
  if (!f.is_monic() || f.degree() != static_cast<int>(n)) return false;
  if (!is_irreducible(f)) return false;
  if (!is_primitive(f, budget)) return false;
  for (unsigned m : proper_divisors(n)) {
    if (!is_compatible(conway_polynomial(p, m, cache, budget), f)) return false;
  }
  return true;
}

}  // namespace ffa

#pragma once

#include <filesystem>
#include <map>
#include <mutex>
#include <optional>
#include <vector>

#include "ffa/poly.hpp"

namespace ffa {

/// Budgets for the polynomial search and the factorization of p^n - 1.
struct ConwayBudget {
  /// Maximum number of candidate polynomials examined per (p, n).
  unsigned long candidate_cap = 10'000'000;
  /// Trial division bound when factoring p^n - 1; a remaining cofactor that
  /// is not a probable prime raises ResourceError.
  unsigned long trial_division_bound = 1'000'000;
  unsigned mr_rounds = 40;
};

/// Totally ordered key under which the Conway polynomial of F_{p^n} is the
/// minimal qualifying polynomial. For monic f of degree d, the key is the
/// tuple (c_d, ..., c_0) with c_j in {0, ..., p-1} defined by writing
///   f = sum_i (-1)^i c_{d-i} alpha^{d-i},
/// i.e. c_j is the canonical representative of (-1)^(d-j) times the
/// coefficient of alpha^j. Keys compare lexicographically, and candidate
/// enumeration walks them as a base-p counter with c_0 varying fastest.
/// Throws InvalidInputError for non-monic input.
std::vector<Integer> alt_sign_key(const Polynomial& f);

/// Distinct prime factors of x >= 1 in ascending order, by trial division up
/// to the budget bound plus a primality test on the remaining cofactor.
/// Throws ResourceError when the cofactor is composite and out of reach.
std::vector<Integer> prime_factors(const Integer& x, const ConwayBudget& budget = {});

/// Whether alpha generates the multiplicative group of F_p[alpha]/f.
/// Requires irreducible f. A zero constant term fails immediately (alpha
/// would not be a unit); the trivial group (p = 2, n = 1) is vacuously
/// generated.
bool is_primitive(const Polynomial& f, const ConwayBudget& budget = {});

/// Norm-compatibility of a candidate f of degree n with the subfield
/// polynomial sub of degree m, where m must divide n: sub(alpha^r) = 0 mod f
/// for r = (p^n - 1) / (p^m - 1). Equal polynomials short-circuit to true.
bool is_compatible(const Polynomial& sub, const Polynomial& f);

/// Thread-safe in-memory table of Conway polynomials, optionally backed by a
/// text file of lines "p n c0 c1 ... cn" (coefficients by ascending degree,
/// symmetric representatives; '#' starts a comment). Entries must be sorted
/// by (p, n) ascending; any malformed line fails the load with a clear error
/// rather than silently recomputing.
class ConwayCache {
 public:
  ConwayCache() = default;
  /// Binds to a file path and loads it when present. Saves rewrite the same
  /// path atomically (temp file + rename).
  explicit ConwayCache(std::filesystem::path file);

  std::optional<Polynomial> find(const Integer& p, unsigned n) const;
  /// Inserting a value that conflicts with a cached one throws
  /// InvalidInputError; identical reinsertion is a no-op.
  void insert(const Integer& p, unsigned n, const Polynomial& f);
  /// Writes all entries to the bound file; no-op when constructed without a
  /// path.
  void save() const;
  size_t size() const;
  const std::optional<std::filesystem::path>& path() const { return file_; }

 private:
  void load();
  PrimeModulus modulus_for(const Integer& p) const;

  mutable std::mutex mu_;
  std::optional<std::filesystem::path> file_;
  // (p, n) -> coefficients by ascending degree, symmetric representatives.
  std::map<std::pair<Integer, unsigned>, std::vector<Integer>> entries_;
  mutable std::map<Integer, PrimeModulus> moduli_;
};

/// The Conway polynomial C_{p,n}: the minimal polynomial under the
/// alt_sign_key order that is monic of degree n, irreducible, primitive, and
/// norm-compatible with C_{p,m} for every proper divisor m of n. Results are
/// memoized in the cache, and required subfield polynomials are computed
/// recursively. Throws ResourceError when a budget is exhausted.
Polynomial conway_polynomial(const Integer& p, unsigned n, ConwayCache& cache,
                             const ConwayBudget& budget = {});

/// Checks every Conway condition for f except minimality: monic of degree n,
/// irreducible, primitive, and compatible with C_{p,m} for all proper
/// divisors m of n.
bool verify_conway(const Integer& p, unsigned n, const Polynomial& f,
                   ConwayCache& cache, const ConwayBudget& budget = {});

}  // namespace ffa

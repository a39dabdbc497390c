#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace weirdpq {

using Int = mpz_class;

/// A candidate 2^k * p * q together with the derived quantities used
/// throughout: M = 2^(k+1) - 1 = sigma(2^k) and the abundance
/// a = sigma(n) - 2n = M + M*p + M*q - p*q.
struct WeirdTriple {
  unsigned k = 0;
  std::uint64_t p = 0;
  std::uint64_t q = 0;
  std::uint64_t M = 0;
  std::int64_t a = 0;

  friend bool operator==(const WeirdTriple&, const WeirdTriple&) = default;
};

/// Prime factorization with factors in increasing prime order.
struct Factorization {
  Int value = 1;
  std::vector<std::pair<Int, unsigned>> factors;
};

inline Int pow2(unsigned long e) {
  Int r;
  mpz_ui_pow_ui(r.get_mpz_t(), 2, e);
  return r;
}

/// sigma(2^k) = 2^(k+1) - 1, the quantity written M below.
inline Int sigma_pow2(unsigned k) { return pow2(k + 1) - 1; }

inline std::uint64_t sigma_pow2_u64(unsigned k) {
  return (std::uint64_t{1} << (k + 1)) - 1;  // requires k <= 62
}

/// Divisor sum of 2^k * p * q for distinct odd primes p, q:
/// (2^(k+1) - 1)(p + 1)(q + 1). Throws std::invalid_argument when
/// p == q or either is even (the closed form assumes distinct odd primes).
Int sigma_2kpq(unsigned k, const Int& p, const Int& q);

/// Abundance of 2^k * p * q: sigma(n) - 2n = M + M*p + M*q - p*q.
/// May be negative (deficient candidates). Same preconditions as sigma_2kpq.
Int abundance_2kpq(unsigned k, const Int& p, const Int& q);

/// Fixed-width abundance for the search fast path. Requires k <= 20 so all
/// intermediates fit in 64 bits; must agree with abundance_2kpq exactly.
std::int64_t abundance_2kpq_i64(unsigned k, std::uint64_t p, std::uint64_t q);

/// Multiplicative divisor sum: product of (prime^(m+1) - 1) / (prime - 1).
Int sigma(const Factorization& f);

/// Trial-division factorization. Rejects n > 10^12 (and n == 0) rather than
/// running unbounded.
Factorization factorize(std::uint64_t n);

/// Jacobi symbol (a/n) for odd n >= 1, computed by binary reciprocity.
/// Returns 0 iff gcd(a, n) > 1. Throws for even or nonpositive n.
int jacobi(const Int& a, const Int& n);
int jacobi(std::int64_t a, std::uint64_t n);

/// b^e mod n for e >= 0, n >= 1.
Int mod_pow(const Int& b, const Int& e, const Int& n);

Int gcd(const Int& a, const Int& b);

/// Deterministic Miller-Rabin for 64-bit inputs.
bool is_prime_u64(std::uint64_t n);

/// Exact number of decimal digits of |n| (1 for n == 0).
std::size_t digits10(const Int& n);

}  // namespace weirdpq

#include "weirdpq/arith.hpp"

#include <algorithm>
#include <stdexcept>

namespace weirdpq {

namespace {

void require_odd_prime_pair(const Int& p, const Int& q) {
  if (p == q) throw std::invalid_argument("p and q must be distinct");
  if (mpz_even_p(p.get_mpz_t()) || mpz_even_p(q.get_mpz_t()) || p < 3 || q < 3)
    throw std::invalid_argument("p and q must be odd primes (> 2)");
}

}  // namespace

Int sigma_2kpq(unsigned k, const Int& p, const Int& q) {
  if (k < 1) throw std::invalid_argument("k must be >= 1");
  require_odd_prime_pair(p, q);
  return sigma_pow2(k) * (p + 1) * (q + 1);
}

Int abundance_2kpq(unsigned k, const Int& p, const Int& q) {
  if (k < 1) throw std::invalid_argument("k must be >= 1");
  require_odd_prime_pair(p, q);
  const Int M = sigma_pow2(k);
  return M + M * p + M * q - p * q;
}

std::int64_t abundance_2kpq_i64(unsigned k, std::uint64_t p, std::uint64_t q) {
  if (k < 1 || k > 20) throw std::invalid_argument("k out of range for 64-bit path");
  if (p == q || p % 2 == 0 || q % 2 == 0 || p < 3 || q < 3)
    throw std::invalid_argument("p and q must be distinct odd primes");
  const std::uint64_t M = sigma_pow2_u64(k);
  // All terms below 2^(3k+3) <= 2^63 for k <= 20.
  const std::int64_t s = static_cast<std::int64_t>(M + M * p + M * q);
  return s - static_cast<std::int64_t>(p * q);
}

Int sigma(const Factorization& f) {
  Int result = 1;
  Int product = 1;
  const Int* last = nullptr;
  for (const auto& [prime, mult] : f.factors) {
    if (mult == 0) throw std::invalid_argument("zero multiplicity in factorization");
    if (last && !(*last < prime))
      throw std::invalid_argument("factors must be in increasing prime order");
    if (mpz_probab_prime_p(prime.get_mpz_t(), 25) == 0)
      throw std::invalid_argument("factorization lists a composite");
    last = &prime;
    Int pe;
    mpz_pow_ui(pe.get_mpz_t(), prime.get_mpz_t(), mult);
    product *= pe;
    result *= (pe * prime - 1) / (prime - 1);
  }
  if (product != f.value)
    throw std::invalid_argument("factorization does not multiply out to its value");
  return result;
}

Factorization factorize(std::uint64_t n) {
  constexpr std::uint64_t kMax = 1'000'000'000'000ull;
  if (n == 0 || n > kMax)
    throw std::invalid_argument("factorize supports 1 <= n <= 10^12");
  Factorization f;
  f.value = Int(static_cast<unsigned long>(n));
  auto push = [&](std::uint64_t prime, unsigned mult) {
    f.factors.emplace_back(Int(static_cast<unsigned long>(prime)), mult);
  };
  unsigned twos = 0;
  while (n % 2 == 0) { n /= 2; ++twos; }
  if (twos) push(2, twos);
  for (std::uint64_t d = 3; d * d <= n; d += 2) {
    if (n % d) continue;
    unsigned m = 0;
    while (n % d == 0) { n /= d; ++m; }
    push(d, m);
  }
  if (n > 1) push(n, 1);
  return f;
}

int jacobi(const Int& a_in, const Int& n_in) {
  if (n_in <= 0 || mpz_even_p(n_in.get_mpz_t()))
    throw std::invalid_argument("jacobi requires odd positive n");
  Int a = a_in % n_in;
  if (a < 0) a += n_in;
  Int n = n_in;
  int sign = 1;
  while (a != 0) {
    // Pull out factors of two; (2/n) = -1 iff n = +-3 (mod 8).
    const auto z = mpz_scan1(a.get_mpz_t(), 0);
    if (z & 1) {
      const unsigned long n8 = mpz_fdiv_ui(n.get_mpz_t(), 8);
      if (n8 == 3 || n8 == 5) sign = -sign;
    }
    mpz_fdiv_q_2exp(a.get_mpz_t(), a.get_mpz_t(), z);
    // Quadratic reciprocity for odd a, n.
    if (mpz_fdiv_ui(a.get_mpz_t(), 4) == 3 && mpz_fdiv_ui(n.get_mpz_t(), 4) == 3)
      sign = -sign;
    std::swap(a, n);
    a %= n;
  }
  return n == 1 ? sign : 0;
}

int jacobi(std::int64_t a, std::uint64_t n) {
  return jacobi(Int(static_cast<long>(a)), Int(static_cast<unsigned long>(n)));
}

Int mod_pow(const Int& b, const Int& e, const Int& n) {
  if (n < 1) throw std::invalid_argument("modulus must be >= 1");
  if (e < 0) throw std::invalid_argument("exponent must be >= 0");
  Int r;
  mpz_powm(r.get_mpz_t(), b.get_mpz_t(), e.get_mpz_t(), n.get_mpz_t());
  return r;
}

Int gcd(const Int& a, const Int& b) {
  Int r;
  mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

namespace {

std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

std::uint64_t powmod_u64(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  b %= m;
  while (e) {
    if (e & 1) r = mulmod_u64(r, b, m);
    b = mulmod_u64(b, b, m);
    e >>= 1;
  }
  return r;
}

bool sprp_u64(std::uint64_t n, std::uint64_t base) {
  if (base % n == 0) return true;
  std::uint64_t d = n - 1;
  int s = 0;
  while (d % 2 == 0) { d /= 2; ++s; }
  std::uint64_t x = powmod_u64(base, d, n);
  if (x == 1 || x == n - 1) return true;
  for (int i = 1; i < s; ++i) {
    x = mulmod_u64(x, x, n);
    if (x == n - 1) return true;
  }
  return false;
}

}  // namespace

bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (n == p) return true;
    if (n % p == 0) return false;
  }
  // This base set decides primality for all n < 3.3 * 10^24.
  for (std::uint64_t b : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull})
    if (!sprp_u64(n, b)) return false;
  return true;
}

std::size_t digits10(const Int& n) {
  if (n == 0) return 1;
  Int a = abs(n);
  std::size_t d = mpz_sizeinbase(a.get_mpz_t(), 10);
  if (d == 1) return 1;
  // sizeinbase may overestimate by one; compare against 10^(d-1).
  Int t;
  mpz_ui_pow_ui(t.get_mpz_t(), 10, d - 1);
  return a >= t ? d : d - 1;
}

}  // namespace weirdpq

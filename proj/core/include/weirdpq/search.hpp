#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "weirdpq/arith.hpp"

namespace weirdpq {

struct SearchConfig {
  unsigned k = 1;
  unsigned jobs = 1;
  bool emit_all = false;        // also record rejected near-misses
  bool force_large_k = false;   // permit 15 <= k <= 20
  std::size_t sieve_block_odds = std::size_t{1} << 22;
  std::uint64_t mem_limit_mb = default_mem_limit_mb();

  /// WEIRDPQ_MEM_LIMIT_MB when set, otherwise 4096.
  static std::uint64_t default_mem_limit_mb();
};

enum class PairVerdict { weird, pseudoperfect, deficient_or_perfect };

const char* to_string(PairVerdict v);

/// A representation pq = r + s*p + t*q with 1 <= r, s, t <= M.
struct RepWitness {
  std::uint64_t r = 0, s = 0, t = 0;
};

struct RejectedPair {
  WeirdTriple triple;
  RepWitness witness;
};

struct SearchReport {
  unsigned k = 0;
  std::vector<WeirdTriple> triples;  // weird only, sorted by (p, q)
  std::uint64_t count = 0;
  std::uint64_t max_a = 0;
  // max over triples of a / ((M+1)(M+2)/3), kept exact as 3*max_a / ((M+1)(M+2)).
  Int ratio_num, ratio_den;
  double max_a_ratio = 0.0;
  std::vector<RejectedPair> rejected;  // populated only with emit_all
};

/// Decides whether pq = r + s*p + t*q admits a solution with positive
/// r, s, t <= M. Requires M < p < q. Scans t ascending; the first witness is
/// stored in *w when given. O(M) time.
bool is_representable(std::uint64_t p, std::uint64_t q, std::uint64_t M,
                      RepWitness* w = nullptr);

/// Arbitrary-precision route of the same decision (reference / huge inputs).
/// The scan is only attempted when a >= p; for a < p no representation can
/// exist and the answer is immediate.
bool is_representable(const Int& p, const Int& q, const Int& M);

/// Classifies the candidate 2^k*p*q without subset-sum work:
/// deficient_or_perfect when a <= 0; pseudoperfect when a <= M or p <= M;
/// otherwise weird iff not representable. Throws for invalid prime pairs.
PairVerdict verify_weird_pair(unsigned k, std::uint64_t p, std::uint64_t q);

/// Same contract on arbitrary-precision values. p and q must be probable
/// primes per the 2,3,5,7 strong screen at minimum; callers own primality.
PairVerdict verify_weird_pair(unsigned k, const Int& p, const Int& q);

/// Enumerates every weird 2^k*p*q for the configured k. Candidates are driven
/// by d with p = M + 2d prime and e > d with 4de < M^2 and q = M + 2e prime;
/// the abundance is recovered as a = M(M+1) - 4de. The report is identical
/// for any worker count.
SearchReport search_k(const SearchConfig& cfg);

/// Identical enumeration with all pair arithmetic done in arbitrary
/// precision; exists to check the fixed-width fast path.
SearchReport search_k_reference(const SearchConfig& cfg);

/// True iff every triple satisfies a < (M+1)(M+2)/3 strictly.
bool check_conjecture(const SearchReport& report);

namespace detail {

/// Shared read-only primality bitmap over odd values in [3, limit].
class OddSieve {
 public:
  OddSieve(std::uint64_t limit, std::size_t block_odds, unsigned jobs,
           std::uint64_t mem_limit_mb);

  bool is_prime(std::uint64_t n) const {
    return (words_[(n >> 1) >> 6] >> ((n >> 1) & 63)) & 1;
  }
  std::uint64_t limit() const { return limit_; }

 private:
  std::uint64_t limit_;
  std::vector<std::uint64_t> words_;
};

}  // namespace detail

}  // namespace weirdpq

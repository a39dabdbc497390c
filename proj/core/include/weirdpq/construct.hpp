#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "weirdpq/arith.hpp"
#include "weirdpq/lucas.hpp"

namespace weirdpq {

inline constexpr std::array<unsigned, 8> kDivisorsOf24 = {1, 2, 3, 4, 6, 8, 12, 24};

/// One instance of the k = 24j construction: 2^k - 1 is split algebraically
/// as u*v over a subset partition A | B of the divisors of 24, and
/// p = M + 2^(i+1) u, q = M + 2^(k-i+1) v for some 0 <= i <= k. Candidates
/// are kept in the canonical orientation p < q.
struct CycloCandidate {
  unsigned j = 0;
  unsigned k = 0;  // 24 * j
  unsigned i = 0;
  std::vector<unsigned> A, B;  // sorted divisor lists, A on the p side
  Int u, v;
  Int M;  // 2^(k+1) - 1
  Int p, q;
};

/// Evaluates the order-d cyclotomic polynomial at x for d | 24.
Int cyclotomic_value(unsigned d, const Int& x);

/// Exact consistency of a candidate: the subset products, u*v = 2^k - 1, and
/// the identity ((p-M)/2)((q-M)/2) = 2^k (2^k - 1).
bool candidate_consistent(const CycloCandidate& c);

/// Optional restriction of the enumeration. The filters accept a candidate
/// when either its own (i, A) matches or the mirrored (k - i, B) does, so a
/// pair can be selected by whichever orientation a reference lists it in.
struct EnumFilter {
  std::optional<std::pair<unsigned, unsigned>> i_range;  // inclusive
  std::optional<std::vector<unsigned>> subset;

  static EnumFilter at(unsigned i) {
    EnumFilter f;
    f.i_range = {i, i};
    return f;
  }
};

/// Streams all candidates for level j in (i, A) order, deduplicated by the
/// unordered value pair {p, q}. Return false from the sink to stop early.
void for_each_candidate(unsigned j, const EnumFilter& filter,
                        const std::function<bool(CycloCandidate&&)>& sink);

/// Materialized convenience wrapper.
std::vector<CycloCandidate> enumerate_candidates(unsigned j,
                                                 const EnumFilter& filter = {});

struct HuntBudget {
  std::uint64_t max_screened = ~std::uint64_t{0};
  std::uint64_t max_proofs = ~std::uint64_t{0};
};

struct HuntFind {
  CycloCandidate candidate;
  PrimalityCertificate cert_p, cert_q;
};

struct HuntResult {
  std::vector<HuntFind> finds;
  std::uint64_t screened = 0;
  std::uint64_t proofs_attempted = 0;
  bool budget_exhausted = false;
};

/// Screens every candidate pair (small-prime trial division, then the
/// four-base strong screen) and runs full proofs when both members survive;
/// returns the pairs with two proved_prime certificates. Every candidate is
/// checked for a = M + 1 = 2^(k+1) via the closed-form abundance before any
/// primality work.
HuntResult hunt(unsigned j, const HuntBudget& budget = {},
                const EnumFilter& filter = {}, unsigned jobs = 1);

}  // namespace weirdpq

#include "weirdpq/construct.hpp"

#include <algorithm>
#include <atomic>
#include <mutex>
#include <set>
#include <stdexcept>
#include <thread>

#include "weirdpq/search.hpp"

namespace weirdpq {

Int cyclotomic_value(unsigned d, const Int& x) {
  if (x < 2) throw std::invalid_argument("cyclotomic_value requires x >= 2");
  const Int x2 = x * x;
  switch (d) {
    case 1: return x - 1;
    case 2: return x + 1;
    case 3: return x2 + x + 1;
    case 4: return x2 + 1;
    case 6: return x2 - x + 1;
    case 8: return x2 * x2 + 1;
    case 12: return x2 * x2 - x2 + 1;
    case 24: {
      const Int x4 = x2 * x2;
      return x4 * x4 - x4 + 1;
    }
    default:
      throw std::invalid_argument("d must divide 24");
  }
}

bool candidate_consistent(const CycloCandidate& c) {
  if (c.k != 24 * c.j || c.i > c.k) return false;
  const Int x = pow2(c.j);
  Int u = 1, v = 1;
  for (unsigned d : c.A) u *= cyclotomic_value(d, x);
  for (unsigned d : c.B) v *= cyclotomic_value(d, x);
  if (u != c.u || v != c.v) return false;
  const Int mersenne_k = pow2(c.k) - 1;
  if (c.u * c.v != mersenne_k) return false;
  if (c.M != 2 * mersenne_k + 1) return false;
  if (c.p != c.M + (c.u << (c.i + 1))) return false;
  if (c.q != c.M + (c.v << (c.k - c.i + 1))) return false;
  // ((p - M)/2) * ((q - M)/2) = 2^k (2^k - 1)
  const Int lhs = ((c.p - c.M) >> 1) * ((c.q - c.M) >> 1);
  return lhs == pow2(c.k) * mersenne_k;
}

namespace {

std::vector<unsigned> subset_of_mask(unsigned mask) {
  std::vector<unsigned> out;
  for (unsigned b = 0; b < 8; ++b)
    if (mask >> b & 1) out.push_back(kDivisorsOf24[b]);
  return out;
}

bool filter_matches(const EnumFilter& filter, unsigned k, unsigned i,
                    const std::vector<unsigned>& A, const std::vector<unsigned>& B) {
  if (!filter.i_range && !filter.subset) return true;
  auto matches = [&](unsigned ii, const std::vector<unsigned>& side) {
    if (filter.i_range && (ii < filter.i_range->first || ii > filter.i_range->second))
      return false;
    if (filter.subset && *filter.subset != side) return false;
    return true;
  };
  return matches(i, A) || matches(k - i, B);
}

}  // namespace

void for_each_candidate(unsigned j, const EnumFilter& filter,
                        const std::function<bool(CycloCandidate&&)>& sink) {
  if (j < 1) throw std::invalid_argument("j must be >= 1");
  const unsigned k = 24 * j;
  const Int x = pow2(j);

  std::array<Int, 8> phi;
  for (unsigned b = 0; b < 8; ++b) phi[b] = cyclotomic_value(kDivisorsOf24[b], x);

  std::array<Int, 256> u_of_mask;
  for (unsigned mask = 0; mask < 256; ++mask) {
    Int u = 1;
    for (unsigned b = 0; b < 8; ++b)
      if (mask >> b & 1) u *= phi[b];
    u_of_mask[mask] = u;
  }

  const Int M = pow2(k + 1) - 1;
  std::set<std::pair<Int, Int>> seen;  // distinct masks can alias (e.g. j = 1)
  for (unsigned i = 0; i <= k; ++i) {
    for (unsigned mask = 0; mask < 256; ++mask) {
      const unsigned comask = 0xffu & ~mask;
      const Int& u = u_of_mask[mask];
      const Int& v = u_of_mask[comask];
      const Int p = M + (u << (i + 1));
      const Int q = M + (v << (k - i + 1));
      if (p >= q) continue;  // the mirrored (comask, k-i) pass emits this pair
      auto A = subset_of_mask(mask);
      auto B = subset_of_mask(comask);
      if (!filter_matches(filter, k, i, A, B)) continue;
      if (!seen.emplace(p, q).second) continue;
      CycloCandidate c;
      c.j = j;
      c.k = k;
      c.i = i;
      c.A = std::move(A);
      c.B = std::move(B);
      c.u = u;
      c.v = v;
      c.M = M;
      c.p = p;
      c.q = q;
      if (!sink(std::move(c))) return;
    }
  }
}

std::vector<CycloCandidate> enumerate_candidates(unsigned j, const EnumFilter& filter) {
  std::vector<CycloCandidate> out;
  for_each_candidate(j, filter, [&](CycloCandidate&& c) {
    out.push_back(std::move(c));
    return true;
  });
  return out;
}

namespace {

const std::vector<std::uint64_t>& small_primes() {
  static const std::vector<std::uint64_t> primes = [] {
    std::vector<std::uint64_t> out;
    std::vector<char> s(100'000, 1);
    for (std::uint64_t i = 2; i < s.size(); ++i) {
      if (!s[i]) continue;
      out.push_back(i);
      for (std::uint64_t m = i * i; m < s.size(); m += i) s[m] = 0;
    }
    return out;
  }();
  return primes;
}

// Cheap screening gauntlet: divisibility by primes below 10^5, then the
// four-base strong screen. Full Lucas proofs dominate the cost and run last.
bool survives_screen(const Int& n) {
  for (std::uint64_t pr : small_primes()) {
    if (mpz_divisible_ui_p(n.get_mpz_t(), static_cast<unsigned long>(pr)))
      return n == pr;
  }
  return screen(n);
}

}  // namespace

HuntResult hunt(unsigned j, const HuntBudget& budget, const EnumFilter& filter,
                unsigned jobs) {
  if (jobs == 0) jobs = std::thread::hardware_concurrency();
  if (jobs == 0) jobs = 1;
  HuntResult result;

  struct Item {
    CycloCandidate cand;
    PrimalityCertificate cert_p, cert_q;
    bool proved = false;
  };

  const unsigned k = 24 * j;
  const Int expected_a = pow2(k + 1);  // a = M + 1 by construction

  std::vector<Item> chunk;  // bounded in-flight window; candidates can be huge
  chunk.reserve(4 * jobs);

  auto flush = [&] {
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto work = [&] {
      try {
        for (;;) {
          const std::size_t idx = next.fetch_add(1, std::memory_order_relaxed);
          if (idx >= chunk.size()) return;
          Item& item = chunk[idx];
          const CycloCandidate& c = item.cand;
          if (!candidate_consistent(c))
            throw std::logic_error("inconsistent cyclotomic candidate");
          if (abundance_2kpq(c.k, c.p, c.q) != expected_a)
            throw std::logic_error("constructed candidate without a = M + 1");
          if (!survives_screen(c.p)) {
            item.cert_p.n = c.p;
            item.cert_p.status = ProofStatus::screen_failed;
            continue;
          }
          if (!survives_screen(c.q)) {
            item.cert_q.n = c.q;
            item.cert_q.status = ProofStatus::screen_failed;
            continue;
          }
          item.cert_p = prove(c.p);
          item.cert_q = prove(c.q);
          item.proved = true;
        }
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
      }
    };
    if (jobs <= 1 || chunk.size() <= 1) {
      work();
    } else {
      std::vector<std::thread> pool;
      const unsigned n = std::min<unsigned>(jobs, static_cast<unsigned>(chunk.size()));
      for (unsigned t = 0; t < n; ++t) pool.emplace_back(work);
      for (auto& th : pool) th.join();
    }
    if (error) std::rethrow_exception(error);
    for (Item& item : chunk) {
      if (item.proved) ++result.proofs_attempted;
      if (item.cert_p.status == ProofStatus::proved_prime &&
          item.cert_q.status == ProofStatus::proved_prime) {
        // Both prime and a = M + 1 < p: weird with no further search.
        if (verify_weird_pair(item.cand.k, item.cand.p, item.cand.q) !=
            PairVerdict::weird)
          throw std::logic_error("proved pair is not weird");
        result.finds.push_back(
            HuntFind{std::move(item.cand), std::move(item.cert_p), std::move(item.cert_q)});
      }
    }
    chunk.clear();
  };

  for_each_candidate(j, filter, [&](CycloCandidate&& c) {
    if (result.screened >= budget.max_screened ||
        result.proofs_attempted >= budget.max_proofs) {
      result.budget_exhausted = true;
      return false;
    }
    ++result.screened;
    chunk.push_back(Item{std::move(c), {}, {}, false});
    if (chunk.size() >= 4 * jobs) flush();
    return true;
  });
  if (!chunk.empty()) flush();
  if (result.proofs_attempted > budget.max_proofs) result.budget_exhausted = true;
  return result;
}

}  // namespace weirdpq

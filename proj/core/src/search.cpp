#include "weirdpq/search.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <thread>

namespace weirdpq {

std::uint64_t SearchConfig::default_mem_limit_mb() {
  if (const char* env = std::getenv("WEIRDPQ_MEM_LIMIT_MB")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end && *end == '\0' && v > 0) return v;
  }
  return 4096;
}

const char* to_string(PairVerdict v) {
  switch (v) {
    case PairVerdict::weird: return "weird";
    case PairVerdict::pseudoperfect: return "pseudoperfect";
    case PairVerdict::deficient_or_perfect: return "deficient_or_perfect";
  }
  return "?";
}

namespace detail {

OddSieve::OddSieve(std::uint64_t limit, std::size_t block_odds, unsigned jobs,
                   std::uint64_t mem_limit_mb)
    : limit_(limit) {
  if (limit < 3) throw std::invalid_argument("sieve limit too small");
  const std::uint64_t odd_count = limit / 2 + 1;  // values 1, 3, ..., <= limit
  const std::uint64_t words = (odd_count + 63) / 64;
  const std::uint64_t bytes = words * 8;
  if (bytes > mem_limit_mb * (std::uint64_t{1} << 20))
    throw std::runtime_error("sieve bitmap of " + std::to_string(bytes >> 20) +
                             " MiB exceeds the WEIRDPQ_MEM_LIMIT_MB guard (" +
                             std::to_string(mem_limit_mb) + " MiB)");
  words_.assign(words, ~std::uint64_t{0});
  words_[0] &= ~std::uint64_t{1};  // 1 is not prime

  // Odd base primes up to sqrt(limit).
  std::uint64_t root = 1;
  while ((root + 1) * (root + 1) <= limit) ++root;
  std::vector<char> small(root + 1, 1);
  std::vector<std::uint64_t> base;
  for (std::uint64_t i = 3; i <= root; i += 2) {
    if (!small[i]) continue;
    base.push_back(i);
    for (std::uint64_t j = i * i; j <= root; j += 2 * i) small[j] = 0;
  }

  // Blocks are multiples of 64 odd values so workers touch disjoint words.
  std::uint64_t block = (block_odds + 63) / 64 * 64;
  if (block == 0) block = 64;
  const std::uint64_t nblocks = (odd_count + block - 1) / block;
  if (jobs == 0) jobs = std::thread::hardware_concurrency();
  if (jobs == 0) jobs = 1;
  jobs = static_cast<unsigned>(std::min<std::uint64_t>(jobs, nblocks));

  std::atomic<std::uint64_t> next{0};
  auto work = [&] {
    for (;;) {
      const std::uint64_t b = next.fetch_add(1, std::memory_order_relaxed);
      if (b >= nblocks) return;
      const std::uint64_t lo_idx = b * block;                      // odd index
      const std::uint64_t hi_idx = std::min(lo_idx + block, odd_count) - 1;
      const std::uint64_t lo_val = 2 * lo_idx + 1;
      const std::uint64_t hi_val = 2 * hi_idx + 1;
      for (std::uint64_t pr : base) {
        if (pr * pr > hi_val) break;
        std::uint64_t start = pr * pr;
        if (start < lo_val) {
          std::uint64_t m = (lo_val + pr - 1) / pr;
          if ((m & 1) == 0) ++m;  // odd multiples only
          start = m * pr;
        }
        for (std::uint64_t v = start; v <= hi_val; v += 2 * pr)
          words_[(v >> 1) >> 6] &= ~(std::uint64_t{1} << ((v >> 1) & 63));
      }
    }
  };
  if (jobs <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(jobs);
    for (unsigned t = 0; t < jobs; ++t) pool.emplace_back(work);
    for (auto& th : pool) th.join();
  }
}

}  // namespace detail

bool is_representable(std::uint64_t p, std::uint64_t q, std::uint64_t M,
                      RepWitness* w) {
  if (M >= p) throw std::invalid_argument("is_representable requires M < p");
  if (p >= q) throw std::invalid_argument("is_representable requires p < q");
  // For a fixed t the interval of r forces s = floor(((p-t)q - 1)/p); only
  // t >= p - (M+1)p/q can put that s inside [1, M], so the scan starts there.
  std::uint64_t t = 1;
  const std::uint64_t bound = (M + 1) * p / q;
  if (p - 1 > bound) t = p - bound;
  if (t > M) return false;

  const std::uint64_t x0 = (p - t) * q - 1;  // <= pq <= 2^(3k+3), fits for k <= 20
  std::int64_t s = static_cast<std::int64_t>(x0 / p);
  std::uint64_t u = x0 % p;
  const std::uint64_t q_div = q / p;
  const std::uint64_t q_rem = q % p;
  const auto m = static_cast<std::int64_t>(M);
  for (; t <= M; ++t) {
    if (s < 1) return false;  // s only decreases with t
    if (s <= m && u < M) {
      if (w) *w = RepWitness{u + 1, static_cast<std::uint64_t>(s), t};
      return true;
    }
    // Advance to t+1: x -= q, maintaining x = s*p + u with 0 <= u < p.
    s -= static_cast<std::int64_t>(q_div);
    if (u >= q_rem) {
      u -= q_rem;
    } else {
      u += p - q_rem;
      --s;
    }
  }
  return false;
}

bool is_representable(const Int& p, const Int& q, const Int& M) {
  if (M >= p) throw std::invalid_argument("is_representable requires M < p");
  if (p >= q) throw std::invalid_argument("is_representable requires p < q");
  Int t = 1;
  const Int bound = (M + 1) * p / q;
  if (p - 1 > bound) t = p - bound;
  for (; t <= M; ++t) {
    const Int x = (p - t) * q - 1;
    const Int s = x / p;
    if (s < 1) return false;
    if (s <= M) {
      const Int r = x % p + 1;
      if (r <= M) return true;
    }
  }
  return false;
}

PairVerdict verify_weird_pair(unsigned k, std::uint64_t p, std::uint64_t q) {
  if (k < 1 || k > 20) throw std::invalid_argument("k out of range");
  if (p >= q) throw std::invalid_argument("requires p < q");
  if (!is_prime_u64(p) || !is_prime_u64(q) || p == 2)
    throw std::invalid_argument("p and q must be odd primes");
  const std::uint64_t M = sigma_pow2_u64(k);
  const std::int64_t a = abundance_2kpq_i64(k, p, q);
  if (a <= 0) return PairVerdict::deficient_or_perfect;
  if (a <= static_cast<std::int64_t>(M) || p <= M) return PairVerdict::pseudoperfect;
  // For M < a < p, a witness pq = r + sp + tq would mean a = (M-r) + (M-s)p +
  // (M-t)q, impossible: the p and q digits must be zero yet M - r < a.
  if (static_cast<std::uint64_t>(a) < p) return PairVerdict::weird;
  return is_representable(p, q, M) ? PairVerdict::pseudoperfect : PairVerdict::weird;
}

PairVerdict verify_weird_pair(unsigned k, const Int& p, const Int& q) {
  if (k < 1) throw std::invalid_argument("k out of range");
  if (p >= q) throw std::invalid_argument("requires p < q");
  const Int M = sigma_pow2(k);
  const Int a = abundance_2kpq(k, p, q);
  if (a <= 0) return PairVerdict::deficient_or_perfect;
  if (a <= M || p <= M) return PairVerdict::pseudoperfect;
  if (a < p) return PairVerdict::weird;
  return is_representable(p, q, M) ? PairVerdict::pseudoperfect : PairVerdict::weird;
}

namespace {

void check_emitted(const WeirdTriple& t) {
  const std::uint64_t M = t.M;
  const auto a = t.a;
  const bool ok = a > static_cast<std::int64_t>(M) && t.p > M && t.p < 2 * M &&
                  a % 4 == 0 &&
                  a < static_cast<std::int64_t>(M) * static_cast<std::int64_t>(M + 1) &&
                  a == abundance_2kpq_i64(t.k, t.p, t.q);
  if (!ok) throw std::logic_error("emitted triple violates the weirdness conditions");
}

// Shared (d, e) enumeration. Verdict is computed by `weird_of(p, q, a, w)`,
// letting the fixed-width and arbitrary-precision routes differ only in the
// pair arithmetic.
template <typename WeirdFn>
SearchReport run_search(const SearchConfig& cfg, WeirdFn&& weird_of) {
  if (cfg.k < 1) throw std::invalid_argument("k must be >= 1");
  if (cfg.k > 20) throw std::invalid_argument("k > 20 is not supported");
  if (cfg.k > 14 && !cfg.force_large_k)
    throw std::invalid_argument("k > 14 requires the force flag");

  const std::uint64_t M = sigma_pow2_u64(cfg.k);
  const std::uint64_t q_max = (M + 1) * (M + 1) / 2 - 1;  // 2^(2k+1) - 1
  unsigned jobs = cfg.jobs ? cfg.jobs : std::thread::hardware_concurrency();
  if (jobs == 0) jobs = 1;

  const detail::OddSieve sieve(q_max, cfg.sieve_block_odds, jobs, cfg.mem_limit_mb);

  std::vector<std::uint64_t> d_list;
  for (std::uint64_t d = 1; 2 * d < M; ++d)
    if (sieve.is_prime(M + 2 * d)) d_list.push_back(d);

  struct Local {
    std::vector<WeirdTriple> triples;
    std::vector<RejectedPair> rejected;
  };
  std::vector<Local> locals(jobs);
  std::atomic<std::size_t> next{0};

  auto work = [&](unsigned worker) {
    Local& out = locals[worker];
    for (;;) {
      const std::size_t i = next.fetch_add(1, std::memory_order_relaxed);
      if (i >= d_list.size()) return;
      const std::uint64_t d = d_list[i];
      const std::uint64_t p = M + 2 * d;
      const std::uint64_t e_max = (M * M - 1) / (4 * d);
      for (std::uint64_t e = d + 1; e <= e_max; ++e) {
        const std::uint64_t q = M + 2 * e;
        if (!sieve.is_prime(q)) continue;
        const std::uint64_t a = M * (M + 1) - 4 * d * e;  // > M by the e bound
        WeirdTriple triple{cfg.k, p, q, M, static_cast<std::int64_t>(a)};
        RepWitness w;
        if (weird_of(p, q, a, &w)) {
          check_emitted(triple);
          out.triples.push_back(triple);
        } else if (cfg.emit_all) {
          out.rejected.push_back(RejectedPair{triple, w});
        }
      }
    }
  };

  if (jobs <= 1 || d_list.size() <= 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < jobs; ++t) pool.emplace_back(work, t);
    for (auto& th : pool) th.join();
  }

  SearchReport report;
  report.k = cfg.k;
  for (auto& l : locals) {
    report.triples.insert(report.triples.end(), l.triples.begin(), l.triples.end());
    report.rejected.insert(report.rejected.end(), l.rejected.begin(), l.rejected.end());
  }
  auto by_pq = [](const auto& x, const auto& y) {
    return std::tie(x.p, x.q) < std::tie(y.p, y.q);
  };
  std::sort(report.triples.begin(), report.triples.end(), by_pq);
  std::sort(report.rejected.begin(), report.rejected.end(),
            [&](const RejectedPair& x, const RejectedPair& y) {
              return by_pq(x.triple, y.triple);
            });
  report.count = report.triples.size();
  for (const auto& t : report.triples)
    report.max_a = std::max(report.max_a, static_cast<std::uint64_t>(t.a));
  report.ratio_num = 3 * Int(static_cast<unsigned long>(report.max_a));
  report.ratio_den = Int(static_cast<unsigned long>(M + 1)) * Int(static_cast<unsigned long>(M + 2));
  report.max_a_ratio = report.ratio_num.get_d() / report.ratio_den.get_d();
  return report;
}

}  // namespace

SearchReport search_k(const SearchConfig& cfg) {
  const std::uint64_t M = sigma_pow2_u64(cfg.k <= 20 ? cfg.k : 20);
  return run_search(cfg, [M](std::uint64_t p, std::uint64_t q, std::uint64_t a,
                             RepWitness* w) {
    if (a < p) return true;
    return !is_representable(p, q, M, w);
  });
}

SearchReport search_k_reference(const SearchConfig& cfg) {
  const Int M = sigma_pow2(cfg.k <= 20 ? cfg.k : 20);
  return run_search(cfg, [&M](std::uint64_t p, std::uint64_t q, std::uint64_t a,
                              RepWitness* w) {
    const Int pp(static_cast<unsigned long>(p));
    const Int qq(static_cast<unsigned long>(q));
    if (Int(static_cast<unsigned long>(a)) < pp) return true;
    const bool rep = is_representable(pp, qq, M);
    if (rep && w) is_representable(p, q, mpz_get_ui(M.get_mpz_t()), w);
    return !rep;
  });
}

bool check_conjecture(const SearchReport& report) {
  const Int M = sigma_pow2(report.k);
  const Int bound = (M + 1) * (M + 2);
  for (const auto& t : report.triples)
    if (3 * Int(static_cast<unsigned long>(t.a)) >= bound) return false;
  return true;
}

}  // namespace weirdpq

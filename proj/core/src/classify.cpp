#include "weirdpq/classify.hpp"

#include <algorithm>
#include <stdexcept>

namespace weirdpq {

const char* to_string(Kind k) {
  switch (k) {
    case Kind::deficient: return "deficient";
    case Kind::perfect: return "perfect";
    case Kind::pseudoperfect: return "pseudoperfect";
    case Kind::weird: return "weird";
  }
  return "?";
}

std::vector<std::uint64_t> aliquot_parts(std::uint64_t n) {
  if (n < 2) throw std::invalid_argument("aliquot_parts requires n >= 2");
  const Factorization f = factorize(n);  // enforces n <= 10^12
  std::vector<std::uint64_t> divisors{1};
  for (const auto& [prime, mult] : f.factors) {
    const std::uint64_t p = mpz_get_ui(prime.get_mpz_t());
    const std::size_t base = divisors.size();
    std::uint64_t pe = 1;
    for (unsigned e = 1; e <= mult; ++e) {
      pe *= p;
      for (std::size_t i = 0; i < base; ++i) divisors.push_back(divisors[i] * pe);
    }
  }
  std::sort(divisors.begin(), divisors.end());
  divisors.pop_back();  // drop n itself
  return divisors;
}

namespace {

// Word-parallel 0/1 subset-sum over the aliquot parts, recording for every
// value the first part that reached it (parts ascending). One pass serves
// both the reachability decision and the witness backtrack; the parent chain
// has strictly decreasing indices, so no part repeats.
struct SubsetSum {
  bool reachable = false;
  std::vector<std::uint16_t> parent;  // index into parts, 0xffff = unset
  static constexpr std::uint16_t kUnset = 0xffff;

  SubsetSum(const std::vector<std::uint64_t>& parts, std::uint64_t target) {
    const std::size_t words = target / 64 + 1;
    std::vector<std::uint64_t> reach(words, 0);
    reach[0] = 1;  // empty sum
    parent.assign(target + 1, kUnset);
    for (std::uint16_t idx = 0; idx < parts.size(); ++idx) {
      const std::uint64_t d = parts[idx];
      if (d > target) break;  // parts are ascending
      const std::size_t word_shift = d / 64;
      const unsigned bit_shift = d % 64;
      for (std::size_t i = words; i-- > word_shift;) {
        std::uint64_t v;
        if (bit_shift == 0) {
          v = reach[i - word_shift];
        } else {
          v = reach[i - word_shift] << bit_shift;
          if (i > word_shift) v |= reach[i - word_shift - 1] >> (64 - bit_shift);
        }
        std::uint64_t newly = v & ~reach[i];
        reach[i] |= v;
        while (newly) {
          const unsigned bit = static_cast<unsigned>(__builtin_ctzll(newly));
          newly &= newly - 1;
          const std::uint64_t value = i * 64 + bit;
          if (value <= target) parent[value] = idx;
        }
      }
      if ((reach[target / 64] >> (target % 64)) & 1) {
        reachable = true;
        return;
      }
    }
    reachable = (reach[target / 64] >> (target % 64)) & 1;
  }

  std::vector<std::uint64_t> witness(const std::vector<std::uint64_t>& parts,
                                     std::uint64_t target) const {
    std::vector<std::uint64_t> out;
    for (std::uint64_t v = target; v != 0;) {
      const std::uint16_t idx = parent[v];
      if (idx == kUnset) throw std::logic_error("broken subset-sum parent chain");
      out.push_back(parts[idx]);
      v -= parts[idx];
    }
    std::sort(out.begin(), out.end());
    return out;
  }
};

}  // namespace

Classification classify(std::uint64_t n) {
  if (n < 2 || n > 1'000'000)
    throw std::invalid_argument("classify supports 2 <= n <= 10^6");

  const Factorization f = factorize(n);
  const Int s = sigma(f);
  const Int a_big = s - 2 * Int(static_cast<unsigned long>(n));
  Classification c;
  c.n = n;
  c.abundance = static_cast<std::int64_t>(mpz_get_si(a_big.get_mpz_t()));
  if (c.abundance < 0) {
    c.kind = Kind::deficient;
    return c;
  }
  if (c.abundance == 0) {
    c.kind = Kind::perfect;
    return c;
  }
  if (f.factors.size() == 1) {
    // Prime powers are always deficient; abundant here is impossible.
    throw std::logic_error("abundant prime power");
  }
  const auto parts = aliquot_parts(n);
  const auto target = static_cast<std::uint64_t>(c.abundance);
  const SubsetSum dp(parts, target);
  if (dp.reachable) {
    c.kind = Kind::pseudoperfect;
    c.witness = dp.witness(parts, target);
  } else {
    c.kind = Kind::weird;
  }
  return c;
}

bool is_primitive_weird(std::uint64_t n) {
  const Classification c = classify(n);
  if (c.kind != Kind::weird) return false;
  for (std::uint64_t d : aliquot_parts(n)) {
    if (d < 2) continue;
    if (classify(d).kind == Kind::weird) return false;
  }
  return true;
}

}  // namespace weirdpq

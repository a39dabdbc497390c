#include <doctest.h>

#include <algorithm>

#include "oracles.hpp"
#include "weirdpq/classify.hpp"

using weirdpq::Kind;

namespace {

bool witness_verifies(const weirdpq::Classification& c) {
  if (c.witness.empty()) return false;
  std::uint64_t sum = 0;
  auto sorted = c.witness;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    if (i && sorted[i] == sorted[i - 1]) return false;  // must be distinct
    if (sorted[i] >= c.n || c.n % sorted[i]) return false;
    sum += sorted[i];
  }
  return sum == static_cast<std::uint64_t>(c.abundance);
}

}  // namespace

TEST_CASE("aliquot part listings") {
  CHECK(weirdpq::aliquot_parts(70) ==
        std::vector<std::uint64_t>{1, 2, 5, 7, 10, 14, 35});
  CHECK(weirdpq::aliquot_parts(8) == std::vector<std::uint64_t>{1, 2, 4});
  CHECK(weirdpq::aliquot_parts(97) == std::vector<std::uint64_t>{1});
  CHECK_THROWS_AS(weirdpq::aliquot_parts(1), std::invalid_argument);
  CHECK_THROWS_AS(weirdpq::aliquot_parts(1'000'000'000'001ull), std::invalid_argument);
}

TEST_CASE("ground-truth classifications") {
  CHECK(weirdpq::classify(70).kind == Kind::weird);
  CHECK(weirdpq::classify(836).kind == Kind::weird);
  CHECK(weirdpq::classify(28).kind == Kind::perfect);
  const auto c = weirdpq::classify(2584);  // 2^3 * 17 * 19, a = 232
  CHECK(c.kind == Kind::pseudoperfect);
  CHECK(c.abundance == 232);
  CHECK(witness_verifies(c));
  CHECK_THROWS_AS(weirdpq::classify(1), std::invalid_argument);
  CHECK_THROWS_AS(weirdpq::classify(1'000'001), std::invalid_argument);
}

TEST_CASE("primitivity checks") {
  CHECK(weirdpq::is_primitive_weird(70));
  CHECK(weirdpq::is_primitive_weird(836));
  CHECK_FALSE(weirdpq::is_primitive_weird(9590));
  // 9590 = 2 * 5 * 7 * 137 is abundant but pseudoperfect (685 + 7 = a = 692),
  // so it fails primitivity at the first hurdle.
  const auto c = weirdpq::classify(9590);
  CHECK(c.kind == Kind::pseudoperfect);
  CHECK(c.abundance == 692);
  CHECK(witness_verifies(c));
  CHECK_FALSE(weirdpq::is_primitive_weird(28));
}

TEST_CASE("classification agrees with brute force below 3000") {
  for (std::uint64_t n = 2; n <= 3000; ++n) {
    const auto c = weirdpq::classify(n);
    const std::uint64_t s = oracles::sigma_by_enumeration(n);
    const std::int64_t a = static_cast<std::int64_t>(s) - 2 * static_cast<std::int64_t>(n);
    CHECK(c.abundance == a);
    if (a < 0) {
      CHECK(c.kind == Kind::deficient);
    } else if (a == 0) {
      CHECK(c.kind == Kind::perfect);
    } else {
      const auto parts = oracles::divisors_below(n);
      const bool reachable =
          oracles::subset_sum_exists(parts, static_cast<std::uint64_t>(a));
      CHECK(c.kind == (reachable ? Kind::pseudoperfect : Kind::weird));
    }
  }
}

TEST_CASE("pseudoperfect witnesses verify for all n up to 10^4") {
  for (std::uint64_t n = 2; n <= 10'000; ++n) {
    const auto c = weirdpq::classify(n);
    if (c.kind == Kind::pseudoperfect) {
      CHECK(witness_verifies(c));
    } else {
      CHECK(c.witness.empty());
    }
  }
}

TEST_CASE("2^k p^m is never weird") {
  for (unsigned k = 1; k <= 16; ++k) {
    const std::uint64_t pk = std::uint64_t{1} << k;
    for (std::uint64_t p = 3; pk * p <= 100'000; p += 2) {
      if (!oracles::trial_division_is_prime(p)) continue;
      for (std::uint64_t pm = p; pk * pm <= 100'000; pm *= p) {
        const auto c = weirdpq::classify(pk * pm);
        CHECK(c.kind != Kind::weird);
      }
    }
  }
}

TEST_CASE("prime powers are deficient") {
  for (std::uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull}) {
    for (std::uint64_t pe = p; pe <= 1'000'000; pe *= p)
      CHECK(weirdpq::classify(pe).kind == Kind::deficient);
  }
}

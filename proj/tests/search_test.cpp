#include <doctest.h>

#include <map>
#include <set>

#include "oracles.hpp"
#include "weirdpq/classify.hpp"
#include "weirdpq/report.hpp"
#include "weirdpq/search.hpp"

using weirdpq::PairVerdict;
using weirdpq::SearchConfig;

namespace {

SearchConfig cfg_for(unsigned k, unsigned jobs = 1) {
  SearchConfig cfg;
  cfg.k = k;
  cfg.jobs = jobs;
  return cfg;
}

std::set<std::pair<std::uint64_t, std::uint64_t>> pairs_of(
    const weirdpq::SearchReport& r) {
  std::set<std::pair<std::uint64_t, std::uint64_t>> out;
  for (const auto& t : r.triples) out.emplace(t.p, t.q);
  return out;
}

}  // namespace

TEST_CASE("is_representable decisions and witnesses") {
  CHECK_FALSE(weirdpq::is_representable(5, 7, 3));  // 70 is weird
  weirdpq::RepWitness w{};
  CHECK(weirdpq::is_representable(17, 19, 15, &w));
  CHECK(w.r + w.s * 17 + w.t * 19 == 17 * 19);
  CHECK(w.r >= 1);
  CHECK(w.r <= 15);
  CHECK(w.s >= 1);
  CHECK(w.s <= 15);
  CHECK(w.t >= 1);
  CHECK(w.t <= 15);
  CHECK_FALSE(weirdpq::is_representable(19, 61, 15));
  CHECK_THROWS_AS(weirdpq::is_representable(3, 7, 3), std::invalid_argument);
}

TEST_CASE("is_representable agrees with exhaustive enumeration") {
  // Brute force over all (r, s, t) in [1, M]^3 for small parameter ranges.
  for (std::uint64_t M : {3ull, 7ull, 15ull}) {
    for (std::uint64_t p = M + 2; p < 4 * M; p += 2) {
      if (!oracles::trial_division_is_prime(p)) continue;
      for (std::uint64_t q = p + 2; q < 6 * M * M; q += 2) {
        if (!oracles::trial_division_is_prime(q)) continue;
        bool brute = false;
        for (std::uint64_t t = 1; t <= M && !brute; ++t)
          for (std::uint64_t s = 1; s <= M && !brute; ++s) {
            const std::uint64_t partial = s * p + t * q;
            if (partial < p * q && p * q - partial <= M) brute = true;
          }
        CHECK(weirdpq::is_representable(p, q, M) == brute);
        // The arbitrary-precision route must agree as well.
        CHECK(weirdpq::is_representable(weirdpq::Int(static_cast<unsigned long>(p)),
                                        weirdpq::Int(static_cast<unsigned long>(q)),
                                        weirdpq::Int(static_cast<unsigned long>(M))) ==
              brute);
      }
    }
  }
}

TEST_CASE("verify_weird_pair verdicts") {
  CHECK(weirdpq::verify_weird_pair(1, 5, 7) == PairVerdict::weird);
  CHECK(weirdpq::verify_weird_pair(5, 67, 887) == PairVerdict::weird);
  CHECK(weirdpq::verify_weird_pair(2, 11, 23) == PairVerdict::deficient_or_perfect);
  CHECK(weirdpq::verify_weird_pair(3, 17, 19) == PairVerdict::pseudoperfect);
  CHECK_THROWS_AS(weirdpq::verify_weird_pair(1, 9, 11), std::invalid_argument);
  CHECK_THROWS_AS(weirdpq::verify_weird_pair(1, 7, 5), std::invalid_argument);
}

TEST_CASE("search matches the published small rows") {
  const auto r1 = weirdpq::search_k(cfg_for(1));
  CHECK(r1.count == 1);
  CHECK(pairs_of(r1) == std::set<std::pair<std::uint64_t, std::uint64_t>>{{5, 7}});

  const auto r2 = weirdpq::search_k(cfg_for(2));
  CHECK(pairs_of(r2) == std::set<std::pair<std::uint64_t, std::uint64_t>>{{11, 19}});

  const auto r3 = weirdpq::search_k(cfg_for(3));
  CHECK(pairs_of(r3) == std::set<std::pair<std::uint64_t, std::uint64_t>>{
                            {19, 61}, {17, 127}, {19, 71}, {23, 43}, {29, 31}});

  const auto r4 = weirdpq::search_k(cfg_for(4));
  CHECK(pairs_of(r4) == std::set<std::pair<std::uint64_t, std::uint64_t>>{
                            {43, 107}, {37, 191}, {41, 127}});
}

TEST_CASE("search counts for k up to 8") {
  for (unsigned k = 1; k <= 8; ++k) {
    const auto report = weirdpq::search_k(cfg_for(k));
    CHECK(report.count == weirdpq::expected_counts().at(k));
  }
}

TEST_CASE("emitted triples satisfy the structural conditions") {
  for (unsigned k = 1; k <= 7; ++k) {
    const auto report = weirdpq::search_k(cfg_for(k));
    const std::uint64_t M = weirdpq::sigma_pow2_u64(k);
    for (const auto& t : report.triples) {
      CHECK(t.a > static_cast<std::int64_t>(M));
      CHECK(t.p > M);
      CHECK(t.p < 2 * M);
      CHECK(t.a % 4 == 0);
      CHECK(t.a < static_cast<std::int64_t>(M * (M + 1)));
      CHECK(t.a == weirdpq::abundance_2kpq_i64(k, t.p, t.q));
      CHECK(weirdpq::verify_weird_pair(k, t.p, t.q) == PairVerdict::weird);
    }
  }
}

TEST_CASE("fixed-width and arbitrary-precision searches are identical") {
  for (unsigned k = 1; k <= 5; ++k) {
    const auto fast = weirdpq::search_k(cfg_for(k));
    const auto reference = weirdpq::search_k_reference(cfg_for(k));
    REQUIRE(fast.triples.size() == reference.triples.size());
    for (std::size_t i = 0; i < fast.triples.size(); ++i)
      CHECK(fast.triples[i] == reference.triples[i]);
  }
}

TEST_CASE("reports are deterministic across worker counts") {
  for (unsigned k : {4u, 6u, 8u}) {
    const auto one = weirdpq::search_k(cfg_for(k, 1));
    const auto two = weirdpq::search_k(cfg_for(k, 2));
    const auto eight = weirdpq::search_k(cfg_for(k, 8));
    const auto s1 = weirdpq::search_report_to_jsonl(one, false);
    CHECK(s1 == weirdpq::search_report_to_jsonl(two, false));
    CHECK(s1 == weirdpq::search_report_to_jsonl(eight, false));
  }
}

TEST_CASE("emit_all records verifying witnesses") {
  SearchConfig cfg = cfg_for(3);
  cfg.emit_all = true;
  const auto report = weirdpq::search_k(cfg);
  CHECK(report.rejected.size() > 0);
  for (const auto& r : report.rejected) {
    const auto& t = r.triple;
    const auto& w = r.witness;
    CHECK(w.r >= 1);
    CHECK(w.r <= t.M);
    CHECK(w.s >= 1);
    CHECK(w.s <= t.M);
    CHECK(w.t >= 1);
    CHECK(w.t <= t.M);
    CHECK(w.r + w.s * t.p + w.t * t.q == t.p * t.q);
  }
}

TEST_CASE("search agrees with the subset-sum classifier") {
  // Every weird pair found for k <= 6 must classify as weird, and every
  // n = 2^k p q within the classifier's range must agree in both directions.
  for (unsigned k = 1; k <= 6; ++k) {
    const std::uint64_t pk = std::uint64_t{1} << k;
    const auto report = weirdpq::search_k(cfg_for(k));
    std::set<std::pair<std::uint64_t, std::uint64_t>> found = pairs_of(report);
    for (const auto& [p, q] : found)
      if (pk * p * q <= 1'000'000)
        CHECK(weirdpq::classify(pk * p * q).kind == weirdpq::Kind::weird);
    // Converse: classifier-weird pairs must be in the report.
    for (std::uint64_t p = 3; pk * p * p <= 1'000'000; p += 2) {
      if (!oracles::trial_division_is_prime(p)) continue;
      for (std::uint64_t q = p + 2; pk * p * q <= 1'000'000; q += 2) {
        if (!oracles::trial_division_is_prime(q)) continue;
        if (weirdpq::classify(pk * p * q).kind == weirdpq::Kind::weird)
          CHECK(found.count({p, q}) == 1);
      }
    }
  }
}

TEST_CASE("conjectured abundance bound") {
  const auto r1 = weirdpq::search_k(cfg_for(1));
  CHECK(weirdpq::check_conjecture(r1));  // a = 4 against 20/3
  CHECK(r1.max_a == 4);
  CHECK(r1.ratio_num == 12);
  CHECK(r1.ratio_den == 20);

  const auto r3 = weirdpq::search_k(cfg_for(3));
  CHECK(weirdpq::check_conjecture(r3));
  CHECK(r3.max_a == 56);

  // Injected violation: a = M(M+1) - 4 with k = 3 exceeds the bound.
  weirdpq::SearchReport tampered = r3;
  tampered.triples.push_back(weirdpq::WeirdTriple{3, 17, 19, 15, 15 * 16 - 4});
  CHECK_FALSE(weirdpq::check_conjecture(tampered));
}

TEST_CASE("search configuration guards") {
  SearchConfig cfg = cfg_for(0);
  CHECK_THROWS_AS(weirdpq::search_k(cfg), std::invalid_argument);
  cfg.k = 15;
  CHECK_THROWS_AS(weirdpq::search_k(cfg), std::invalid_argument);  // needs force
  cfg.k = 21;
  cfg.force_large_k = true;
  CHECK_THROWS_AS(weirdpq::search_k(cfg), std::invalid_argument);
  cfg.k = 12;
  cfg.force_large_k = false;
  cfg.mem_limit_mb = 1;  // 2^25 odd values do not fit in 1 MiB
  CHECK_THROWS_AS(weirdpq::search_k(cfg), std::runtime_error);
}

#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "weirdpq/construct.hpp"
#include "weirdpq/search.hpp"

namespace weirdpq {

/// Published number of weird 2^k p q per exponent, k = 1..14.
const std::map<unsigned, std::uint64_t>& expected_counts();

/// A published (p, q) row with its source annotation.
struct PublishedRow {
  unsigned k;
  std::uint64_t p, q;
  const char* cite;
};

/// The published rows for k <= 5 (the larger exponents are checked by count).
const std::vector<PublishedRow>& published_rows();

struct VerifyTablesResult {
  struct PerK {
    unsigned k = 0;
    std::uint64_t expected = 0;
    std::uint64_t actual = 0;
    bool pass = false;
    // Row-level symmetric difference where reference rows exist (k <= 5).
    std::vector<std::pair<std::uint64_t, std::uint64_t>> missing;  // expected, absent
    std::vector<std::pair<std::uint64_t, std::uint64_t>> extra;    // found, unexpected
  };
  std::vector<PerK> per_k;
  bool all_pass = true;
};

/// Runs search_k for every k <= max_k and compares counts (and rows where
/// available) against `expected`.
VerifyTablesResult verify_tables(unsigned max_k, const SearchConfig& base,
                                 const std::map<unsigned, std::uint64_t>& expected =
                                     expected_counts());

/// FNV-1a 64-bit content hash, used as the run-record digest.
std::uint64_t fnv1a64(std::string_view data);
std::string fnv1a64_hex(std::string_view data);

struct RunRecord {
  std::string command;
  std::string config;      // flat JSON of the effective configuration
  std::string started;     // ISO 8601 UTC
  std::string finished;
  std::string out_path;
  std::string digest;      // fnv1a64 of the emitted JSONL
};

std::string iso8601_utc_now();
std::string run_record_to_json(const RunRecord& r);

/// One line per triple: {"k":...,"p":...,"q":...,"a":...}\n in (p, q) order.
/// With rejected lines included, each carries "verdict" and the witness.
std::string search_report_to_jsonl(const SearchReport& report, bool include_rejected);

/// One line per find: parameters, decimal p and q, digit counts, and both
/// certificates inline.
std::string hunt_finds_to_jsonl(const HuntResult& result);

}  // namespace weirdpq

#pragma once

#include <cstdint>
#include <vector>

#include "weirdpq/arith.hpp"

namespace weirdpq {

enum class Kind { deficient, perfect, pseudoperfect, weird };

const char* to_string(Kind k);

/// Verdict for an arbitrary integer, with a verifying witness when
/// pseudoperfect: a subset of aliquot parts summing to the abundance.
struct Classification {
  std::uint64_t n = 0;
  Kind kind = Kind::deficient;
  std::int64_t abundance = 0;
  std::vector<std::uint64_t> witness;  // nonempty iff kind == pseudoperfect
};

/// All divisors of n strictly less than n, ascending. Supports 2 <= n <= 10^12.
std::vector<std::uint64_t> aliquot_parts(std::uint64_t n);

/// Ground-truth classification by subset-sum reachability of a(n) within the
/// aliquot parts (n is pseudoperfect iff abundant and a(n) is reachable).
/// Supports 2 <= n <= 10^6.
Classification classify(std::uint64_t n);

/// True iff n is weird and no aliquot part of n is weird.
bool is_primitive_weird(std::uint64_t n);

}  // namespace weirdpq

// weirdpq: enumeration, classification, construction, and certification of
// weird numbers of the form 2^k * p * q.

#include <algorithm>
#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "weirdpq/classify.hpp"
#include "weirdpq/construct.hpp"
#include "weirdpq/lucas.hpp"
#include "weirdpq/report.hpp"
#include "weirdpq/search.hpp"

namespace {

using weirdpq::Int;

constexpr int kExitOk = 0;
constexpr int kExitMismatch = 1;
constexpr int kExitUsage = 2;

// Parses a decimal integer or a small expression such as "2^241+2^158*3-1"
// (operators + - * and ^ on nonnegative integers, ^ binding tightest).
class IntExpr {
 public:
  explicit IntExpr(std::string_view text) : text_(text) {}

  Int parse() {
    Int v = sum();
    skip_ws();
    if (pos_ != text_.size()) throw std::invalid_argument("trailing characters");
    return v;
  }

 private:
  Int sum() {
    Int v = product();
    for (;;) {
      skip_ws();
      if (peek() == '+') {
        ++pos_;
        v += product();
      } else if (peek() == '-') {
        ++pos_;
        v -= product();
      } else {
        return v;
      }
    }
  }
  Int product() {
    Int v = power();
    for (;;) {
      skip_ws();
      if (peek() != '*') return v;
      ++pos_;
      v *= power();
    }
  }
  Int power() {
    Int base = number();
    skip_ws();
    if (peek() != '^') return base;
    ++pos_;
    const Int e = number();
    if (e < 0 || e > 1'000'000) throw std::invalid_argument("exponent out of range");
    Int r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), mpz_get_ui(e.get_mpz_t()));
    return r;
  }
  Int number() {
    skip_ws();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
    if (pos_ == start) throw std::invalid_argument("expected a number");
    return Int(std::string(text_.substr(start, pos_ - start)));
  }
  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }
  void skip_ws() {
    while (pos_ < text_.size() && text_[pos_] == ' ') ++pos_;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

std::string config_json(const weirdpq::SearchConfig& cfg) {
  nlohmann::ordered_json j;
  j["k"] = cfg.k;
  j["jobs"] = cfg.jobs;
  j["emit_all"] = cfg.emit_all;
  j["force_large_k"] = cfg.force_large_k;
  j["sieve_block_odds"] = cfg.sieve_block_odds;
  j["mem_limit_mb"] = cfg.mem_limit_mb;
  return j.dump();
}

int write_output(const std::string& payload, const std::string& out_path) {
  if (out_path.empty()) {
    std::fputs(payload.c_str(), stdout);
    return kExitOk;
  }
  std::ofstream f(out_path, std::ios::binary);
  if (!f) {
    std::cerr << "error: cannot open " << out_path << " for writing\n";
    return kExitMismatch;
  }
  f << payload;
  if (!f.good()) {
    std::cerr << "error: short write to " << out_path << "\n";
    return kExitMismatch;
  }
  return kExitOk;
}

int cmd_search(const weirdpq::SearchConfig& cfg, const std::string& out_path) {
  weirdpq::RunRecord record;
  record.command = "search";
  record.config = config_json(cfg);
  record.started = weirdpq::iso8601_utc_now();
  if (cfg.k > 14) {
    // Cost grows roughly 16x per unit of k beyond the published range.
    std::cerr << "note: k=" << cfg.k << " is beyond the verified range; expect a "
              << "sieve of " << ((std::uint64_t{1} << (2 * cfg.k - 3)) >> 20)
              << " MiB and a long scan\n";
  }
  const weirdpq::SearchReport report = weirdpq::search_k(cfg);
  const std::string payload = weirdpq::search_report_to_jsonl(report, cfg.emit_all);
  const int rc = write_output(payload, out_path);
  if (rc != kExitOk) return rc;
  record.finished = weirdpq::iso8601_utc_now();
  record.out_path = out_path;
  record.digest = weirdpq::fnv1a64_hex(payload);
  std::printf("k=%u count=%" PRIu64 " conjecture6=%s\n", report.k, report.count,
              weirdpq::check_conjecture(report) ? "holds" : "violated");
  if (!out_path.empty()) std::puts(weirdpq::run_record_to_json(record).c_str());
  return kExitOk;
}

int cmd_verify_tables(unsigned max_k, const weirdpq::SearchConfig& base) {
  const auto result = weirdpq::verify_tables(max_k, base);
  std::printf("%-4s %-10s %-10s %s\n", "k", "expected", "actual", "status");
  for (const auto& row : result.per_k) {
    std::printf("%-4u %-10" PRIu64 " %-10" PRIu64 " %s\n", row.k, row.expected,
                row.actual, row.pass ? "PASS" : "FAIL");
    for (const auto& [p, q] : row.missing)
      std::printf("  missing: p=%" PRIu64 " q=%" PRIu64 "\n", p, q);
    for (const auto& [p, q] : row.extra)
      std::printf("  extra:   p=%" PRIu64 " q=%" PRIu64 "\n", p, q);
  }
  std::printf("verify-tables: %s\n", result.all_pass ? "PASS" : "FAIL");
  return result.all_pass ? kExitOk : kExitMismatch;
}

int cmd_classify(std::uint64_t n) {
  const weirdpq::Classification c = weirdpq::classify(n);
  if (c.kind == weirdpq::Kind::weird) {
    std::printf("weird (%s)\n",
                weirdpq::is_primitive_weird(n) ? "primitive" : "not primitive");
  } else {
    std::printf("%s\n", weirdpq::to_string(c.kind));
  }
  std::printf("n=%" PRIu64 " abundance=%" PRId64 "\n", c.n, c.abundance);
  if (!c.witness.empty()) {
    std::string parts;
    for (std::uint64_t d : c.witness) {
      if (!parts.empty()) parts += '+';
      parts += std::to_string(d);
    }
    std::printf("witness: %s\n", parts.c_str());
  }
  return kExitOk;
}

int cmd_prove(const std::string& n_text, int forced_P) {
  Int n;
  try {
    n = IntExpr(n_text).parse();
  } catch (const std::exception& e) {
    std::cerr << "error: cannot parse n: " << e.what() << "\n";
    return kExitUsage;
  }
  const weirdpq::PrimalityCertificate cert =
      forced_P > 0 ? weirdpq::prove_with_params(n, static_cast<unsigned>(forced_P))
                   : weirdpq::prove(n);
  std::puts(weirdpq::certificate_to_json(cert).c_str());
  return cert.status == weirdpq::ProofStatus::unproven ? kExitMismatch : kExitOk;
}

int cmd_construct(unsigned j, int i, const std::string& subset, unsigned jobs,
                  const std::string& out_path, std::uint64_t max_proofs) {
  weirdpq::EnumFilter filter;
  if (i >= 0) filter.i_range = {static_cast<unsigned>(i), static_cast<unsigned>(i)};
  if (!subset.empty()) {
    std::vector<unsigned> divisors;
    std::stringstream ss(subset);
    std::string item;
    while (std::getline(ss, item, ',')) {
      const unsigned d = static_cast<unsigned>(std::stoul(item));
      bool known = false;
      for (unsigned known_d : weirdpq::kDivisorsOf24) known |= known_d == d;
      if (!known) {
        std::cerr << "error: " << d << " does not divide 24\n";
        return kExitUsage;
      }
      divisors.push_back(d);
    }
    std::sort(divisors.begin(), divisors.end());
    filter.subset = std::move(divisors);
  }
  weirdpq::HuntBudget budget;
  if (max_proofs) budget.max_proofs = max_proofs;
  const weirdpq::HuntResult result = weirdpq::hunt(j, budget, filter, jobs);
  const int rc = write_output(weirdpq::hunt_finds_to_jsonl(result), out_path);
  if (rc != kExitOk) return rc;
  std::fprintf(stderr, "construct: screened=%" PRIu64 " proofs=%" PRIu64
               " finds=%zu%s\n",
               result.screened, result.proofs_attempted, result.finds.size(),
               result.budget_exhausted ? " (budget exhausted)" : "");
  return kExitOk;
}

int cmd_verify_cert(const std::string& path) {
  std::string text;
  if (path.empty() || path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    text = ss.str();
  } else {
    std::ifstream f(path);
    if (!f) {
      std::cerr << "error: cannot read " << path << "\n";
      return kExitMismatch;
    }
    std::ostringstream ss;
    ss << f.rdbuf();
    text = ss.str();
  }
  int failures = 0, checked = 0;
  std::istringstream lines(text);
  std::string line;
  while (std::getline(lines, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const auto cert = weirdpq::certificate_from_json(line);
    const auto replayed = weirdpq::verify_certificate(cert);
    ++checked;
    const bool ok = replayed == cert.status;
    std::printf("n=%s status=%s replay=%s %s\n", cert.n.get_str().c_str(),
                weirdpq::to_string(cert.status), weirdpq::to_string(replayed),
                ok ? "OK" : "MISMATCH");
    if (!ok) ++failures;
  }
  if (checked == 0) {
    std::cerr << "error: no certificates found\n";
    return kExitUsage;
  }
  return failures == 0 ? kExitOk : kExitMismatch;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"weird numbers 2^k p q: search, classify, construct, prove"};
  app.require_subcommand(1);

  weirdpq::SearchConfig cfg;
  std::string out_path;

  auto* search = app.add_subcommand("search", "enumerate weird 2^k p q for one k");
  search->add_option("--k", cfg.k, "exponent k (>= 1)")->required()
      ->check(CLI::Range(1u, 20u));
  search->add_option("--jobs", cfg.jobs, "worker threads (0 = all cores)");
  search->add_option("--out", out_path, "write JSONL records here");
  search->add_flag("--emit-all", cfg.emit_all, "also emit rejected near-misses");
  search->add_flag("--force-large-k", cfg.force_large_k, "permit k > 14");
  search->add_option("--sieve-block", cfg.sieve_block_odds,
                     "segmented sieve block size in odd numbers");

  unsigned max_k = 8;
  auto* verify = app.add_subcommand("verify-tables",
                                    "compare per-k counts against the published table");
  verify->add_option("--max-k", max_k, "verify k = 1..max_k")->required()
      ->check(CLI::Range(1u, 14u));
  verify->add_option("--jobs", cfg.jobs, "worker threads (0 = all cores)");

  std::uint64_t classify_n = 0;
  auto* classify = app.add_subcommand("classify",
                                      "deficient / perfect / pseudoperfect / weird");
  classify->add_option("n", classify_n, "integer in [2, 10^6]")->required();

  std::string prove_n;
  int forced_P = 0;
  auto* prove = app.add_subcommand("prove", "N+1 Lucas primality proof attempt");
  prove->add_option("n", prove_n,
                    "decimal integer or expression like 2^241+2^158*3-1")->required();
  prove->add_option("--P", forced_P, "pin the Lucas parameter P");

  unsigned construct_j = 1;
  int construct_i = -1;
  std::string construct_subset;
  std::uint64_t max_proofs = 0;
  auto* construct = app.add_subcommand("construct",
                                       "hunt weird 2^(24j) p q via cyclotomic splits");
  construct->add_option("--j", construct_j, "level: k = 24j")->required()
      ->check(CLI::Range(1u, 1000u));
  construct->add_option("--i", construct_i, "restrict the shift index i");
  construct->add_option("--subset", construct_subset,
                        "comma-separated divisors of 24 forming A");
  construct->add_option("--jobs", cfg.jobs, "worker threads (0 = all cores)");
  construct->add_option("--out", out_path, "write JSONL finds here");
  construct->add_option("--max-proofs", max_proofs, "stop after this many full proofs");

  std::string cert_path;
  auto* verify_cert = app.add_subcommand("verify-cert",
                                         "replay certificates (JSONL, - for stdin)");
  verify_cert->add_option("path", cert_path, "certificate file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (search->parsed()) return cmd_search(cfg, out_path);
    if (verify->parsed()) return cmd_verify_tables(max_k, cfg);
    if (classify->parsed()) return cmd_classify(classify_n);
    if (prove->parsed()) return cmd_prove(prove_n, forced_P);
    if (construct->parsed())
      return cmd_construct(construct_j, construct_i, construct_subset, cfg.jobs,
                           out_path, max_proofs);
    if (verify_cert->parsed()) return cmd_verify_cert(cert_path);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitMismatch;
  }
  return kExitUsage;
}

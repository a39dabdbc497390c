#include "weirdpq/lucas.hpp"

#include <stdexcept>

#include <json.hpp>

namespace weirdpq {

const char* to_string(ProofStatus s) {
  switch (s) {
    case ProofStatus::proved_prime: return "proved_prime";
    case ProofStatus::proved_composite: return "proved_composite";
    case ProofStatus::screen_failed: return "screen_failed";
    case ProofStatus::unproven: return "unproven";
  }
  return "?";
}

const char* to_string(ProofMethod m) {
  switch (m) {
    case ProofMethod::prop1: return "prop1";
    case ProofMethod::prop2: return "prop2";
    case ProofMethod::none: return "none";
  }
  return "?";
}

bool strong_probable_prime(const Int& n, unsigned base) {
  if (n == base) return true;
  if (mpz_divisible_ui_p(n.get_mpz_t(), base)) return false;
  const Int n1 = n - 1;
  const auto s = mpz_scan1(n1.get_mpz_t(), 0);
  Int d;
  mpz_fdiv_q_2exp(d.get_mpz_t(), n1.get_mpz_t(), s);
  Int x = mod_pow(Int(base), d, n);
  if (x == 1 || x == n1) return true;
  for (unsigned long i = 1; i < s; ++i) {
    x = x * x % n;
    if (x == n1) return true;
  }
  return false;
}

bool screen(const Int& n) {
  if (mpz_even_p(n.get_mpz_t())) throw std::invalid_argument("screen requires odd n");
  if (n < 3) return false;
  for (unsigned base : {2u, 3u, 5u, 7u})
    if (!strong_probable_prime(n, base)) return false;
  return true;
}

namespace {

// x/2 mod odd n, assuming 0 <= x < n.
void halve_mod(Int& x, const Int& n) {
  if (mpz_odd_p(x.get_mpz_t())) x += n;
  mpz_fdiv_q_2exp(x.get_mpz_t(), x.get_mpz_t(), 1);
}

}  // namespace

LucasPair lucas_uv(const LucasParams& params, const Int& m, const Int& n) {
  if (n < 3 || mpz_even_p(n.get_mpz_t()))
    throw std::invalid_argument("lucas_uv requires odd n >= 3");
  if (m < 0) throw std::invalid_argument("lucas_uv requires m >= 0");
  LucasPair out{m, 0, 2 % n, n};
  if (m == 0) return out;

  const Int P = Int(params.P) % n;
  const Int delta = params.Delta % n;
  Int u = 1 % n;
  Int v = P;
  bool index_odd = true;  // running index starts at 1
  const auto bits = mpz_sizeinbase(m.get_mpz_t(), 2);
  for (std::size_t i = bits - 1; i-- > 0;) {
    // Double: with Q = -1, V_2t = V_t^2 - 2 for even t and V_t^2 + 2 for odd t.
    u = u * v % n;
    v = v * v % n;
    v += index_odd ? 2 : -2;
    v %= n;
    if (v < 0) v += n;
    index_odd = false;
    if (mpz_tstbit(m.get_mpz_t(), static_cast<mp_bitcnt_t>(i))) {
      Int u1 = P * u + v;
      Int v1 = P * v + delta * u;
      u1 %= n;
      v1 %= n;
      halve_mod(u1, n);
      halve_mod(v1, n);
      u = u1;
      v = v1;
      index_odd = true;
    }
  }
  out.U = u;
  out.V = v;
  return out;
}

Int v_half_chain(const LucasParams& params, const Int& R, const Int& F, const Int& n) {
  if (mpz_even_p(R.get_mpz_t())) throw std::invalid_argument("R must be odd");
  if (mpz_popcount(F.get_mpz_t()) != 1)
    throw std::invalid_argument("F must be a power of two");
  const auto m = mpz_scan1(F.get_mpz_t(), 0);
  if (m < 2) throw std::invalid_argument("F must be at least 4");
  Int v = lucas_uv(params, R, n).V;
  v = (v * v + 2) % n;  // V_2R, R odd
  for (unsigned long t = 2; t < m; ++t) {
    v = (v * v - 2) % n;
    if (v < 0) v += n;
  }
  return v;
}

std::optional<LucasParams> select_params(const Int& n) {
  for (unsigned P = 1; P <= 64; ++P) {
    const LucasParams params = LucasParams::for_p(P);
    if (jacobi(params.Delta, n) == -1) return params;
  }
  return std::nullopt;
}

std::optional<Int> positive_quadratic_root(const Int& b, const Int& c) {
  const Int disc = b * b - 4 * c;
  if (disc < 0) return std::nullopt;
  Int s, rem;
  mpz_sqrtrem(s.get_mpz_t(), rem.get_mpz_t(), disc.get_mpz_t());
  if (rem != 0) return std::nullopt;
  Int num = s - b;
  if (num <= 0 || mpz_odd_p(num.get_mpz_t())) return std::nullopt;
  return num / 2;
}

bool prop2_quadratics_flag(const Int& F, const Int& r1, const Int& r0,
                           Prop2Reading reading) {
  if (positive_quadratic_root(r0, -r1)) return true;
  switch (reading) {
    case Prop2Reading::as_printed: {
      // x^2 = r1 + 1 - r0 - F
      const Int rhs = r1 + 1 - r0 - F;
      if (rhs <= 0) return false;
      Int s, rem;
      mpz_sqrtrem(s.get_mpz_t(), rem.get_mpz_t(), rhs.get_mpz_t());
      return rem == 0;
    }
    case Prop2Reading::plus_f:
      return positive_quadratic_root(r0 + F, -(r1 + 1)).has_value();
    case Prop2Reading::minus_f:
      return positive_quadratic_root(r0 - F, -(r1 + 1)).has_value();
  }
  return false;
}

namespace {

PrimalityCertificate prove_impl(const Int& n, std::optional<unsigned> forced_P) {
  PrimalityCertificate cert;
  cert.n = n;
  cert.status = ProofStatus::unproven;
  if (n < 3 || mpz_even_p(n.get_mpz_t())) return cert;

  for (unsigned base : {2u, 3u, 5u, 7u}) {
    if (!strong_probable_prime(n, base)) {
      cert.status = ProofStatus::proved_composite;
      cert.witness_base = base;
      return cert;
    }
  }

  const Int n1 = n + 1;
  const auto m = mpz_scan1(n1.get_mpz_t(), 0);
  if (m < 2) return cert;  // needs F = 2^m with m > 1
  Int F;
  mpz_ui_pow_ui(F.get_mpz_t(), 2, m);
  Int R;
  mpz_fdiv_q_2exp(R.get_mpz_t(), n1.get_mpz_t(), m);
  cert.F = F;
  cert.R = R;

  bool v_zero = false;
  if (forced_P) {
    const LucasParams params = LucasParams::for_p(*forced_P);
    if (jacobi(params.Delta, n) != -1) return cert;  // pinned P is inadmissible
    cert.P = *forced_P;
    cert.Delta = params.Delta;
    cert.v_half = v_half_chain(params, R, F, n);
    v_zero = cert.v_half == 0;
  } else {
    // Up to five admissible P; an unlucky parameter can miss the V condition.
    unsigned tried = 0;
    for (unsigned P = 1; P <= 64 && tried < 5 && !v_zero; ++P) {
      const LucasParams params = LucasParams::for_p(P);
      if (jacobi(params.Delta, n) != -1) continue;
      ++tried;
      cert.P = P;
      cert.Delta = params.Delta;
      cert.v_half = v_half_chain(params, R, F, n);
      v_zero = cert.v_half == 0;
    }
  }
  if (!v_zero) return cert;  // unproven; nothing below applies

  const Int f1 = F - 1;
  if (f1 * f1 > n) {
    cert.method = ProofMethod::prop1;
    cert.status = ProofStatus::proved_prime;
    return cert;
  }
  if (f1 * f1 * f1 > n) {
    cert.method = ProofMethod::prop2;
    const Int r1 = R / F;
    const Int r0 = R % F;
    cert.prop2_digits = {r1, r0};
    const auto root1 = positive_quadratic_root(r0, -r1);
    const auto root2 = positive_quadratic_root(r0 - F, -(r1 + 1));
    cert.quad_roots_found = {root1.has_value(), root2.has_value()};
    if (root1 || root2) {
      cert.status = ProofStatus::proved_composite;
      cert.quad_root = root1 ? *root1 : *root2;
    } else {
      cert.status = ProofStatus::proved_prime;
    }
    return cert;
  }
  return cert;  // F too small for either proposition
}

}  // namespace

PrimalityCertificate prove(const Int& n) { return prove_impl(n, std::nullopt); }

PrimalityCertificate prove_with_params(const Int& n, unsigned P) {
  return prove_impl(n, P);
}

ProofStatus verify_certificate(const PrimalityCertificate& cert) {
  const Int& n = cert.n;
  if (n < 3 || mpz_even_p(n.get_mpz_t())) return ProofStatus::unproven;

  if (cert.witness_base) {
    if (strong_probable_prime(n, *cert.witness_base)) return ProofStatus::unproven;
    return cert.status == ProofStatus::screen_failed ? ProofStatus::screen_failed
                                                     : ProofStatus::proved_composite;
  }
  if (cert.status == ProofStatus::unproven) return ProofStatus::unproven;

  // Structural checks on the recorded decomposition and parameters.
  if (cert.F * cert.R != n + 1) return ProofStatus::unproven;
  if (mpz_popcount(cert.F.get_mpz_t()) != 1) return ProofStatus::unproven;
  const auto m = mpz_scan1(cert.F.get_mpz_t(), 0);
  if (m < 2) return ProofStatus::unproven;
  if (mpz_even_p(cert.R.get_mpz_t())) return ProofStatus::unproven;
  if (cert.P == 0 || cert.Delta != Int(cert.P) * cert.P + 4) return ProofStatus::unproven;
  if (jacobi(cert.Delta, n) != -1) return ProofStatus::unproven;

  const LucasParams params{cert.P, cert.Delta};
  if (v_half_chain(params, cert.R, cert.F, n) != cert.v_half)
    return ProofStatus::unproven;
  if (cert.v_half != 0) return ProofStatus::unproven;

  const Int f1 = cert.F - 1;
  if (f1 * f1 > n) return ProofStatus::proved_prime;
  if (f1 * f1 * f1 > n) {
    const Int r1 = cert.R / cert.F;
    const Int r0 = cert.R % cert.F;
    if (cert.prop2_digits && (cert.prop2_digits->first != r1 ||
                              cert.prop2_digits->second != r0))
      return ProofStatus::unproven;
    const auto root1 = positive_quadratic_root(r0, -r1);
    const auto root2 = positive_quadratic_root(r0 - cert.F, -(r1 + 1));
    return (root1 || root2) ? ProofStatus::proved_composite
                            : ProofStatus::proved_prime;
  }
  return ProofStatus::unproven;
}

namespace {

using ordered_json = nlohmann::ordered_json;

ProofStatus status_from_string(const std::string& s) {
  if (s == "proved_prime") return ProofStatus::proved_prime;
  if (s == "proved_composite") return ProofStatus::proved_composite;
  if (s == "screen_failed") return ProofStatus::screen_failed;
  if (s == "unproven") return ProofStatus::unproven;
  throw std::invalid_argument("unknown status: " + s);
}

ProofMethod method_from_string(const std::string& s) {
  if (s == "prop1") return ProofMethod::prop1;
  if (s == "prop2") return ProofMethod::prop2;
  if (s == "none") return ProofMethod::none;
  throw std::invalid_argument("unknown method: " + s);
}

Int int_from_json(const ordered_json& j) { return Int(j.get<std::string>()); }

}  // namespace

std::string certificate_to_json(const PrimalityCertificate& cert) {
  ordered_json j;
  j["n"] = cert.n.get_str();
  j["status"] = to_string(cert.status);
  j["method"] = to_string(cert.method);
  if (cert.P) {
    j["P"] = std::to_string(cert.P);
    j["Delta"] = cert.Delta.get_str();
  }
  if (cert.F != 0) {
    j["F"] = cert.F.get_str();
    j["R"] = cert.R.get_str();
    j["v_half"] = cert.v_half.get_str();
  }
  if (cert.prop2_digits) {
    j["r1"] = cert.prop2_digits->first.get_str();
    j["r0"] = cert.prop2_digits->second.get_str();
  }
  if (cert.quad_roots_found) {
    j["quad_root_q1"] = cert.quad_roots_found->first;
    j["quad_root_q2"] = cert.quad_roots_found->second;
  }
  if (cert.quad_root) j["quad_root"] = cert.quad_root->get_str();
  if (cert.witness_base) j["witness_base"] = std::to_string(*cert.witness_base);
  return j.dump();
}

PrimalityCertificate certificate_from_json(const std::string& json_text) {
  const ordered_json j = ordered_json::parse(json_text);
  PrimalityCertificate cert;
  cert.n = int_from_json(j.at("n"));
  cert.status = status_from_string(j.at("status").get<std::string>());
  cert.method = method_from_string(j.at("method").get<std::string>());
  if (j.contains("P")) {
    cert.P = static_cast<unsigned>(std::stoul(j.at("P").get<std::string>()));
    cert.Delta = int_from_json(j.at("Delta"));
  }
  if (j.contains("F")) {
    cert.F = int_from_json(j.at("F"));
    cert.R = int_from_json(j.at("R"));
    cert.v_half = int_from_json(j.at("v_half"));
  }
  if (j.contains("r1"))
    cert.prop2_digits = {int_from_json(j.at("r1")), int_from_json(j.at("r0"))};
  if (j.contains("quad_root_q1"))
    cert.quad_roots_found = {j.at("quad_root_q1").get<bool>(),
                             j.at("quad_root_q2").get<bool>()};
  if (j.contains("quad_root")) cert.quad_root = int_from_json(j.at("quad_root"));
  if (j.contains("witness_base"))
    cert.witness_base =
        static_cast<unsigned>(std::stoul(j.at("witness_base").get<std::string>()));
  return cert;
}

}  // namespace weirdpq

#include "forge/integer.hpp"

#include <cstdlib>

#include "forge/error.hpp"

namespace forge {

namespace {

bool looks_integral(std::string_view s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i)
    if (s[i] < '0' || s[i] > '9') return false;
  return true;
}

}  // namespace

Integer parse_integer(std::string_view text) {
  if (!looks_integral(text))
    fail(ErrorKind::InvalidInput, "not a decimal integer: '" + std::string(text) + "'");
  std::string s(text);
  if (s[0] == '+') s.erase(0, 1);
  return Integer(s, 10);
}

Rational parse_rational(std::string_view text) {
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_integer(text));
  Integer num = parse_integer(text.substr(0, slash));
  Integer den = parse_integer(text.substr(slash + 1));
  if (den == 0) fail(ErrorKind::InvalidInput, "zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

std::string to_decimal(const Integer& value) { return value.get_str(10); }

Integer mod(const Integer& a, const Integer& n) {
  Integer r;
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), n.get_mpz_t());
  if (r < 0) r += abs(n);
  return r;
}

Bezout xgcd(const Integer& a, const Integer& b) {
  Bezout out;
  mpz_gcdext(out.g.get_mpz_t(), out.s.get_mpz_t(), out.t.get_mpz_t(), a.get_mpz_t(),
             b.get_mpz_t());
  return out;
}

Integer trial_bound() {
  if (const char* env = std::getenv("FORSTER_FORGE_TRIAL_BOUND")) {
    std::string_view v(env);
    if (looks_integral(v)) {
      Integer b(std::string(v), 10);
      if (b >= 2) return b;
    }
  }
  return Integer(1000000);
}

std::vector<PrimePower> factor_integer(const Integer& n) {
  if (n == 0) fail(ErrorKind::InvalidInput, "cannot factor zero");
  Integer rest = abs(n);
  const Integer bound = trial_bound();
  std::vector<PrimePower> out;
  Integer d = 2;
  while (d * d <= rest) {
    if (d > bound)
      fail(ErrorKind::ModulusTooLarge,
           "cofactor " + to_decimal(rest) + " exceeds trial-division bound " + to_decimal(bound));
    if (mpz_divisible_p(rest.get_mpz_t(), d.get_mpz_t())) {
      unsigned e = 0;
      while (mpz_divisible_p(rest.get_mpz_t(), d.get_mpz_t())) {
        rest /= d;
        ++e;
      }
      out.push_back({d, e});
    }
    d += (d == 2) ? 1 : 2;
  }
  if (rest > 1) out.push_back({rest, 1});
  return out;
}

bool is_prime(const Integer& n) {
  if (n < 2) return false;
  auto f = factor_integer(n);
  return f.size() == 1 && f[0].exponent == 1;
}

bool is_squarefree(const Integer& n) {
  if (n == 0) return false;
  for (const auto& pp : factor_integer(n))
    if (pp.exponent > 1) return false;
  return true;
}

unsigned strip_prime(Integer& n, const Integer& p) {
  unsigned v = 0;
  while (n != 0 && mpz_divisible_p(n.get_mpz_t(), p.get_mpz_t())) {
    n /= p;
    ++v;
  }
  return v;
}

}  // namespace forge

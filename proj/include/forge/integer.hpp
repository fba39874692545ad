#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace forge {

using Integer = mpz_class;
using Rational = mpq_class;

Integer parse_integer(std::string_view text);
Rational parse_rational(std::string_view text);
std::string to_decimal(const Integer& value);

// Least non-negative residue.
Integer mod(const Integer& a, const Integer& n);

// g = gcd(a, b) = s*a + t*b.
struct Bezout {
  Integer g, s, t;
};
Bezout xgcd(const Integer& a, const Integer& b);

// Trial-division bound for certified factorizations. Defaults to 10^6 and is
// overridden by FORSTER_FORGE_TRIAL_BOUND.
Integer trial_bound();

struct PrimePower {
  Integer prime;
  unsigned exponent;
  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

// Complete factorization of |n| (n != 0) by trial division up to trial_bound().
// Throws ModulusTooLarge when a cofactor cannot be certified prime.
std::vector<PrimePower> factor_integer(const Integer& n);

bool is_prime(const Integer& n);
bool is_squarefree(const Integer& n);

// Valuation of n != 0 at p, with n divided by p^v on return.
unsigned strip_prime(Integer& n, const Integer& p);

inline long to_long(const Integer& n) { return n.get_si(); }

}  // namespace forge

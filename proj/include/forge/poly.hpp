#pragma once

// Dense univariate polynomials over a prime field F_p.
//
// A polynomial is its coefficient vector, lowest degree first, with no
// trailing zeros (the zero polynomial is empty) and every coefficient in
// [0, p). All functions take p explicitly and return normalized results.

#include <cstdint>
#include <random>
#include <vector>

#include "forge/integer.hpp"

namespace forge {

using Poly = std::vector<Integer>;

namespace fp {

inline constexpr std::uint64_t kDefaultSeed = 0x5eedf0f5ULL;

Poly normalize(Poly f, const Integer& p);
int degree(const Poly& f);
Poly constant(const Integer& c, const Integer& p);
Poly x_poly();

Poly add(const Poly& a, const Poly& b, const Integer& p);
Poly sub(const Poly& a, const Poly& b, const Integer& p);
Poly mul(const Poly& a, const Poly& b, const Integer& p);
Poly scale(const Poly& a, const Integer& c, const Integer& p);

struct DivMod {
  Poly quotient, remainder;
};
// b must be nonzero; its leading coefficient is inverted mod p.
DivMod divmod(const Poly& a, const Poly& b, const Integer& p);
Poly rem(const Poly& a, const Poly& b, const Integer& p);
Poly mulmod(const Poly& a, const Poly& b, const Poly& m, const Integer& p);
Poly powmod(const Poly& base, const Integer& exponent, const Poly& m, const Integer& p);

Poly monic(const Poly& f, const Integer& p);
Poly gcd(const Poly& a, const Poly& b, const Integer& p);

// g = gcd(a, b) (monic) = s*a + t*b.
struct PolyBezout {
  Poly g, s, t;
};
PolyBezout xgcd(const Poly& a, const Poly& b, const Integer& p);

Poly derivative(const Poly& f, const Integer& p);
Integer eval(const Poly& f, const Integer& x, const Integer& p);

// Irreducibility certificate for a polynomial of degree d >= 1:
// x^(p^d) = x mod f, and gcd(x^(p^i) - x, f) = 1 for 1 <= i < d.
bool is_irreducible(const Poly& f, const Integer& p);

struct FactorTerm {
  Poly factor;  // monic irreducible
  unsigned multiplicity;
  friend bool operator==(const FactorTerm&, const FactorTerm&) = default;
};

struct Factorization {
  Integer leading;  // leading coefficient of the input
  std::vector<FactorTerm> terms;  // sorted by (degree, coefficients)
  std::uint64_t seed;  // stream used for equal-degree splitting
};

// Squarefree decomposition, distinct-degree and Cantor-Zassenhaus
// equal-degree splitting driven by a seeded mt19937_64 stream.
Factorization factor(const Poly& f, const Integer& p, std::uint64_t seed = kDefaultSeed);

// leading * prod factor^multiplicity.
Poly expand(const Factorization& fact, const Integer& p);

}  // namespace fp
}  // namespace forge

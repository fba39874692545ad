#include "forge/hilbert.hpp"

#include <algorithm>
#include <cstdint>

#include "forge/error.hpp"

namespace forge {

Place Place::at(const Integer& p) {
  if (!is_prime(p)) fail(ErrorKind::InvalidInput, to_decimal(p) + " is not a prime");
  return {p};
}

std::string Place::name() const { return prime ? to_decimal(*prime) : "inf"; }

Place parse_place(const std::string& text) {
  if (text == "inf" || text == "infinity" || text == "oo") return Place::real();
  return Place::at(parse_integer(text));
}

namespace {

// a/b and a*b differ by the square b^2, so the symbol only sees num*den.
Integer square_class(const Rational& a) {
  if (a == 0) fail(ErrorKind::InvalidInput, "Hilbert symbol of 0");
  return a.get_num() * a.get_den();
}

int sign_of(bool negative) { return negative ? -1 : 1; }

int legendre(const Integer& u, const Integer& p) { return mpz_legendre(mod(u, p).get_mpz_t(), p.get_mpz_t()); }

// (u - 1)/2 and (u^2 - 1)/8 mod 2 for odd u.
int eps2(const Integer& u) { return mod(u, Integer(4)) == 3 ? 1 : 0; }
int omega2(const Integer& u) {
  const Integer r = mod(u, Integer(8));
  return (r == 3 || r == 5) ? 1 : 0;
}

}  // namespace

int hilbert_symbol(const Rational& a, const Rational& b, const Place& v) {
  Integer u = square_class(a), w = square_class(b);
  if (v.is_real()) return sign_of(u < 0 && w < 0);
  const Integer& p = *v.prime;
  const unsigned alpha = strip_prime(u, p), beta = strip_prime(w, p);
  if (p == 2) {
    const int e = eps2(u) * eps2(w) + static_cast<int>(alpha) * omega2(w) + static_cast<int>(beta) * omega2(u);
    return sign_of(e % 2 == 1);
  }
  int s = 1;
  if ((alpha * beta) % 2 == 1 && mod(p, Integer(4)) == 3) s = -s;
  if (beta % 2 == 1) s *= legendre(u, p);
  if (alpha % 2 == 1) s *= legendre(w, p);
  return s;
}

int hilbert_symbol_by_search(const Rational& a, const Rational& b, const Place& v) {
  Integer u = square_class(a), w = square_class(b);
  if (v.is_real()) return (u > 0 || w > 0) ? 1 : -1;
  const Integer& p = *v.prime;
  // Only the parity of the valuation matters.
  const Integer pp = p * p;
  while (mod(u, pp) == 0) u /= pp;
  while (mod(w, pp) == 0) w /= pp;
  const unsigned k = p == 2 ? 5 : 3;
  Integer big;
  mpz_pow_ui(big.get_mpz_t(), p.get_mpz_t(), k);
  if (!big.fits_slong_p() || big > 1 << 24) fail(ErrorKind::ModulusTooLarge, "search modulus " + to_decimal(big));
  const std::int64_t q = big.get_si(), ps = p.get_si();
  const std::int64_t A = mod(u, big).get_si(), B = mod(w, big).get_si();
  std::vector<bool> square(static_cast<std::size_t>(q), false);
  for (std::int64_t z = 0; z < q; ++z) square[static_cast<std::size_t>(z * z % q)] = true;
  // In a primitive solution x or y is a unit (otherwise p^2 | z^2 and none
  // is); scale to x = 1, or to y = 1 with p | x.
  for (std::int64_t y = 0; y < q; ++y)
    if (square[static_cast<std::size_t>((A + B * (y * y % q)) % q)]) return 1;
  for (std::int64_t x = 0; x < q; x += ps)
    if (square[static_cast<std::size_t>((A * (x * x % q) + B) % q)]) return 1;
  return -1;
}

std::vector<Place> relevant_places(const Rational& a, const Rational& b) {
  const Integer n = 2 * square_class(a) * square_class(b);
  std::vector<Place> out{Place::real()};
  for (const auto& pe : factor_integer(abs(n))) out.push_back(Place::at(pe.prime));
  return out;
}

ProductFormula hilbert_product(const Rational& a, const Rational& b) {
  ProductFormula out;
  out.places = relevant_places(a, b);
  for (const auto& v : out.places) {
    out.symbols.push_back(hilbert_symbol(a, b, v));
    out.product *= out.symbols.back();
  }
  return out;
}

}  // namespace forge

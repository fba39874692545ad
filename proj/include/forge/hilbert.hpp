#pragma once

// Hilbert symbols (a, b)_v of nonzero rationals at the places of Q.

#include <optional>
#include <string>
#include <vector>

#include "forge/integer.hpp"

namespace forge {

// A prime p, or the real place when `prime` is empty.
struct Place {
  std::optional<Integer> prime;

  static Place real() { return {}; }
  static Place at(const Integer& p);  // InvalidInput unless p is prime
  bool is_real() const { return !prime.has_value(); }
  std::string name() const;  // "inf" or the prime
  friend bool operator==(const Place&, const Place&) = default;
};

Place parse_place(const std::string& text);

// Closed form: Legendre symbols at odd p, the epsilon/omega formula at 2,
// signs at infinity. InvalidInput when a or b is zero.
int hilbert_symbol(const Rational& a, const Rational& b, const Place& v);

// Independent oracle: nontrivial solvability of z^2 = a x^2 + b y^2 modulo
// p^3 (p odd) or 2^5 after removing even powers of p; sign test at infinity.
int hilbert_symbol_by_search(const Rational& a, const Rational& b, const Place& v);

// The real place and every prime dividing 2ab: outside these the symbol is 1.
std::vector<Place> relevant_places(const Rational& a, const Rational& b);

struct ProductFormula {
  std::vector<Place> places;
  std::vector<int> symbols;
  int product = 1;
};

ProductFormula hilbert_product(const Rational& a, const Rational& b);

}  // namespace forge

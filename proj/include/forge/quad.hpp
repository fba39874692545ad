#pragma once

// Ideals of a maximal quadratic order Z[w].
//
// An ideal is stored by the row Hermite normal form of a Z-basis written in
// coordinates (1, w):  [[h11, h12], [0, h22]] with h11, h22 > 0 and
// 0 <= h12 < h22. Its norm (index in Z[w]) is h11*h22.

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "forge/ring.hpp"

namespace forge {

class QuadIdeal {
 public:
  // Z-span of the given rows (coordinates in (1, w)); must be a nonzero ideal.
  QuadIdeal(Ring ring, const std::vector<std::array<Integer, 2>>& rows);

  static QuadIdeal from_generators(const Ring& ring, const std::vector<Elem>& gens);
  static QuadIdeal unit(const Ring& ring);

  const Ring& ring() const { return ring_; }
  const Integer& h11() const { return h11_; }
  const Integer& h12() const { return h12_; }
  const Integer& h22() const { return h22_; }
  Integer norm() const { return h11_ * h22_; }
  std::array<Elem, 2> basis() const;
  std::array<std::array<Integer, 2>, 2> hnf() const;

  bool contains(const Elem& x) const;
  bool contains(const QuadIdeal& other) const;
  QuadIdeal operator*(const QuadIdeal& other) const;
  QuadIdeal conjugate() const;
  // The ideal I/n; every basis coordinate must be divisible by n.
  QuadIdeal divide(const Integer& n) const;

  std::string format() const;

  friend bool operator==(const QuadIdeal& a, const QuadIdeal& b) {
    return a.h11_ == b.h11_ && a.h12_ == b.h12_ && a.h22_ == b.h22_ && a.ring_ == b.ring_;
  }

 private:
  Ring ring_;
  Integer h11_, h12_, h22_;
};

struct QuadPrime {
  QuadIdeal ideal;
  Ring residue_field;  // F_p, or F_{p^2} for an inert prime
  Integer root;        // image of w in F_p (split or ramified primes)
  bool inert = false;
};

// The primes of Z[w] above the rational prime p, in a fixed order.
std::vector<QuadPrime> quad_primes_over(const Ring& ring, const Integer& p);
// Image of x in the residue field of the prime.
Elem quad_reduce(const Ring& ring, const Elem& x, const QuadPrime& prime);

struct QuadFactor {
  QuadIdeal prime;
  unsigned exponent;
};

// Throws NormTooLarge when the norm cannot be factored within the trial bound.
std::vector<QuadFactor> prime_factorization(const QuadIdeal& ideal);
QuadIdeal recompose(const Ring& ring, const std::vector<QuadFactor>& factors);

// Nonzero elements of the ideal with |norm| <= bound, ordered by |norm|, then
// |b|, |a|, positive before negative (so 1 precedes w and 3 precedes -3).
// Exhaustive for imaginary orders; for real orders the search is confined to
// a coordinate box and is not exhaustive.
std::vector<Elem> small_elements(const QuadIdeal& ideal, const Integer& bound);

// An element generating the ideal, if a search finds one. For imaginary
// orders a negative answer is a proof of non-principality.
std::optional<Elem> principal_generator(const QuadIdeal& ideal);

// Integer coefficients u with sum u_i rows_i = target, rows and target in Z^2.
std::optional<std::vector<Integer>> lattice_solve(const std::vector<std::array<Integer, 2>>& rows,
                                                  const std::array<Integer, 2>& target);

}  // namespace forge

#pragma once

// Concrete commutative rings with exact arithmetic.
//
// A Ring is an immutable, cheaply copyable handle built from a
// RingDescriptor. Elements (Elem) are flat coordinate vectors whose meaning
// is fixed by the ring:
//
//   ZMod(N), PrimeField(p)       [v]               0 <= v < N
//   ExtField(p,f), PolyQuotient  [c_0..c_{d-1}]    residues of a polynomial mod f
//   LocalInt(p)                  [num, den]        reduced, den > 0, p does not divide den
//   QuadOrder(d)                 [a, b]            a + b*w
//   Product(R_1..R_k)            concatenation of the factors' coordinates
//
// Every semilocal-capable ring (all but QuadOrder) enumerates its maximal
// ideals in a fixed order; residue maps and CRT lifting are indexed by it.

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "forge/integer.hpp"
#include "forge/poly.hpp"

namespace forge {

struct RingDescriptor;

struct ZModDesc {
  Integer modulus;
};
struct PrimeFieldDesc {
  Integer p;
};
// F_p[x]/(f) with f monic irreducible.
struct ExtFieldDesc {
  Integer p;
  Poly modulus;
};
// F_p[x]/(f) for any monic f of degree >= 1; covers local rings such as F_3[t]/(t^3).
struct PolyQuotientDesc {
  Integer p;
  Poly modulus;
};
struct ProductDesc {
  std::vector<RingDescriptor> factors;
};
// Z localized at the prime ideal (p).
struct LocalIntDesc {
  Integer p;
};
// Maximal order Z[w] of Q(sqrt d).
struct QuadOrderDesc {
  Integer d;
};

struct RingDescriptor {
  std::variant<ZModDesc, PrimeFieldDesc, ExtFieldDesc, PolyQuotientDesc, ProductDesc,
               LocalIntDesc, QuadOrderDesc>
      value;
};

bool operator==(const RingDescriptor& a, const RingDescriptor& b);

enum class RingKind { ZMod, PrimeField, ExtField, PolyQuotient, Product, LocalInt, QuadOrder };

struct Elem {
  std::vector<Integer> c;
  friend bool operator==(const Elem&, const Elem&) = default;
};

using Vec = std::vector<Elem>;

class MaxIdeal;

class Ring {
 public:
  explicit Ring(const RingDescriptor& descriptor);

  static Ring zmod(const Integer& n);
  static Ring prime_field(const Integer& p);
  static Ring ext_field(const Integer& p, const Poly& f);
  static Ring poly_quotient(const Integer& p, const Poly& f);
  static Ring product(const std::vector<Ring>& factors);
  static Ring local_int(const Integer& p);
  static Ring quad_order(const Integer& d);

  const RingDescriptor& descriptor() const;
  RingKind kind() const;
  std::size_t width() const;
  std::string name() const;

  Elem zero() const;
  Elem one() const;
  Elem from_int(const Integer& n) const;
  // Validates raw coordinates and returns the canonical element.
  Elem make(std::vector<Integer> coords) const;

  Elem add(const Elem& a, const Elem& b) const;
  Elem sub(const Elem& a, const Elem& b) const;
  Elem neg(const Elem& a) const;
  Elem mul(const Elem& a, const Elem& b) const;
  Elem pow(const Elem& a, unsigned long e) const;

  bool is_zero(const Elem& a) const;
  bool is_one(const Elem& a) const { return a == one(); }
  bool is_unit(const Elem& a) const;
  std::optional<Elem> inverse(const Elem& a) const;
  // a / b in an integral domain; throws InvalidInput when the quotient leaves the ring.
  Elem divide_exact(const Elem& a, const Elem& b) const;

  bool is_field() const;
  bool is_domain() const;
  bool is_semilocal() const;
  Integer characteristic() const;
  // ZMod and PrimeField below 2^31: elements are single residues in [0, n),
  // so hot loops can use machine words.
  std::optional<std::uint64_t> word_modulus() const;
  std::optional<Integer> cardinality() const;
  // All elements of a finite ring in coordinate order (at most 10^6 of them).
  std::vector<Elem> elements() const;
  Elem random(std::mt19937_64& rng) const;

  // Product structure (a non-product ring is its own single component).
  std::size_t component_count() const;
  const Ring& component(std::size_t i) const;
  Elem project(const Elem& a, std::size_t i) const;
  Elem assemble(const std::vector<Elem>& parts) const;

  // QuadOrder: w^2 = trace*w + norm_const.
  const Integer& quad_d() const;
  const Integer& quad_trace() const;
  const Integer& quad_norm_const() const;
  Integer quad_norm(const Elem& a) const;
  Elem quad_conj(const Elem& a) const;

  // F_p-polynomial view of ExtField / PolyQuotient elements.
  const Integer& poly_prime() const;
  const Poly& poly_modulus() const;
  Poly to_poly(const Elem& a) const;
  Elem from_poly(const Poly& f) const;

  // Maximal ideals; UnsupportedRing for QuadOrder.
  std::size_t max_ideal_count() const;
  std::vector<MaxIdeal> max_ideals() const;
  MaxIdeal max_ideal(std::size_t index) const;
  Elem residue(const Elem& a, const MaxIdeal& m) const;
  // targets[i] lives in the residue field of ideal i; one entry per ideal.
  Elem crt_lift(std::span<const Elem> targets) const;
  Elem crt_lift(const std::map<std::size_t, Elem>& targets) const;

  std::string format(const Elem& a) const;

  friend bool operator==(const Ring& a, const Ring& b);

 private:
  struct Impl;
  friend class MaxIdeal;
  explicit Ring(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
  std::shared_ptr<const Impl> impl_;
};

// Handle to the index-th maximal ideal of a semilocal-capable ring.
class MaxIdeal {
 public:
  MaxIdeal(Ring ring, std::size_t index);

  const Ring& ring() const { return ring_; }
  std::size_t index() const { return index_; }
  const Integer& residue_char() const;
  unsigned residue_degree() const;
  // Residue field as a PrimeField or ExtField ring (a field is its own residue field).
  const Ring& residue_field() const;
  std::string describe() const;

  friend bool operator==(const MaxIdeal& a, const MaxIdeal& b) {
    return a.index_ == b.index_ && a.ring_ == b.ring_;
  }

 private:
  Ring ring_;
  std::size_t index_;
};

Vec residue_vector(const Ring& ring, const Vec& v, const MaxIdeal& m);

}  // namespace forge

#pragma once

// Cyclic Galois extensions given by structure constants: Artin-Schreier
// construction, the comparison-map criterion and descent.

#include <cstddef>
#include <optional>

#include "forge/algebra.hpp"

namespace forge {

// S over R with an action of the cyclic group of order `order`, generated by
// sigma (columns are the images of the basis). The action need not be
// faithful, so a trivial action of C_2 is representable.
struct GaloisExtensionData {
  StructureConstantAlgebra algebra;
  Matrix sigma;
  std::size_t order;

  const Ring& base() const { return algebra.ring(); }
};

// InvalidInput unless sigma is a unital algebra map with sigma^order = 1.
void verify_action(const GaloisExtensionData& e);
GaloisExtensionData make_extension(StructureConstantAlgebra s, Matrix sigma, std::size_t order);

// R[x]/(x^p - x - a) with sigma(x) = x + 1, basis x^0..x^(p-1).
// NotCharP unless the characteristic of R is a prime p.
GaloisExtensionData artin_schreier(const Ring& ring, const Elem& a);
// R^n with the cyclic shift of the idempotents.
GaloisExtensionData split_extension(const Ring& ring, std::size_t n);
GaloisExtensionData trivial_action(const StructureConstantAlgebra& s, std::size_t order);

// Matrix of S (x) S -> prod_g S, s (x) t |-> (s g(t))_g.
Matrix comparison_matrix(const GaloisExtensionData& e);
// RankMismatch unless dim S = |group|.
InvertibilityVerdict is_galois(const GaloisExtensionData& e);

struct Descent {
  Elem a;
  Vec trace_one;  // c with sum_g g(c) = 1
  Vec x;          // sigma(x) = x + 1
  // Columns x^0..x^(p-1): the algebra map artin_schreier(R, a) -> S.
  Matrix isomorphism;
};

// For a C_p-extension in characteristic p (the Galois property is a
// precondition). NotCyclicP / NoSolution.
Descent artin_schreier_descent(const GaloisExtensionData& e);

// Some c with c^p - c = a, by exhausting a finite ring.
std::optional<Elem> wp_preimage(const Ring& ring, const Elem& a);

}  // namespace forge

#pragma once

// Finite free algebras given by structure constants, symbol algebras, the
// Azumaya (sandwich map) criterion and explicit splitting over finite fields.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "forge/matrix.hpp"

namespace forge {

class StructureConstantAlgebra {
 public:
  // table[i][j] = coordinates of b_i * b_j. Associativity on all basis
  // triples and the two-sided unit are verified (InvalidInput otherwise).
  StructureConstantAlgebra(Ring ring, std::size_t dim, std::vector<std::vector<Vec>> table, Vec unit);

  const Ring& ring() const { return ring_; }
  std::size_t dim() const { return dim_; }
  const Vec& product(std::size_t i, std::size_t j) const { return table_[i][j]; }
  const std::vector<std::vector<Vec>>& table() const { return table_; }
  const Vec& unit() const { return unit_; }

  Vec basis(std::size_t i) const;
  Vec zero() const;
  Vec scalar(const Elem& r) const;
  Vec add(const Vec& x, const Vec& y) const;
  Vec sub(const Vec& x, const Vec& y) const;
  Vec scale(const Elem& r, const Vec& x) const;
  Vec mul(const Vec& x, const Vec& y) const;
  Vec pow(const Vec& x, std::size_t e) const;
  bool is_commutative() const;

 private:
  Ring ring_;
  std::size_t dim_;
  std::vector<std::vector<Vec>> table_;
  Vec unit_;
  // Flattened table as machine words when the ring has a word modulus.
  std::optional<std::uint64_t> modulus_;
  std::vector<std::uint64_t> words_;
};

struct RootOfUnity {
  Elem rho;
  std::size_t n;
};

// BadRoot unless rho^n = 1, rho^k - 1 is a unit for 0 < k < n and n is a unit.
void validate_root(const Ring& ring, const RootOfUnity& root);

// (a, b)_{n,R}: basis x^i y^j at index i*n + j, with x^n = a, y^n = b,
// xy = rho yx. NotAUnit / BadRoot.
StructureConstantAlgebra symbol_algebra(const Ring& ring, const Elem& a, const Elem& b, const RootOfUnity& root);
// M_n(R) with basis E_ij at index i*n + j.
StructureConstantAlgebra matrix_algebra(const Ring& ring, std::size_t n);
// R[eps]/(eps^2).
StructureConstantAlgebra dual_numbers(const Ring& ring);
// Basis b_i (x) c_j at index i*dim(B) + j.
StructureConstantAlgebra tensor_product(const StructureConstantAlgebra& a, const StructureConstantAlgebra& b);

// Matrix of A (x) A^op -> End_R(A), b_i (x) b_j |-> (x |-> b_i x b_j).
Matrix sandwich_matrix(const StructureConstantAlgebra& a);
InvertibilityVerdict is_azumaya(const StructureConstantAlgebra& a);

struct Splitting {
  std::size_t degree = 0;           // n with dim = n^2
  Vec element;                      // z whose eigen-idempotent was used
  Vec idempotent;                   // f, with dim(A f) = n
  std::vector<Vec> left_ideal_basis;  // basis of A f
  std::vector<Matrix> images;       // left action of each basis element on A f
  std::uint64_t seed = 0;
  std::size_t candidates_tried = 0;
};

// A = M_n(F_q) made explicit: a primitive idempotent f and the left regular
// representation on A f, verified to be a bijective algebra map.
// SearchExhausted (reporting the seed) when no idempotent is found.
Splitting split_over_finite_field(const StructureConstantAlgebra& a, std::uint64_t seed = 0x5eedf0f5ULL);
bool verify_splitting(const StructureConstantAlgebra& a, const Splitting& s);

}  // namespace forge

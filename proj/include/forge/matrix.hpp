#pragma once

// Dense matrices over a Ring and the exact linear algebra built on them.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "forge/ring.hpp"

namespace forge {

// Large enough for the p^2 x p^2 comparison matrices of degree-p extensions
// with p <= 23 and the sandwich matrices of degree-4 algebras.
inline constexpr std::size_t kMaxDimension = 729;

class Matrix {
 public:
  // Zero matrix; either dimension may be 0.
  Matrix(Ring ring, std::size_t rows, std::size_t cols);

  static Matrix identity(const Ring& ring, std::size_t n);
  static Matrix from_rows(const Ring& ring, const std::vector<Vec>& rows, std::size_t cols);
  static Matrix from_columns(const Ring& ring, const std::vector<Vec>& cols, std::size_t rows);
  // e_ij(c): identity plus c at (i, j), 0-based, i != j.
  static Matrix elementary(const Ring& ring, std::size_t n, std::size_t i, std::size_t j, const Elem& c);

  const Ring& ring() const { return ring_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  Elem& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Elem& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  Vec row(std::size_t i) const;
  Vec column(std::size_t j) const;
  Matrix columns(std::size_t begin, std::size_t end) const;
  Matrix transpose() const;

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_ && a.ring_ == b.ring_;
  }

 private:
  Ring ring_;
  std::size_t rows_, cols_;
  std::vector<Elem> data_;
};

Matrix operator*(const Matrix& a, const Matrix& b);
Matrix operator+(const Matrix& a, const Matrix& b);
Matrix operator-(const Matrix& a, const Matrix& b);
Vec apply(const Matrix& a, const Vec& v);
Matrix hstack(const Matrix& a, const Matrix& b);
Matrix vstack(const Matrix& a, const Matrix& b);
bool is_identity(const Matrix& a);

// Entrywise image in the residue field of m.
Matrix residue(const Matrix& a, const MaxIdeal& m);

struct RowEchelon {
  Matrix reduced;
  std::vector<std::size_t> pivots;
  std::size_t rank;
};

// NotAField unless the ring is a field.
RowEchelon rref_over_field(const Matrix& a);
std::size_t rank_over_field(const Matrix& a);
std::size_t residue_rank(const Matrix& a, const MaxIdeal& m);
// Some x with a x = b, or nothing when the system is inconsistent.
std::optional<Vec> solve_over_field(const Matrix& a, const Vec& b);

// Howell normal form of the row span over Z/N (NotZMod otherwise). Zero rows
// are dropped, so equal spans give identical matrices.
Matrix howell_form(const Matrix& a);
bool howell_contains(const Matrix& howell, const Vec& v);

Elem determinant(const Matrix& a);
// det(tI - a), coefficients lowest degree first (monic of degree n).
std::vector<Elem> charpoly(const Matrix& a);

struct InverseCertificate {
  std::optional<Matrix> inverse;
  Elem determinant;
  // Semilocal rings: a maximal ideal at which the determinant vanishes.
  std::optional<MaxIdeal> vanishing_ideal;
  bool invertible() const { return inverse.has_value(); }
};

InverseCertificate inverse_or_certificate(const Matrix& a);

// Invertibility without forming the inverse, for the large comparison
// matrices of algebras. Over a semilocal ring a square matrix is invertible
// iff its residue rank is full at every maximal ideal; the determinant is
// reported for fields and for size <= 16.
struct InvertibilityVerdict {
  bool invertible = false;
  std::size_t size = 0;
  std::vector<std::size_t> residue_ranks;
  std::optional<Elem> determinant;
  std::optional<MaxIdeal> vanishing_ideal;
};

InvertibilityVerdict invertibility_verdict(const Matrix& a);

// Gaussian elimination on a row-major matrix of residues modulo a prime
// below 2^31, for callers that assemble large matrices as machine words.
struct WordElimination {
  std::size_t rank = 0;
  std::uint64_t determinant = 0;  // square input only
};
WordElimination eliminate_mod_prime(std::vector<std::uint64_t> entries, std::size_t rows, std::size_t cols,
                                    std::uint64_t p);

}  // namespace forge

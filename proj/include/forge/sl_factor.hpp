#pragma once

// Factorization of SL_m over a semilocal ring into elementary matrices
// e_ij(c) along a position word that depends only on m.
//
// Word for size m, 1-based positions:
//   rounds k = 1..m-1:  (1, m-k+1), ..., (m-k, m-k+1)
//   pivot:              (m, 1)
//   column clear:       (1, m), ..., (m-1, m)
//   bottom row:         (m, m-1), ..., (m, 1)
//   then the word for size m-1.
// Its length is r(1) = 0, r(m) = m(m-1)/2 + 2m - 1 + r(m-1), so
// r(2) = 4, r(3) = 12, r(4) = 25.

#include <cstddef>
#include <utility>
#include <vector>

#include "forge/matrix.hpp"

namespace forge {

struct ElementaryWord {
  std::size_t m = 0;
  std::vector<std::pair<std::size_t, std::size_t>> positions;  // 1-based (i, j), i != j
  std::vector<Elem> coeffs;  // empty, or one per position
};

ElementaryWord position_sequence(std::size_t m);
std::size_t word_length(std::size_t m);

// e_{i1 j1}(c_1) ... e_{ir jr}(c_r).
Matrix evaluate_word(const Ring& ring, const ElementaryWord& word);

// NotSL unless det(a) = 1; UnsupportedRing unless the ring is semilocal.
ElementaryWord factor_sl(const Matrix& a);

}  // namespace forge

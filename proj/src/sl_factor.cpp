#include "forge/sl_factor.hpp"

#include "forge/error.hpp"
#include "forge/forster_swan.hpp"

namespace forge {

ElementaryWord position_sequence(std::size_t m) {
  ElementaryWord w;
  w.m = m;
  for (std::size_t size = m; size >= 2; --size) {
    for (std::size_t k = 1; k < size; ++k)
      for (std::size_t i = 1; i <= size - k; ++i) w.positions.emplace_back(i, size - k + 1);
    w.positions.emplace_back(size, 1);
    for (std::size_t i = 1; i < size; ++i) w.positions.emplace_back(i, size);
    for (std::size_t j = size - 1; j >= 1; --j) w.positions.emplace_back(size, j);
  }
  return w;
}

std::size_t word_length(std::size_t m) {
  std::size_t r = 0;
  for (std::size_t s = 2; s <= m; ++s) r += s * (s - 1) / 2 + 2 * s - 1;
  return r;
}

Matrix evaluate_word(const Ring& R, const ElementaryWord& word) {
  if (word.coeffs.size() != word.positions.size())
    fail(ErrorKind::InvalidInput, "word needs one coefficient per position");
  Matrix out = Matrix::identity(R, word.m);
  for (std::size_t l = 0; l < word.positions.size(); ++l) {
    const auto [i, j] = word.positions[l];
    if (i == j || i < 1 || j < 1 || i > word.m || j > word.m)
      fail(ErrorKind::InvalidInput, "bad elementary position");
    const Elem& c = word.coeffs[l];
    if (R.is_zero(c)) continue;
    // right multiplication by e_ij(c) adds c * column i to column j
    for (std::size_t r = 0; r < word.m; ++r) out(r, j - 1) = R.add(out(r, j - 1), R.mul(c, out(r, i - 1)));
  }
  return out;
}

namespace {

void add_row_multiple(Matrix& a, std::size_t dst, const Elem& c, std::size_t src) {
  const Ring& R = a.ring();
  if (R.is_zero(c)) return;
  for (std::size_t j = 0; j < a.cols(); ++j) a(dst, j) = R.add(a(dst, j), R.mul(c, a(src, j)));
}

// Appends the coefficients for a (0-based indices inside this routine).
void factor_into(Matrix a, std::vector<Elem>& coeffs) {
  const Ring& R = a.ring();
  const std::size_t m = a.rows();
  if (m <= 1) return;
  const std::size_t last = m - 1;
  // With a 1 already in the corner no rounds are needed; they emit zeros.
  const bool corner_done = R.is_one(a(last, last));
  for (std::size_t k = 1; k < m; ++k) {
    if (corner_done) {
      coeffs.insert(coeffs.end(), m - k, R.zero());
      continue;
    }
    const std::size_t pivot = m - k;  // 0-based row m-k+1
    Vec row;
    for (std::size_t i = 0; i < pivot; ++i) row.push_back(a(i, last));
    row.push_back(a(pivot, last));
    const Vec alpha = stable_range_reduce(R, row);
    for (std::size_t i = 0; i < pivot; ++i) {
      add_row_multiple(a, i, alpha[i], pivot);
      coeffs.push_back(R.neg(alpha[i]));
    }
  }
  Elem beta = R.zero();
  if (!corner_done) {
    const auto top_inv = R.inverse(a(0, last));
    ensure(top_inv.has_value(), "stable range rounds left a non-unit corner");
    beta = R.mul(*top_inv, R.sub(R.one(), a(last, last)));
  }
  add_row_multiple(a, last, beta, 0);
  coeffs.push_back(R.neg(beta));
  ensure(R.is_one(a(last, last)), "pivot step did not produce 1");
  for (std::size_t i = 0; i < last; ++i) {
    const Elem c = a(i, last);
    add_row_multiple(a, i, R.neg(c), last);
    coeffs.push_back(c);
  }
  Vec bottom;
  for (std::size_t j = 0; j < last; ++j) {
    bottom.push_back(a(last, j));
    a(last, j) = R.zero();
  }
  Matrix lead(R, last, last);
  for (std::size_t i = 0; i < last; ++i)
    for (std::size_t j = 0; j < last; ++j) lead(i, j) = a(i, j);
  // [a' 0; r 1] = [1 0; r a'^-1 1] [a' 0; 0 1]
  const auto inv = inverse_or_certificate(lead);
  ensure(inv.invertible(), "leading block is not invertible");
  Vec gamma(last, R.zero());
  for (std::size_t j = 0; j < last; ++j)
    for (std::size_t k = 0; k < last; ++k) gamma[j] = R.add(gamma[j], R.mul(bottom[k], (*inv.inverse)(k, j)));
  for (std::size_t j = last; j-- > 0;) coeffs.push_back(gamma[j]);
  factor_into(std::move(lead), coeffs);
}

}  // namespace

ElementaryWord factor_sl(const Matrix& a) {
  const Ring& R = a.ring();
  if (!a.square() || a.rows() == 0) fail(ErrorKind::InvalidInput, "factor_sl needs a nonempty square matrix");
  if (!R.is_semilocal()) fail(ErrorKind::UnsupportedRing, R.name() + " is not semilocal");
  const Elem det = determinant(a);
  if (!R.is_one(det)) fail(ErrorKind::NotSL, "determinant is " + R.format(det) + ", not 1");
  ElementaryWord w = position_sequence(a.rows());
  factor_into(a, w.coeffs);
  ensure(w.coeffs.size() == w.positions.size(), "coefficient count differs from the word length");
  ensure(evaluate_word(R, w) == a, "elementary word does not multiply back to the input");
  return w;
}

}  // namespace forge

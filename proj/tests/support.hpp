#pragma once

// Glue between library values and the machine-integer oracles.

#include <random>
#include <vector>

#include "forge/matrix.hpp"
#include "oracles.hpp"

namespace support {

using forge::Elem;
using forge::Integer;
using forge::Matrix;
using forge::Ring;
using forge::Vec;

inline Elem z(const Ring& r, long v) { return r.from_int(Integer(v)); }

inline Vec vec(const Ring& r, std::initializer_list<long> vs) {
  Vec out;
  for (long v : vs) out.push_back(z(r, v));
  return out;
}

inline Matrix mat(const Ring& r, std::initializer_list<std::initializer_list<long>> rows) {
  std::vector<Vec> rs;
  std::size_t cols = 0;
  for (const auto& row : rows) {
    rs.push_back(vec(r, row));
    cols = row.size();
  }
  return Matrix::from_rows(r, rs, cols);
}

inline long val(const Elem& e) { return e.c[0].get_si(); }

inline oracle::IntMatrix to_int(const Matrix& m) {
  oracle::IntMatrix out(m.rows(), std::vector<oracle::i64>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t k = 0; k < m.cols(); ++k) out[i][k] = val(m(i, k));
  return out;
}

inline std::vector<oracle::i64> to_int(const Vec& v) {
  std::vector<oracle::i64> out;
  for (const auto& e : v) out.push_back(val(e));
  return out;
}

inline Matrix random_matrix(const Ring& r, std::size_t rows, std::size_t cols, std::mt19937_64& rng) {
  Matrix m(r, rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t k = 0; k < cols; ++k) m(i, k) = r.random(rng);
  return m;
}

inline Vec random_vec(const Ring& r, std::size_t n, std::mt19937_64& rng) {
  Vec v;
  for (std::size_t i = 0; i < n; ++i) v.push_back(r.random(rng));
  return v;
}

inline long draw(std::mt19937_64& rng, long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); }

// A product of `steps` random elementary matrices: a random element of SL_m.
inline Matrix random_sl(const Ring& r, std::size_t m, int steps, std::mt19937_64& rng) {
  Matrix a = Matrix::identity(r, m);
  for (int s = 0; s < steps; ++s) {
    const std::size_t i = rng() % m, j = (i + 1 + rng() % (m - 1)) % m;
    a = a * Matrix::elementary(r, m, i, j, r.random(rng));
  }
  return a;
}

}  // namespace support

#include <optional>

#include "forge/error.hpp"

namespace support {

// The ErrorKind thrown by f, or nothing when f returns normally.
template <class F>
std::optional<forge::ErrorKind> error_of(F&& f) {
  try {
    f();
  } catch (const forge::Error& e) {
    return e.kind();
  }
  return std::nullopt;
}

}  // namespace support

#include <algorithm>
#include <cstdint>
#include <variant>

#include "forge/error.hpp"
#include "forge/matrix.hpp"

namespace forge {

namespace {

void check_dimension(std::size_t n) {
  if (n > kMaxDimension)
    fail(ErrorKind::DimensionTooLarge,
         "dimension " + std::to_string(n) + " exceeds " + std::to_string(kMaxDimension));
}

void require_same_ring(const Matrix& a, const Matrix& b) {
  if (!(a.ring() == b.ring())) fail(ErrorKind::MismatchedRing, "matrices over different rings");
}

}  // namespace

Matrix::Matrix(Ring ring, std::size_t rows, std::size_t cols)
    : ring_(std::move(ring)), rows_(rows), cols_(cols) {
  check_dimension(rows);
  check_dimension(cols);
  data_.assign(rows * cols, ring_.zero());
}

Matrix Matrix::identity(const Ring& ring, std::size_t n) {
  Matrix m(ring, n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = ring.one();
  return m;
}

Matrix Matrix::from_rows(const Ring& ring, const std::vector<Vec>& rows, std::size_t cols) {
  Matrix m(ring, rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) fail(ErrorKind::InvalidInput, "ragged matrix rows");
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

Matrix Matrix::from_columns(const Ring& ring, const std::vector<Vec>& cols, std::size_t rows) {
  return from_rows(ring, cols, rows).transpose();
}

Matrix Matrix::elementary(const Ring& ring, std::size_t n, std::size_t i, std::size_t j, const Elem& c) {
  if (i == j || i >= n || j >= n) fail(ErrorKind::InvalidInput, "bad elementary matrix position");
  Matrix m = identity(ring, n);
  m(i, j) = c;
  return m;
}

Vec Matrix::row(std::size_t i) const {
  return Vec(data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
             data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
}

Vec Matrix::column(std::size_t j) const {
  Vec out;
  for (std::size_t i = 0; i < rows_; ++i) out.push_back((*this)(i, j));
  return out;
}

Matrix Matrix::columns(std::size_t begin, std::size_t end) const {
  Matrix m(ring_, rows_, end - begin);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = begin; j < end; ++j) m(i, j - begin) = (*this)(i, j);
  return m;
}

Matrix Matrix::transpose() const {
  Matrix m(ring_, cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) m(j, i) = (*this)(i, j);
  return m;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  require_same_ring(a, b);
  if (a.cols() != b.rows()) fail(ErrorKind::InvalidInput, "matrix product dimension mismatch");
  const Ring& R = a.ring();
  Matrix m(R, a.rows(), b.cols());
  if (auto n = R.word_modulus()) {
    std::vector<std::uint64_t> bw(b.rows() * b.cols()), row(b.cols());
    for (std::size_t k = 0; k < b.rows(); ++k)
      for (std::size_t j = 0; j < b.cols(); ++j) bw[k * b.cols() + j] = b(k, j).c[0].get_ui();
    for (std::size_t i = 0; i < a.rows(); ++i) {
      std::fill(row.begin(), row.end(), 0);
      for (std::size_t k = 0; k < a.cols(); ++k) {
        const std::uint64_t x = a(i, k).c[0].get_ui();
        if (!x) continue;
        const std::uint64_t* src = &bw[k * b.cols()];
        for (std::size_t j = 0; j < b.cols(); ++j) row[j] = (row[j] + x * src[j]) % *n;
      }
      for (std::size_t j = 0; j < b.cols(); ++j) m(i, j) = Elem{{Integer(static_cast<unsigned long>(row[j]))}};
    }
    return m;
  }
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (R.is_zero(a(i, k))) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) m(i, j) = R.add(m(i, j), R.mul(a(i, k), b(k, j)));
    }
  return m;
}

Matrix operator+(const Matrix& a, const Matrix& b) {
  require_same_ring(a, b);
  if (a.rows() != b.rows() || a.cols() != b.cols()) fail(ErrorKind::InvalidInput, "matrix sum dimension mismatch");
  Matrix m = a;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) m(i, j) = a.ring().add(a(i, j), b(i, j));
  return m;
}

Matrix operator-(const Matrix& a, const Matrix& b) {
  require_same_ring(a, b);
  if (a.rows() != b.rows() || a.cols() != b.cols()) fail(ErrorKind::InvalidInput, "matrix difference dimension mismatch");
  Matrix m = a;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) m(i, j) = a.ring().sub(a(i, j), b(i, j));
  return m;
}

Vec apply(const Matrix& a, const Vec& v) {
  if (v.size() != a.cols()) fail(ErrorKind::InvalidInput, "vector length does not match matrix");
  const Ring& R = a.ring();
  if (auto n = R.word_modulus()) {
    std::vector<std::uint64_t> vw(v.size());
    for (std::size_t j = 0; j < v.size(); ++j) vw[j] = v[j].c[0].get_ui();
    Vec out(a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i) {
      std::uint64_t acc = 0;
      for (std::size_t j = 0; j < a.cols(); ++j) acc = (acc + a(i, j).c[0].get_ui() * vw[j]) % *n;
      out[i] = Elem{{Integer(static_cast<unsigned long>(acc))}};
    }
    return out;
  }
  Vec out(a.rows(), R.zero());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out[i] = R.add(out[i], R.mul(a(i, j), v[j]));
  return out;
}

Matrix hstack(const Matrix& a, const Matrix& b) {
  require_same_ring(a, b);
  if (a.rows() != b.rows()) fail(ErrorKind::InvalidInput, "hstack row mismatch");
  Matrix m(a.ring(), a.rows(), a.cols() + b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) m(i, j) = a(i, j);
    for (std::size_t j = 0; j < b.cols(); ++j) m(i, a.cols() + j) = b(i, j);
  }
  return m;
}

Matrix vstack(const Matrix& a, const Matrix& b) {
  require_same_ring(a, b);
  if (a.cols() != b.cols()) fail(ErrorKind::InvalidInput, "vstack column mismatch");
  Matrix m(a.ring(), a.rows() + b.rows(), a.cols());
  for (std::size_t j = 0; j < a.cols(); ++j) {
    for (std::size_t i = 0; i < a.rows(); ++i) m(i, j) = a(i, j);
    for (std::size_t i = 0; i < b.rows(); ++i) m(a.rows() + i, j) = b(i, j);
  }
  return m;
}

bool is_identity(const Matrix& a) { return a.square() && a == Matrix::identity(a.ring(), a.rows()); }

Matrix residue(const Matrix& a, const MaxIdeal& m) {
  Matrix out(m.residue_field(), a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = a.ring().residue(a(i, j), m);
  return out;
}

namespace {

// Prime fields below 2^31 are reduced with machine integers.
std::optional<std::uint64_t> small_prime(const Ring& F) {
  if (!F.is_field()) return std::nullopt;
  return F.word_modulus();
}

std::uint64_t inv_small(std::uint64_t a, std::uint64_t p) {
  std::uint64_t result = 1, e = p - 2;
  while (e) {
    if (e & 1) result = result * a % p;
    a = a * a % p;
    e >>= 1;
  }
  return result;
}

struct SmallMatrix {
  std::size_t rows, cols;
  std::vector<std::uint64_t> v;
  std::uint64_t& at(std::size_t i, std::size_t j) { return v[i * cols + j]; }
};

SmallMatrix to_small(const Matrix& a) {
  SmallMatrix m{a.rows(), a.cols(), std::vector<std::uint64_t>(a.rows() * a.cols())};
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) m.at(i, j) = a(i, j).c[0].get_ui();
  return m;
}

// Reduces m in place; returns pivot columns. det accumulates the product of
// pivots and row-swap signs when requested. For p < 2^20 non-pivot rows are
// reduced lazily: each elimination step adds less than p^2, and at most
// kMaxDimension steps keep every entry below 2^50.
std::vector<std::size_t> rref_small(SmallMatrix& m, std::uint64_t p, std::uint64_t* det) {
  const bool lazy = p < (1U << 20);
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols && r < m.rows; ++c) {
    std::size_t piv = r;
    while (piv < m.rows && m.at(piv, c) % p == 0) ++piv;
    if (piv == m.rows) continue;
    if (piv != r) {
      for (std::size_t j = 0; j < m.cols; ++j) std::swap(m.at(piv, j), m.at(r, j));
      if (det) *det = (p - *det) % p;
    }
    std::uint64_t* src = &m.v[r * m.cols];
    for (std::size_t j = c; j < m.cols; ++j) src[j] %= p;
    if (det) *det = *det * src[c] % p;
    const std::uint64_t inv = inv_small(src[c], p);
    for (std::size_t j = c; j < m.cols; ++j) src[j] = src[j] * inv % p;
    for (std::size_t i = 0; i < m.rows; ++i) {
      if (i == r) continue;
      const std::uint64_t f = m.at(i, c) % p;
      std::uint64_t* dst = &m.v[i * m.cols];
      if (f == 0) {
        dst[c] = 0;
        continue;
      }
      const std::uint64_t g = p - f;
      if (lazy)
        for (std::size_t j = c; j < m.cols; ++j) dst[j] += g * src[j];
      else
        for (std::size_t j = c; j < m.cols; ++j) dst[j] = (dst[j] + g * src[j]) % p;
    }
    pivots.push_back(c);
    ++r;
  }
  for (auto& x : m.v) x %= p;
  return pivots;
}

}  // namespace

RowEchelon rref_over_field(const Matrix& a) {
  const Ring& F = a.ring();
  if (!F.is_field()) fail(ErrorKind::NotAField, F.name() + " is not a field");
  if (auto p = small_prime(F)) {
    SmallMatrix s = to_small(a);
    auto pivots = rref_small(s, *p, nullptr);
    Matrix out(F, a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
      for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = Elem{{Integer(static_cast<unsigned long>(s.at(i, j)))}};
    const std::size_t rank = pivots.size();
    return {std::move(out), std::move(pivots), rank};
  }
  Matrix m = a;
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t p = r;
    while (p < m.rows() && F.is_zero(m(p, c))) ++p;
    if (p == m.rows()) continue;
    if (p != r)
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(r, j));
    const Elem inv = *F.inverse(m(r, c));
    for (std::size_t j = c; j < m.cols(); ++j) m(r, j) = F.mul(m(r, j), inv);
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r || F.is_zero(m(i, c))) continue;
      const Elem f = m(i, c);
      for (std::size_t j = c; j < m.cols(); ++j) m(i, j) = F.sub(m(i, j), F.mul(f, m(r, j)));
    }
    pivots.push_back(c);
    ++r;
  }
  return {std::move(m), std::move(pivots), r};
}

std::size_t rank_over_field(const Matrix& a) { return rref_over_field(a).rank; }

std::size_t residue_rank(const Matrix& a, const MaxIdeal& m) { return rank_over_field(residue(a, m)); }

std::optional<Vec> solve_over_field(const Matrix& a, const Vec& b) {
  if (b.size() != a.rows()) fail(ErrorKind::InvalidInput, "right-hand side length mismatch");
  const Ring& F = a.ring();
  Matrix aug = hstack(a, Matrix::from_columns(F, {b}, a.rows()));
  RowEchelon e = rref_over_field(aug);
  if (!e.pivots.empty() && e.pivots.back() == a.cols()) return std::nullopt;
  Vec x(a.cols(), F.zero());
  for (std::size_t i = 0; i < e.pivots.size(); ++i) x[e.pivots[i]] = e.reduced(i, a.cols());
  return x;
}

namespace {

using IntRow = std::vector<Integer>;

void row_axpy(IntRow& dst, const Integer& c, const IntRow& src, const Integer& n) {
  for (std::size_t j = 0; j < dst.size(); ++j) dst[j] = mod(dst[j] + c * src[j], n);
}

bool is_zero_row(const IntRow& r) {
  return std::all_of(r.begin(), r.end(), [](const Integer& x) { return x == 0; });
}

// A unit u of Z/N with u*a = gcd(a, N) mod N.
Integer normalizing_unit(const Integer& a, const Integer& n) {
  const Integer g = gcd(a, n);
  const Integer m = n / g;
  if (m == 1) return 1;
  Integer u;
  mpz_invert(u.get_mpz_t(), Integer(a / g).get_mpz_t(), m.get_mpz_t());
  while (gcd(u, n) != 1) u += m;
  return u;
}

}  // namespace

Matrix howell_form(const Matrix& a) {
  const Ring& R = a.ring();
  if (R.kind() != RingKind::ZMod) fail(ErrorKind::NotZMod, R.name() + " is not Z/N");
  const Integer n = R.characteristic();
  const std::size_t cols = a.cols();
  std::vector<IntRow> rows;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    IntRow r(cols);
    for (std::size_t j = 0; j < cols; ++j) r[j] = a(i, j).c[0];
    if (!is_zero_row(r)) rows.push_back(std::move(r));
  }
  std::size_t top = 0;
  for (std::size_t c = 0; c < cols && top < rows.size(); ++c) {
    for (std::size_t i = top + 1; i < rows.size(); ++i) {
      if (rows[i][c] == 0) continue;
      Bezout bz = xgcd(rows[top][c], rows[i][c]);
      const Integer u = rows[top][c] / bz.g, v = rows[i][c] / bz.g;
      IntRow p = rows[top], q = rows[i];
      for (std::size_t j = 0; j < cols; ++j) {
        rows[top][j] = mod(bz.s * p[j] + bz.t * q[j], n);
        rows[i][j] = mod(u * q[j] - v * p[j], n);
      }
    }
    if (rows[top][c] == 0) continue;
    const Integer unit = normalizing_unit(rows[top][c], n);
    for (auto& x : rows[top]) x = mod(x * unit, n);
    const Integer g = rows[top][c];
    for (std::size_t i = 0; i < top; ++i) {
      Integer q;
      mpz_fdiv_q(q.get_mpz_t(), rows[i][c].get_mpz_t(), g.get_mpz_t());
      if (q != 0) row_axpy(rows[i], -q, rows[top], n);
    }
    // (N/g) * pivot row vanishes in column c; keep it for the later columns.
    IntRow ann = rows[top];
    for (auto& x : ann) x = mod(x * (n / g), n);
    ++top;
    if (!is_zero_row(ann)) rows.push_back(std::move(ann));
  }
  rows.resize(top);
  std::vector<Vec> out;
  for (const auto& r : rows) {
    Vec v;
    for (const auto& x : r) v.push_back(Elem{{x}});
    out.push_back(std::move(v));
  }
  return Matrix::from_rows(R, out, cols);
}

bool howell_contains(const Matrix& howell, const Vec& v) {
  const Ring& R = howell.ring();
  if (v.size() != howell.cols()) fail(ErrorKind::InvalidInput, "vector length mismatch");
  Vec w = v;
  for (std::size_t i = 0; i < howell.rows(); ++i) {
    std::size_t c = 0;
    while (c < howell.cols() && R.is_zero(howell(i, c))) ++c;
    for (std::size_t j = 0; j < c; ++j)
      if (!R.is_zero(w[j])) return false;
    const Integer& g = howell(i, c).c[0];
    if (!mpz_divisible_p(w[c].c[0].get_mpz_t(), g.get_mpz_t())) return false;
    const Elem q = R.from_int(w[c].c[0] / g);
    for (std::size_t j = c; j < howell.cols(); ++j) w[j] = R.sub(w[j], R.mul(q, howell(i, j)));
  }
  return std::all_of(w.begin(), w.end(), [&](const Elem& x) { return R.is_zero(x); });
}

namespace {

Elem det_gauss(const Matrix& a) {
  const Ring& F = a.ring();
  const std::size_t n = a.rows();
  if (auto p = small_prime(F)) {
    SmallMatrix s = to_small(a);
    std::uint64_t det = 1;
    if (rref_small(s, *p, &det).size() < n) return F.zero();
    return Elem{{Integer(static_cast<unsigned long>(det))}};
  }
  Matrix m = a;
  Elem det = F.one();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && F.is_zero(m(p, c))) ++p;
    if (p == n) return F.zero();
    if (p != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m(p, j), m(c, j));
      det = F.neg(det);
    }
    det = F.mul(det, m(c, c));
    const Elem inv = *F.inverse(m(c, c));
    for (std::size_t i = c + 1; i < n; ++i) {
      if (F.is_zero(m(i, c))) continue;
      const Elem f = F.mul(m(i, c), inv);
      for (std::size_t j = c; j < n; ++j) m(i, j) = F.sub(m(i, j), F.mul(f, m(c, j)));
    }
  }
  return det;
}

Elem det_bareiss(Matrix m) {
  const Ring& R = m.ring();
  const std::size_t n = m.rows();
  Elem prev = R.one();
  bool negate = false;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (R.is_zero(m(k, k))) {
      std::size_t p = k + 1;
      while (p < n && R.is_zero(m(p, k))) ++p;
      if (p == n) return R.zero();
      for (std::size_t j = 0; j < n; ++j) std::swap(m(p, j), m(k, j));
      negate = !negate;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j)
        m(i, j) = R.divide_exact(R.sub(R.mul(m(i, j), m(k, k)), R.mul(m(i, k), m(k, j))), prev);
    prev = m(k, k);
  }
  Elem d = n == 0 ? R.one() : m(n - 1, n - 1);
  return negate ? R.neg(d) : d;
}

Elem det_cofactor(const Matrix& m) {
  const Ring& R = m.ring();
  const std::size_t n = m.rows();
  if (n == 0) return R.one();
  if (n == 1) return m(0, 0);
  Elem acc = R.zero();
  for (std::size_t j = 0; j < n; ++j) {
    if (R.is_zero(m(0, j))) continue;
    Matrix minor(R, n - 1, n - 1);
    for (std::size_t i = 1; i < n; ++i)
      for (std::size_t k = 0, kk = 0; k < n; ++k)
        if (k != j) minor(i - 1, kk++) = m(i, k);
    Elem term = R.mul(m(0, j), det_cofactor(minor));
    acc = (j % 2 == 0) ? R.add(acc, term) : R.sub(acc, term);
  }
  return acc;
}

// Division-free characteristic polynomial (Berkowitz), highest degree first.
std::vector<Elem> berkowitz(const Matrix& a) {
  const Ring& R = a.ring();
  const std::size_t n = a.rows();
  if (n == 0) return {R.one()};
  std::vector<std::vector<std::vector<Elem>>> transforms;  // each is (k+1) x k
  for (std::size_t size = n; size > 1; --size) {
    const std::size_t k = size - 1;
    // row = -a[k, :k], col = a[:k, k], lead = a[:k, :k]
    std::vector<Elem> items{R.one(), R.neg(a(k, k))};
    Vec col(k);
    for (std::size_t i = 0; i < k; ++i) col[i] = a(i, k);
    for (std::size_t step = 0; step + 1 < size; ++step) {
      Elem dot = R.zero();
      for (std::size_t i = 0; i < k; ++i) dot = R.add(dot, R.mul(R.neg(a(k, i)), col[i]));
      items.push_back(dot);
      if (step + 2 < size) {
        Vec next(k, R.zero());
        for (std::size_t i = 0; i < k; ++i)
          for (std::size_t j = 0; j < k; ++j) next[i] = R.add(next[i], R.mul(a(i, j), col[j]));
        col = std::move(next);
      }
    }
    std::vector<std::vector<Elem>> t(size + 1, std::vector<Elem>(size, R.zero()));
    for (std::size_t c = 0; c < size; ++c)
      for (std::size_t r = c; r <= size; ++r) t[r][c] = items[r - c];
    transforms.push_back(std::move(t));
  }
  std::vector<Elem> poly{R.one(), R.neg(a(0, 0))};
  for (auto it = transforms.rbegin(); it != transforms.rend(); ++it) {
    const auto& t = *it;
    std::vector<Elem> next(t.size(), R.zero());
    for (std::size_t r = 0; r < t.size(); ++r)
      for (std::size_t c = 0; c < poly.size(); ++c) next[r] = R.add(next[r], R.mul(t[r][c], poly[c]));
    poly = std::move(next);
  }
  return poly;
}

bool small_integers_invertible(const Ring& R, std::size_t n) {
  for (std::size_t k = 2; k <= n; ++k)
    if (!R.is_unit(R.from_int(static_cast<unsigned long>(k)))) return false;
  return true;
}

std::vector<Elem> faddeev_leverrier(const Matrix& a) {
  const Ring& R = a.ring();
  const std::size_t n = a.rows();
  std::vector<Elem> c(n + 1, R.zero());  // c[k] is the coefficient of t^(n-k)
  c[0] = R.one();
  Matrix m(R, n, n);  // M_0 = 0
  for (std::size_t k = 1; k <= n; ++k) {
    Matrix next = a * m;
    for (std::size_t i = 0; i < n; ++i) next(i, i) = R.add(next(i, i), c[k - 1]);
    m = std::move(next);
    Matrix am = a * m;
    Elem tr = R.zero();
    for (std::size_t i = 0; i < n; ++i) tr = R.add(tr, am(i, i));
    c[k] = R.neg(R.mul(tr, *R.inverse(R.from_int(static_cast<unsigned long>(k)))));
  }
  return c;
}

}  // namespace

Elem determinant(const Matrix& a) {
  if (!a.square()) fail(ErrorKind::InvalidInput, "determinant of a non-square matrix");
  const Ring& R = a.ring();
  if (R.is_field()) return det_gauss(a);
  if (R.is_domain()) return det_bareiss(a);
  if (a.rows() <= 4) return det_cofactor(a);
  std::vector<Elem> cp = berkowitz(a);
  return a.rows() % 2 == 0 ? cp.back() : R.neg(cp.back());
}

std::vector<Elem> charpoly(const Matrix& a) {
  if (!a.square()) fail(ErrorKind::InvalidInput, "characteristic polynomial of a non-square matrix");
  std::vector<Elem> high = small_integers_invertible(a.ring(), a.rows()) ? faddeev_leverrier(a) : berkowitz(a);
  std::reverse(high.begin(), high.end());
  return high;
}

namespace {

// adj(a) = (-1)^(n+1) (a^(n-1) + c_1 a^(n-2) + ... + c_(n-1) I) for
// det(tI - a) = t^n + c_1 t^(n-1) + ... + c_n.
Matrix adjugate(const Matrix& a) {
  const Ring& R = a.ring();
  const std::size_t n = a.rows();
  std::vector<Elem> cp = berkowitz(a);
  Matrix acc = Matrix::identity(R, n);
  for (std::size_t k = 1; k < n; ++k) {
    acc = a * acc;
    for (std::size_t i = 0; i < n; ++i) acc(i, i) = R.add(acc(i, i), cp[k]);
  }
  if (n % 2 == 0)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) acc(i, j) = R.neg(acc(i, j));
  return acc;
}

// Gauss-Jordan with unit pivots over a semilocal ring. When no unit pivot
// exists in a column, rows below are added to the pivot row with CRT-chosen
// coefficients so that its entry is nonzero at every maximal ideal; if the
// column vanishes at some ideal, that ideal witnesses singularity.
std::variant<Matrix, MaxIdeal> semilocal_inverse(const Matrix& a) {
  const Ring& R = a.ring();
  const std::size_t n = a.rows();
  Matrix m = hstack(a, Matrix::identity(R, n));
  const auto ideals = R.max_ideals();
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    while (p < n && !R.is_unit(m(p, k))) ++p;
    if (p < n) {
      if (p != k)
        for (std::size_t j = 0; j < 2 * n; ++j) std::swap(m(p, j), m(k, j));
    } else {
      std::vector<std::vector<Elem>> targets(n);
      for (std::size_t i = k + 1; i < n; ++i) targets[i].assign(ideals.size(), Elem{});
      for (std::size_t q = 0; q < ideals.size(); ++q) {
        const MaxIdeal& mi = ideals[q];
        const Ring& F = mi.residue_field();
        for (std::size_t i = k + 1; i < n; ++i) targets[i][q] = F.zero();
        if (!F.is_zero(R.residue(m(k, k), mi))) continue;
        std::size_t i = k + 1;
        while (i < n && F.is_zero(R.residue(m(i, k), mi))) ++i;
        if (i == n) return mi;
        targets[i][q] = F.one();
      }
      for (std::size_t i = k + 1; i < n; ++i) {
        const Elem c = R.crt_lift(std::span<const Elem>(targets[i]));
        if (R.is_zero(c)) continue;
        for (std::size_t j = 0; j < 2 * n; ++j) m(k, j) = R.add(m(k, j), R.mul(c, m(i, j)));
      }
      ensure(R.is_unit(m(k, k)), "CRT pivot repair did not produce a unit");
    }
    const Elem inv = *R.inverse(m(k, k));
    for (std::size_t j = 0; j < 2 * n; ++j) m(k, j) = R.mul(m(k, j), inv);
    for (std::size_t i = 0; i < n; ++i) {
      if (i == k || R.is_zero(m(i, k))) continue;
      const Elem f = m(i, k);
      for (std::size_t j = 0; j < 2 * n; ++j) m(i, j) = R.sub(m(i, j), R.mul(f, m(k, j)));
    }
  }
  return m.columns(n, 2 * n);
}

}  // namespace

InverseCertificate inverse_or_certificate(const Matrix& a) {
  if (!a.square()) fail(ErrorKind::InvalidInput, "inverse of a non-square matrix");
  const Ring& R = a.ring();
  InverseCertificate cert{std::nullopt, determinant(a), std::nullopt};
  if (R.is_semilocal()) {
    auto result = semilocal_inverse(a);
    if (auto* inv = std::get_if<Matrix>(&result)) {
      ensure(R.is_unit(cert.determinant), "inverse found but determinant is not a unit");
      cert.inverse = std::move(*inv);
    } else {
      cert.vanishing_ideal = std::get<MaxIdeal>(result);
      ensure(R.is_zero(R.residue(cert.determinant, *cert.vanishing_ideal)),
             "singularity witness does not kill the determinant");
    }
  } else if (R.is_unit(cert.determinant)) {
    Matrix adj = adjugate(a);
    const Elem dinv = *R.inverse(cert.determinant);
    for (std::size_t i = 0; i < a.rows(); ++i)
      for (std::size_t j = 0; j < a.cols(); ++j) adj(i, j) = R.mul(adj(i, j), dinv);
    cert.inverse = std::move(adj);
  }
  if (cert.inverse) ensure(is_identity(a * *cert.inverse), "inverse fails to multiply back to identity");
  return cert;
}

}  // namespace forge

namespace forge {

InvertibilityVerdict invertibility_verdict(const Matrix& a) {
  if (!a.square()) fail(ErrorKind::InvalidInput, "invertibility of a non-square matrix");
  const Ring& R = a.ring();
  InvertibilityVerdict v;
  v.size = a.rows();
  if (!R.is_semilocal()) {
    auto cert = inverse_or_certificate(a);
    v.invertible = cert.invertible();
    v.determinant = cert.determinant;
    return v;
  }
  if (R.is_field()) {
    v.determinant = determinant(a);
    v.invertible = !R.is_zero(*v.determinant);
    v.residue_ranks.push_back(v.invertible ? a.rows() : rank_over_field(a));
    if (!v.invertible) v.vanishing_ideal = R.max_ideal(0);
    return v;
  }
  v.invertible = true;
  for (const auto& m : R.max_ideals()) {
    v.residue_ranks.push_back(residue_rank(a, m));
    if (v.residue_ranks.back() < a.rows() && v.invertible) {
      v.invertible = false;
      v.vanishing_ideal = m;
    }
  }
  if (a.rows() <= 16) {
    v.determinant = determinant(a);
    ensure(R.is_unit(*v.determinant) == v.invertible, "determinant and residue ranks disagree");
  }
  return v;
}

WordElimination eliminate_mod_prime(std::vector<std::uint64_t> entries, std::size_t rows, std::size_t cols,
                                    std::uint64_t p) {
  if (entries.size() != rows * cols) fail(ErrorKind::InvalidInput, "entry count does not match the shape");
  check_dimension(rows);
  check_dimension(cols);
  SmallMatrix m{rows, cols, std::move(entries)};
  std::uint64_t det = 1;
  WordElimination out;
  out.rank = rref_small(m, p, &det).size();
  out.determinant = rows == cols && out.rank == rows ? det : 0;
  return out;
}

}  // namespace forge

#include "forge/algebra.hpp"

#include <random>

#include "forge/error.hpp"

namespace forge {

StructureConstantAlgebra::StructureConstantAlgebra(Ring ring, std::size_t dim, std::vector<std::vector<Vec>> table,
                                                   Vec unit)
    : ring_(std::move(ring)), dim_(dim), table_(std::move(table)), unit_(std::move(unit)) {
  if (dim_ == 0) fail(ErrorKind::InvalidInput, "algebra of dimension 0");
  if (table_.size() != dim_ || unit_.size() != dim_) fail(ErrorKind::InvalidInput, "table size does not match dim");
  for (auto& row : table_) {
    if (row.size() != dim_) fail(ErrorKind::InvalidInput, "table row size does not match dim");
    for (auto& v : row) {
      if (v.size() != dim_) fail(ErrorKind::InvalidInput, "product vector size does not match dim");
      for (auto& c : v) c = ring_.make(c.c);
    }
  }
  for (auto& c : unit_) c = ring_.make(c.c);
  if ((modulus_ = ring_.word_modulus())) {
    words_.resize(dim_ * dim_ * dim_);
    for (std::size_t i = 0; i < dim_; ++i)
      for (std::size_t j = 0; j < dim_; ++j)
        for (std::size_t k = 0; k < dim_; ++k) words_[(i * dim_ + j) * dim_ + k] = table_[i][j][k].c[0].get_ui();
  }
  for (std::size_t i = 0; i < dim_; ++i) {
    const Vec bi = basis(i);
    if (mul(unit_, bi) != bi || mul(bi, unit_) != bi)
      fail(ErrorKind::InvalidInput, "unit does not act as identity on basis element " + std::to_string(i));
  }
  auto breach = [&](std::size_t i, std::size_t j, std::size_t k) {
    fail(ErrorKind::InvalidInput, "table is not associative at (" + std::to_string(i) + ", " + std::to_string(j) +
                                      ", " + std::to_string(k) + ")");
  };
  if (modulus_) {
    // (b_i b_j) b_k = sum_l T[i][j][l] b_l b_k against b_i (b_j b_k) = sum_l T[j][k][l] b_i b_l.
    const std::uint64_t n = *modulus_;
    const std::size_t d = dim_;
    std::vector<std::uint64_t> lhs(d), rhs(d);
    auto t = [&](std::size_t i, std::size_t j) { return &words_[(i * d + j) * d]; };
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j)
        for (std::size_t k = 0; k < d; ++k) {
          std::fill(lhs.begin(), lhs.end(), 0);
          std::fill(rhs.begin(), rhs.end(), 0);
          for (std::size_t l = 0; l < d; ++l) {
            if (const std::uint64_t c = t(i, j)[l])
              for (std::size_t m = 0; m < d; ++m) lhs[m] = (lhs[m] + c * t(l, k)[m]) % n;
            if (const std::uint64_t c = t(j, k)[l])
              for (std::size_t m = 0; m < d; ++m) rhs[m] = (rhs[m] + c * t(i, l)[m]) % n;
          }
          if (lhs != rhs) breach(i, j, k);
        }
    return;
  }
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = 0; j < dim_; ++j)
      for (std::size_t k = 0; k < dim_; ++k)
        if (mul(table_[i][j], basis(k)) != mul(basis(i), table_[j][k])) breach(i, j, k);
}

Vec StructureConstantAlgebra::basis(std::size_t i) const {
  Vec v = zero();
  v[i] = ring_.one();
  return v;
}

Vec StructureConstantAlgebra::zero() const { return Vec(dim_, ring_.zero()); }

Vec StructureConstantAlgebra::scalar(const Elem& r) const { return scale(r, unit_); }

Vec StructureConstantAlgebra::add(const Vec& x, const Vec& y) const {
  Vec out(dim_);
  for (std::size_t i = 0; i < dim_; ++i) out[i] = ring_.add(x[i], y[i]);
  return out;
}

Vec StructureConstantAlgebra::sub(const Vec& x, const Vec& y) const {
  Vec out(dim_);
  for (std::size_t i = 0; i < dim_; ++i) out[i] = ring_.sub(x[i], y[i]);
  return out;
}

Vec StructureConstantAlgebra::scale(const Elem& r, const Vec& x) const {
  Vec out(dim_);
  for (std::size_t i = 0; i < dim_; ++i) out[i] = ring_.mul(r, x[i]);
  return out;
}

Vec StructureConstantAlgebra::mul(const Vec& x, const Vec& y) const {
  if (modulus_) {
    const std::uint64_t n = *modulus_;
    std::vector<std::uint64_t> acc(dim_, 0), yw(dim_);
    for (std::size_t j = 0; j < dim_; ++j) yw[j] = y[j].c[0].get_ui();
    for (std::size_t i = 0; i < dim_; ++i) {
      const std::uint64_t xi = x[i].c[0].get_ui();
      if (!xi) continue;
      for (std::size_t j = 0; j < dim_; ++j) {
        if (!yw[j]) continue;
        const std::uint64_t c = xi * yw[j] % n;
        const std::uint64_t* t = &words_[(i * dim_ + j) * dim_];
        for (std::size_t k = 0; k < dim_; ++k) acc[k] = (acc[k] + c * t[k]) % n;
      }
    }
    Vec out(dim_);
    for (std::size_t k = 0; k < dim_; ++k) out[k] = Elem{{Integer(static_cast<unsigned long>(acc[k]))}};
    return out;
  }
  Vec out = zero();
  for (std::size_t i = 0; i < dim_; ++i) {
    if (ring_.is_zero(x[i])) continue;
    for (std::size_t j = 0; j < dim_; ++j) {
      if (ring_.is_zero(y[j])) continue;
      const Elem c = ring_.mul(x[i], y[j]);
      const Vec& t = table_[i][j];
      for (std::size_t k = 0; k < dim_; ++k)
        if (!ring_.is_zero(t[k])) out[k] = ring_.add(out[k], ring_.mul(c, t[k]));
    }
  }
  return out;
}

Vec StructureConstantAlgebra::pow(const Vec& x, std::size_t e) const {
  Vec result = unit_, base = x;
  while (e) {
    if (e & 1) result = mul(result, base);
    e >>= 1;
    if (e) base = mul(base, base);
  }
  return result;
}

bool StructureConstantAlgebra::is_commutative() const {
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = i + 1; j < dim_; ++j)
      if (table_[i][j] != table_[j][i]) return false;
  return true;
}

void validate_root(const Ring& ring, const RootOfUnity& root) {
  if (root.n == 0) fail(ErrorKind::BadRoot, "root order must be positive");
  if (!ring.is_one(ring.pow(root.rho, root.n)))
    fail(ErrorKind::BadRoot, ring.format(root.rho) + "^" + std::to_string(root.n) + " != 1");
  for (std::size_t k = 1; k < root.n; ++k)
    if (!ring.is_unit(ring.sub(ring.pow(root.rho, k), ring.one())))
      fail(ErrorKind::BadRoot, ring.format(root.rho) + "^" + std::to_string(k) + " - 1 is not a unit");
  if (!ring.is_unit(ring.from_int(Integer(static_cast<unsigned long>(root.n)))))
    fail(ErrorKind::BadRoot, std::to_string(root.n) + " is not a unit in " + ring.name());
}

StructureConstantAlgebra symbol_algebra(const Ring& ring, const Elem& a, const Elem& b, const RootOfUnity& root) {
  if (!ring.is_unit(a)) fail(ErrorKind::NotAUnit, "a = " + ring.format(a) + " is not a unit");
  if (!ring.is_unit(b)) fail(ErrorKind::NotAUnit, "b = " + ring.format(b) + " is not a unit");
  validate_root(ring, root);
  const std::size_t n = root.n, dim = n * n;
  const Elem rho_inv = ring.pow(root.rho, n - 1);
  std::vector<std::vector<Vec>> table(dim, std::vector<Vec>(dim, Vec(dim, ring.zero())));
  // (x^i y^j)(x^k y^l) = rho^(-jk) x^(i+k) y^(j+l)
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        for (std::size_t l = 0; l < n; ++l) {
          Elem c = ring.pow(rho_inv, (j * k) % n);
          std::size_t xi = i + k, yj = j + l;
          if (xi >= n) xi -= n, c = ring.mul(c, a);
          if (yj >= n) yj -= n, c = ring.mul(c, b);
          table[i * n + j][k * n + l][xi * n + yj] = c;
        }
  Vec unit(dim, ring.zero());
  unit[0] = ring.one();
  return StructureConstantAlgebra(ring, dim, std::move(table), std::move(unit));
}

StructureConstantAlgebra matrix_algebra(const Ring& ring, std::size_t n) {
  const std::size_t dim = n * n;
  std::vector<std::vector<Vec>> table(dim, std::vector<Vec>(dim, Vec(dim, ring.zero())));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t l = 0; l < n; ++l) table[i * n + j][j * n + l][i * n + l] = ring.one();
  Vec unit(dim, ring.zero());
  for (std::size_t i = 0; i < n; ++i) unit[i * n + i] = ring.one();
  return StructureConstantAlgebra(ring, dim, std::move(table), std::move(unit));
}

StructureConstantAlgebra dual_numbers(const Ring& ring) {
  const Elem z = ring.zero(), o = ring.one();
  std::vector<std::vector<Vec>> table(2, std::vector<Vec>(2));
  table[0][0] = Vec{o, z};
  table[0][1] = Vec{z, o};
  table[1][0] = Vec{z, o};
  table[1][1] = Vec{z, z};
  return StructureConstantAlgebra(ring, 2, std::move(table), Vec{o, z});
}

StructureConstantAlgebra tensor_product(const StructureConstantAlgebra& a, const StructureConstantAlgebra& b) {
  if (!(a.ring() == b.ring())) fail(ErrorKind::MismatchedRing, "tensor factors over different rings");
  const Ring& R = a.ring();
  const std::size_t da = a.dim(), db = b.dim(), dim = da * db;
  if (dim > kMaxDimension) fail(ErrorKind::DimensionTooLarge, "tensor product of dimension " + std::to_string(dim));
  auto pack = [&](const Vec& x, const Vec& y) {
    Vec out(dim, R.zero());
    for (std::size_t p = 0; p < da; ++p) {
      if (R.is_zero(x[p])) continue;
      for (std::size_t q = 0; q < db; ++q) out[p * db + q] = R.mul(x[p], y[q]);
    }
    return out;
  };
  std::vector<std::vector<Vec>> table(dim, std::vector<Vec>(dim));
  for (std::size_t i = 0; i < da; ++i)
    for (std::size_t j = 0; j < db; ++j)
      for (std::size_t k = 0; k < da; ++k)
        for (std::size_t l = 0; l < db; ++l)
          table[i * db + j][k * db + l] = pack(a.product(i, k), b.product(j, l));
  return StructureConstantAlgebra(R, dim, std::move(table), pack(a.unit(), b.unit()));
}

Matrix sandwich_matrix(const StructureConstantAlgebra& a) {
  const std::size_t d = a.dim();
  const Ring& R = a.ring();
  Matrix m(R, d * d, d * d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t l = 0; l < d; ++l) {
      const Vec& il = a.product(i, l);
      for (std::size_t j = 0; j < d; ++j) {
        const Vec v = a.mul(il, a.basis(j));
        for (std::size_t k = 0; k < d; ++k) m(k * d + l, i * d + j) = v[k];
      }
    }
  return m;
}

InvertibilityVerdict is_azumaya(const StructureConstantAlgebra& a) { return invertibility_verdict(sandwich_matrix(a)); }

namespace {

// Monic minimal polynomial of z (lowest degree first) by linear dependence of powers.
std::vector<Elem> minimal_polynomial(const StructureConstantAlgebra& a, const Vec& z) {
  const Ring& F = a.ring();
  std::vector<Vec> powers{a.unit()};
  for (;;) {
    const Vec next = a.mul(powers.back(), z);
    auto sol = solve_over_field(Matrix::from_columns(F, powers, a.dim()), next);
    if (sol) {
      std::vector<Elem> m;
      for (const auto& c : *sol) m.push_back(F.neg(c));
      m.push_back(F.one());
      return m;
    }
    powers.push_back(next);
  }
}

Elem eval_poly(const Ring& F, const std::vector<Elem>& f, const Elem& x) {
  Elem acc = F.zero();
  for (auto it = f.rbegin(); it != f.rend(); ++it) acc = F.add(F.mul(acc, x), *it);
  return acc;
}

Vec eval_poly(const StructureConstantAlgebra& a, const std::vector<Elem>& f, const Vec& z) {
  Vec acc = a.zero();
  for (auto it = f.rbegin(); it != f.rend(); ++it) acc = a.add(a.mul(acc, z), a.scalar(*it));
  return acc;
}

// f / (t - root), f(root) = 0.
std::vector<Elem> deflate(const Ring& F, const std::vector<Elem>& f, const Elem& root) {
  std::vector<Elem> q(f.size() - 1, F.zero());
  Elem carry = F.zero();
  for (std::size_t d = f.size() - 1; d-- > 0;) {
    carry = F.add(f[d + 1], F.mul(carry, root));
    q[d] = carry;
  }
  return q;
}

std::vector<Elem> derivative(const Ring& F, const std::vector<Elem>& f) {
  std::vector<Elem> out;
  for (std::size_t d = 1; d < f.size(); ++d)
    out.push_back(F.mul(F.from_int(Integer(static_cast<unsigned long>(d))), f[d]));
  return out;
}

std::optional<Splitting> try_candidate(const StructureConstantAlgebra& a, std::size_t n, const Vec& z,
                                       const std::vector<Elem>& field) {
  const Ring& F = a.ring();
  const auto m = minimal_polynomial(a, z);
  if (m.size() < 2) return std::nullopt;
  const auto dm = derivative(F, m);
  for (const auto& lambda : field) {
    if (!F.is_zero(eval_poly(F, m, lambda)) || F.is_zero(eval_poly(F, dm, lambda))) continue;
    const auto h = deflate(F, m, lambda);
    const Elem scale = *F.inverse(eval_poly(F, h, lambda));
    const Vec f = a.scale(scale, eval_poly(a, h, z));
    std::vector<Vec> rows;
    for (std::size_t i = 0; i < a.dim(); ++i) rows.push_back(a.mul(a.basis(i), f));
    RowEchelon ech = rref_over_field(Matrix::from_rows(F, rows, a.dim()));
    if (ech.rank != n) continue;
    Splitting s;
    s.degree = n;
    s.element = z;
    s.idempotent = f;
    for (std::size_t r = 0; r < n; ++r) s.left_ideal_basis.push_back(ech.reduced.row(r));
    for (std::size_t i = 0; i < a.dim(); ++i) {
      Matrix img(F, n, n);
      for (std::size_t r = 0; r < n; ++r) {
        const Vec v = a.mul(a.basis(i), s.left_ideal_basis[r]);
        for (std::size_t c = 0; c < n; ++c) img(c, r) = v[ech.pivots[c]];
      }
      s.images.push_back(std::move(img));
    }
    return s;
  }
  return std::nullopt;
}

constexpr std::size_t kOrderedCandidates = 4096;
constexpr std::size_t kTotalCandidates = 20000;

}  // namespace

Splitting split_over_finite_field(const StructureConstantAlgebra& a, std::uint64_t seed) {
  const Ring& F = a.ring();
  if (!F.is_field() || !F.cardinality()) fail(ErrorKind::NotAField, F.name() + " is not a finite field");
  std::size_t n = 1;
  while (n * n < a.dim()) ++n;
  if (n * n != a.dim()) fail(ErrorKind::InvalidInput, "dimension " + std::to_string(a.dim()) + " is not a square");
  const std::vector<Elem> field = F.elements();
  const std::size_t q = field.size();

  std::size_t tried = 0;
  auto attempt = [&](const Vec& z) -> std::optional<Splitting> {
    ++tried;
    auto s = try_candidate(a, n, z, field);
    if (s) {
      s->seed = seed;
      s->candidates_tried = tried;
      ensure(verify_splitting(a, *s), "splitting failed to verify");
    }
    return s;
  };

  // Coordinate order: the counter t written in base q, least significant coordinate first.
  for (std::size_t t = 0; t < kOrderedCandidates; ++t) {
    Vec z(a.dim());
    std::size_t rest = t;
    for (std::size_t k = 0; k < a.dim(); ++k) {
      z[k] = field[rest % q];
      rest /= q;
    }
    if (rest != 0) break;
    if (auto s = attempt(z)) return *s;
  }
  std::mt19937_64 rng(seed);
  while (tried < kTotalCandidates) {
    Vec z(a.dim());
    for (auto& c : z) c = field[rng() % q];
    if (auto s = attempt(z)) return *s;
  }
  fail(ErrorKind::SearchExhausted, "no rank-one idempotent after " + std::to_string(tried) +
                                       " candidates (seed " + std::to_string(seed) + ")");
}

bool verify_splitting(const StructureConstantAlgebra& a, const Splitting& s) {
  const Ring& F = a.ring();
  const std::size_t n = s.degree;
  if (n * n != a.dim() || s.images.size() != a.dim()) return false;
  if (a.mul(s.idempotent, s.idempotent) != s.idempotent) return false;
  auto combine = [&](const Vec& coords) {
    Matrix m(F, n, n);
    for (std::size_t k = 0; k < a.dim(); ++k) {
      if (F.is_zero(coords[k])) continue;
      for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) m(r, c) = F.add(m(r, c), F.mul(coords[k], s.images[k](r, c)));
    }
    return m;
  };
  if (!is_identity(combine(a.unit()))) return false;
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j)
      if (!(s.images[i] * s.images[j] == combine(a.product(i, j)))) return false;
  Matrix flat(F, n * n, a.dim());
  for (std::size_t k = 0; k < a.dim(); ++k)
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c) flat(r * n + c, k) = s.images[k](r, c);
  return rank_over_field(flat) == a.dim();
}

}  // namespace forge

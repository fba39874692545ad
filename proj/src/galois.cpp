#include "forge/galois.hpp"

#include <cstdint>

#include "forge/error.hpp"
#include "forge/forster_swan.hpp"

namespace forge {

namespace {

Matrix matrix_power(const Matrix& m, std::size_t e) {
  Matrix out = Matrix::identity(m.ring(), m.rows());
  for (std::size_t k = 0; k < e; ++k) out = out * m;
  return out;
}

std::vector<Matrix> group_elements(const GaloisExtensionData& e) {
  std::vector<Matrix> out{Matrix::identity(e.base(), e.algebra.dim())};
  for (std::size_t g = 1; g < e.order; ++g) out.push_back(out.back() * e.sigma);
  return out;
}

// Coefficients lambda with sum lambda_k u_k = 1 for the unit u of S, which
// read off t from t * 1_S; nothing when 1_S is not unimodular.
std::optional<Vec> unit_reader(const StructureConstantAlgebra& s) {
  try {
    return unimodular_combination(s.ring(), s.unit());
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::NotUnimodular) throw;
    return std::nullopt;
  }
}

// t with t * 1_S = v, or nothing.
std::optional<Elem> scalar_of(const StructureConstantAlgebra& s, const std::optional<Vec>& reader, const Vec& v) {
  if (!reader) return std::nullopt;
  const Ring& R = s.ring();
  Elem t = R.zero();
  for (std::size_t k = 0; k < v.size(); ++k) t = R.add(t, R.mul((*reader)[k], v[k]));
  if (s.scalar(t) != v) return std::nullopt;
  return t;
}

std::optional<std::uint64_t> small_prime(const Ring& R) {
  if (!R.is_field()) return std::nullopt;
  return R.word_modulus();
}

Integer binomial(unsigned long n, unsigned long k) {
  Integer out;
  mpz_bin_uiui(out.get_mpz_t(), n, k);
  return out;
}

}  // namespace

void verify_action(const GaloisExtensionData& e) {
  const auto& s = e.algebra;
  const std::size_t d = s.dim();
  if (!(e.sigma.ring() == e.base()) || e.sigma.rows() != d || e.sigma.cols() != d)
    fail(ErrorKind::InvalidInput, "sigma must be a square matrix over the base ring of size dim");
  if (e.order == 0) fail(ErrorKind::InvalidInput, "group order must be positive");
  if (forge::apply(e.sigma, s.unit()) != s.unit()) fail(ErrorKind::InvalidInput, "sigma does not fix the unit");
  std::vector<Vec> images;
  for (std::size_t i = 0; i < d; ++i) images.push_back(e.sigma.column(i));
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      if (forge::apply(e.sigma, s.product(i, j)) != s.mul(images[i], images[j]))
        fail(ErrorKind::InvalidInput,
             "sigma is not multiplicative on basis pair (" + std::to_string(i) + ", " + std::to_string(j) + ")");
  if (!is_identity(matrix_power(e.sigma, e.order)))
    fail(ErrorKind::InvalidInput, "sigma^" + std::to_string(e.order) + " is not the identity");
}

GaloisExtensionData make_extension(StructureConstantAlgebra s, Matrix sigma, std::size_t order) {
  GaloisExtensionData e{std::move(s), std::move(sigma), order};
  verify_action(e);
  return e;
}

GaloisExtensionData artin_schreier(const Ring& ring, const Elem& a) {
  const Integer ch = ring.characteristic();
  if (ch == 0 || !is_prime(ch))
    fail(ErrorKind::NotCharP, ring.name() + " does not have prime characteristic");
  if (ch > Integer(static_cast<unsigned long>(kMaxDimension)))
    fail(ErrorKind::DimensionTooLarge, "extension of degree " + to_decimal(ch));
  const std::size_t p = ch.get_ui();
  std::vector<std::vector<Vec>> table(p, std::vector<Vec>(p, Vec(p, ring.zero())));
  for (std::size_t i = 0; i < p; ++i)
    for (std::size_t j = 0; j < p; ++j) {
      const std::size_t s = i + j;
      if (s < p) {
        table[i][j][s] = ring.one();
      } else {
        // x^s = x^(s-p) (x + a)
        table[i][j][s - p + 1] = ring.add(table[i][j][s - p + 1], ring.one());
        table[i][j][s - p] = ring.add(table[i][j][s - p], a);
      }
    }
  Vec unit(p, ring.zero());
  unit[0] = ring.one();
  Matrix sigma(ring, p, p);
  for (std::size_t k = 0; k < p; ++k)
    for (std::size_t i = 0; i <= k; ++i) sigma(i, k) = ring.from_int(binomial(k, i));
  return make_extension(StructureConstantAlgebra(ring, p, std::move(table), std::move(unit)), std::move(sigma), p);
}

GaloisExtensionData split_extension(const Ring& ring, std::size_t n) {
  if (n == 0) fail(ErrorKind::InvalidInput, "split extension of degree 0");
  std::vector<std::vector<Vec>> table(n, std::vector<Vec>(n, Vec(n, ring.zero())));
  for (std::size_t i = 0; i < n; ++i) table[i][i][i] = ring.one();
  Matrix sigma(ring, n, n);
  for (std::size_t i = 0; i < n; ++i) sigma((i + 1) % n, i) = ring.one();
  return make_extension(StructureConstantAlgebra(ring, n, std::move(table), Vec(n, ring.one())), std::move(sigma),
                        n);
}

GaloisExtensionData trivial_action(const StructureConstantAlgebra& s, std::size_t order) {
  return make_extension(s, Matrix::identity(s.ring(), s.dim()), order);
}

namespace {

// Comparison matrix entries as machine words over a small prime field.
std::vector<std::uint64_t> comparison_words(const GaloisExtensionData& e, const std::vector<Matrix>& group,
                                            std::uint64_t p) {
  const auto& s = e.algebra;
  const std::size_t d = s.dim(), n = e.order;
  auto val = [](const Elem& x) { return x.c[0].get_ui(); };
  std::vector<std::uint64_t> acc(n * d * d * d, 0);
  for (std::size_t g = 0; g < n; ++g)
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t m = 0; m < d; ++m)
        for (std::size_t k = 0; k < d; ++k) {
          const std::uint64_t t = val(s.product(i, m)[k]);
          if (t == 0) continue;
          std::uint64_t* row = &acc[((g * d + k) * d + i) * d];
          for (std::size_t j = 0; j < d; ++j) row[j] = (row[j] + t * val(group[g](m, j))) % p;
        }
  return acc;
}

}  // namespace

Matrix comparison_matrix(const GaloisExtensionData& e) {
  const auto& s = e.algebra;
  const Ring& R = e.base();
  const std::size_t d = s.dim(), n = e.order;
  const auto group = group_elements(e);
  Matrix out(R, n * d, d * d);
  // entry[(g, k), (i, j)] = sum_m table[i][m][k] * g(m, j)
  if (auto p = small_prime(R)) {
    const auto acc = comparison_words(e, group, *p);
    for (std::size_t r = 0; r < n * d; ++r)
      for (std::size_t c = 0; c < d * d; ++c) out(r, c) = Elem{{Integer(static_cast<unsigned long>(acc[r * d * d + c]))}};
    return out;
  }
  for (std::size_t g = 0; g < n; ++g)
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t m = 0; m < d; ++m)
        for (std::size_t k = 0; k < d; ++k) {
          const Elem& t = s.product(i, m)[k];
          if (R.is_zero(t)) continue;
          for (std::size_t j = 0; j < d; ++j)
            out(g * d + k, i * d + j) = R.add(out(g * d + k, i * d + j), R.mul(t, group[g](m, j)));
        }
  return out;
}

InvertibilityVerdict is_galois(const GaloisExtensionData& e) {
  if (e.algebra.dim() != e.order)
    fail(ErrorKind::RankMismatch, "rank " + std::to_string(e.algebra.dim()) + " differs from group order " +
                                      std::to_string(e.order));
  if (auto p = small_prime(e.base())) {
    const std::size_t n = e.order * e.algebra.dim();
    const auto w = eliminate_mod_prime(comparison_words(e, group_elements(e), *p), n, n, *p);
    InvertibilityVerdict v;
    v.size = n;
    v.invertible = w.rank == n;
    v.residue_ranks.push_back(w.rank);
    v.determinant = Elem{{Integer(static_cast<unsigned long>(w.determinant))}};
    if (!v.invertible) v.vanishing_ideal = e.base().max_ideal(0);
    return v;
  }
  return invertibility_verdict(comparison_matrix(e));
}

Descent artin_schreier_descent(const GaloisExtensionData& e) {
  const auto& s = e.algebra;
  const Ring& R = e.base();
  const Integer ch = R.characteristic();
  if (ch == 0 || !is_prime(ch) || Integer(static_cast<unsigned long>(e.order)) != ch)
    fail(ErrorKind::NotCyclicP, "group of order " + std::to_string(e.order) + " in characteristic " + to_decimal(ch));
  if (s.dim() != e.order) fail(ErrorKind::RankMismatch, "rank differs from group order");
  const std::size_t p = e.order, d = s.dim();
  const auto group = group_elements(e);
  const auto reader = unit_reader(s);

  Vec traces;
  for (std::size_t i = 0; i < d; ++i) {
    Vec tr = s.zero();
    for (const auto& g : group) tr = s.add(tr, g.column(i));
    auto t = scalar_of(s, reader, tr);
    if (!t) fail(ErrorKind::NoSolution, "trace of basis element " + std::to_string(i) + " is not a scalar");
    traces.push_back(*t);
  }
  Vec lambda;
  try {
    lambda = unimodular_combination(R, traces);
  } catch (const Error& err) {
    if (err.kind() != ErrorKind::NotUnimodular) throw;
    fail(ErrorKind::NoSolution, "the trace is not surjective", err.ideal());
  }
  // x = -sum_i i sigma^i(c) satisfies sigma(x) - x = sum_i sigma^i(c) = 1.
  Vec x = s.zero();
  for (std::size_t i = 1; i < p; ++i)
    x = s.sub(x, s.scale(R.from_int(Integer(static_cast<unsigned long>(i))), forge::apply(group[i], lambda)));
  ensure(forge::apply(e.sigma, x) == s.add(x, s.unit()), "sigma(x) != x + 1");
  auto a = scalar_of(s, reader, s.sub(s.pow(x, p), x));
  if (!a) fail(ErrorKind::NoSolution, "x^p - x is not a scalar");
  std::vector<Vec> powers;
  for (std::size_t k = 0; k < p; ++k) powers.push_back(s.pow(x, k));
  Matrix iso = Matrix::from_columns(R, powers, d);
  const GaloisExtensionData model = artin_schreier(R, *a);
  ensure(iso * model.sigma == e.sigma * iso, "descent map is not equivariant");
  if (!invertibility_verdict(iso).invertible)
    fail(ErrorKind::NoSolution, "powers of x do not form a basis; the extension is not Galois");
  return Descent{*a, lambda, std::move(x), std::move(iso)};
}

std::optional<Elem> wp_preimage(const Ring& ring, const Elem& a) {
  const unsigned long p = ring.characteristic().get_ui();
  for (const auto& c : ring.elements())
    if (ring.sub(ring.pow(c, p), c) == a) return c;
  return std::nullopt;
}

}  // namespace forge

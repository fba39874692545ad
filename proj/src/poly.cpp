#include "forge/poly.hpp"

#include <algorithm>

#include "forge/error.hpp"

namespace forge::fp {

namespace {

Integer inverse_mod(const Integer& a, const Integer& p) {
  Integer r;
  if (mpz_invert(r.get_mpz_t(), a.get_mpz_t(), p.get_mpz_t()) == 0)
    fail(ErrorKind::InvalidInput, "coefficient not invertible modulo " + to_decimal(p));
  return r;
}

Poly random_poly(std::size_t max_len, const Integer& p, std::mt19937_64& rng) {
  const std::size_t words = mpz_sizeinbase(p.get_mpz_t(), 2) / 64 + 2;
  Poly out(max_len);
  for (auto& c : out) {
    Integer v = 0;
    for (std::size_t w = 0; w < words; ++w) {
      v <<= 64;
      v += Integer(static_cast<unsigned long>(rng()));
    }
    c = mod(v, p);
  }
  return normalize(std::move(out), p);
}

Poly pth_root(const Poly& f, const Integer& p) {
  const unsigned long pp = p.get_ui();
  Poly g;
  for (std::size_t i = 0; i < f.size(); i += pp) g.push_back(f[i]);
  return normalize(std::move(g), p);
}

using Terms = std::vector<FactorTerm>;

void squarefree_parts(const Poly& f, const Integer& p, unsigned scale, Terms& out) {
  if (degree(f) <= 0) return;
  Poly df = derivative(f, p);
  if (df.empty()) {
    squarefree_parts(pth_root(f, p), p, scale * static_cast<unsigned>(p.get_ui()), out);
    return;
  }
  Poly c = gcd(f, df, p);
  Poly w = divmod(f, c, p).quotient;
  unsigned i = 1;
  while (degree(w) > 0) {
    Poly y = gcd(w, c, p);
    Poly z = divmod(w, y, p).quotient;
    if (degree(z) > 0) out.push_back({z, i * scale});
    ++i;
    w = y;
    c = divmod(c, y, p).quotient;
  }
  if (degree(c) > 0)
    squarefree_parts(pth_root(c, p), p, scale * static_cast<unsigned>(p.get_ui()), out);
}

// Products of all irreducible factors of a squarefree monic f, grouped by degree.
std::vector<std::pair<Poly, int>> distinct_degree(Poly f, const Integer& p) {
  std::vector<std::pair<Poly, int>> out;
  Poly h = rem(x_poly(), f, p);
  int d = 0;
  while (2 * (d + 1) <= degree(f)) {
    ++d;
    h = powmod(h, p, f, p);
    Poly u = gcd(f, sub(h, x_poly(), p), p);
    if (degree(u) > 0) {
      out.emplace_back(u, d);
      f = divmod(f, u, p).quotient;
      h = rem(h, f, p);
    }
  }
  if (degree(f) > 0) out.emplace_back(f, degree(f));
  return out;
}

void equal_degree(const Poly& u, int d, const Integer& p, std::mt19937_64& rng,
                  std::vector<Poly>& out) {
  if (degree(u) == d) {
    out.push_back(u);
    return;
  }
  Integer qd;
  mpz_pow_ui(qd.get_mpz_t(), p.get_mpz_t(), static_cast<unsigned long>(d));
  for (;;) {
    Poly a = random_poly(static_cast<std::size_t>(degree(u)), p, rng);
    if (degree(a) < 1) continue;
    Poly b;
    if (p == 2) {
      Poly t = rem(a, u, p);
      b = t;
      for (int i = 1; i < d; ++i) {
        t = mulmod(t, t, u, p);
        b = add(b, t, p);
      }
    } else {
      b = sub(powmod(a, (qd - 1) / 2, u, p), constant(1, p), p);
    }
    Poly g = gcd(u, b, p);
    if (degree(g) > 0 && degree(g) < degree(u)) {
      equal_degree(g, d, p, rng, out);
      equal_degree(divmod(u, g, p).quotient, d, p, rng, out);
      return;
    }
  }
}

}  // namespace

Poly normalize(Poly f, const Integer& p) {
  for (auto& c : f) c = mod(c, p);
  while (!f.empty() && f.back() == 0) f.pop_back();
  return f;
}

int degree(const Poly& f) { return static_cast<int>(f.size()) - 1; }

Poly constant(const Integer& c, const Integer& p) { return normalize(Poly{c}, p); }

Poly x_poly() { return Poly{0, 1}; }

Poly add(const Poly& a, const Poly& b, const Integer& p) {
  Poly out(std::max(a.size(), b.size()));
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (i < a.size()) out[i] += a[i];
    if (i < b.size()) out[i] += b[i];
  }
  return normalize(std::move(out), p);
}

Poly sub(const Poly& a, const Poly& b, const Integer& p) {
  Poly out(std::max(a.size(), b.size()));
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (i < a.size()) out[i] += a[i];
    if (i < b.size()) out[i] -= b[i];
  }
  return normalize(std::move(out), p);
}

Poly mul(const Poly& a, const Poly& b, const Integer& p) {
  if (a.empty() || b.empty()) return {};
  Poly out(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  }
  return normalize(std::move(out), p);
}

Poly scale(const Poly& a, const Integer& c, const Integer& p) {
  Poly out(a);
  for (auto& x : out) x *= c;
  return normalize(std::move(out), p);
}

DivMod divmod(const Poly& a, const Poly& b, const Integer& p) {
  if (b.empty()) fail(ErrorKind::InvalidInput, "polynomial division by zero");
  const Integer lead_inv = inverse_mod(b.back(), p);
  Poly r = a;
  const int db = degree(b);
  if (degree(r) < db) return {{}, r};
  Poly q(static_cast<std::size_t>(degree(r) - db + 1));
  for (int k = degree(r); k >= db; --k) {
    Integer c = mod(r[static_cast<std::size_t>(k)] * lead_inv, p);
    if (c == 0) continue;
    q[static_cast<std::size_t>(k - db)] = c;
    for (int j = 0; j <= db; ++j) {
      auto& t = r[static_cast<std::size_t>(k - db + j)];
      t = mod(t - c * b[static_cast<std::size_t>(j)], p);
    }
  }
  return {normalize(std::move(q), p), normalize(std::move(r), p)};
}

Poly rem(const Poly& a, const Poly& b, const Integer& p) { return divmod(a, b, p).remainder; }

Poly mulmod(const Poly& a, const Poly& b, const Poly& m, const Integer& p) {
  return rem(mul(a, b, p), m, p);
}

Poly powmod(const Poly& base, const Integer& exponent, const Poly& m, const Integer& p) {
  Poly result = rem(constant(1, p), m, p);
  Poly b = rem(base, m, p);
  const std::size_t bits = mpz_sizeinbase(exponent.get_mpz_t(), 2);
  for (std::size_t i = bits; i-- > 0;) {
    result = mulmod(result, result, m, p);
    if (mpz_tstbit(exponent.get_mpz_t(), i)) result = mulmod(result, b, m, p);
  }
  return result;
}

Poly monic(const Poly& f, const Integer& p) {
  if (f.empty()) return f;
  return scale(f, inverse_mod(f.back(), p), p);
}

Poly gcd(const Poly& a, const Poly& b, const Integer& p) {
  Poly x = a, y = b;
  while (!y.empty()) {
    Poly r = rem(x, y, p);
    x = std::move(y);
    y = std::move(r);
  }
  return monic(x, p);
}

PolyBezout xgcd(const Poly& a, const Poly& b, const Integer& p) {
  Poly r0 = a, r1 = b;
  Poly s0 = constant(1, p), s1{};
  Poly t0{}, t1 = constant(1, p);
  while (!r1.empty()) {
    auto qr = divmod(r0, r1, p);
    Poly s2 = sub(s0, mul(qr.quotient, s1, p), p);
    Poly t2 = sub(t0, mul(qr.quotient, t1, p), p);
    r0 = std::move(r1);
    r1 = std::move(qr.remainder);
    s0 = std::move(s1);
    s1 = std::move(s2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (r0.empty()) return {{}, {}, {}};
  Integer inv = inverse_mod(r0.back(), p);
  return {scale(r0, inv, p), scale(s0, inv, p), scale(t0, inv, p)};
}

Poly derivative(const Poly& f, const Integer& p) {
  if (f.size() <= 1) return {};
  Poly out(f.size() - 1);
  for (std::size_t i = 1; i < f.size(); ++i) out[i - 1] = f[i] * Integer(static_cast<unsigned long>(i));
  return normalize(std::move(out), p);
}

Integer eval(const Poly& f, const Integer& x, const Integer& p) {
  Integer acc = 0;
  for (std::size_t i = f.size(); i-- > 0;) acc = mod(acc * x + f[i], p);
  return acc;
}

bool is_irreducible(const Poly& f, const Integer& p) {
  const int d = degree(f);
  if (d < 1) return false;
  if (d == 1) return true;
  Poly h = rem(x_poly(), f, p);
  for (int i = 1; i < d; ++i) {
    h = powmod(h, p, f, p);
    if (degree(gcd(sub(h, x_poly(), p), f, p)) > 0) return false;
  }
  h = powmod(h, p, f, p);
  return sub(h, rem(x_poly(), f, p), p).empty();
}

Factorization factor(const Poly& f_in, const Integer& p, std::uint64_t seed) {
  Poly f = normalize(f_in, p);
  if (f.empty()) fail(ErrorKind::InvalidInput, "cannot factor the zero polynomial");
  Factorization out{f.back(), {}, seed};
  Poly m = monic(f, p);
  Terms sqf;
  squarefree_parts(m, p, 1, sqf);
  std::mt19937_64 rng(seed);
  for (const auto& part : sqf) {
    for (const auto& [block, d] : distinct_degree(part.factor, p)) {
      std::vector<Poly> irreducibles;
      equal_degree(block, d, p, rng, irreducibles);
      for (auto& g : irreducibles) out.terms.push_back({std::move(g), part.multiplicity});
    }
  }
  std::sort(out.terms.begin(), out.terms.end(), [](const FactorTerm& a, const FactorTerm& b) {
    if (a.factor.size() != b.factor.size()) return a.factor.size() < b.factor.size();
    return std::lexicographical_compare(a.factor.begin(), a.factor.end(), b.factor.begin(),
                                        b.factor.end());
  });
  return out;
}

Poly expand(const Factorization& fact, const Integer& p) {
  Poly acc = constant(fact.leading, p);
  for (const auto& t : fact.terms)
    for (unsigned i = 0; i < t.multiplicity; ++i) acc = mul(acc, t.factor, p);
  return acc;
}

}  // namespace forge::fp

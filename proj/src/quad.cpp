#include "forge/quad.hpp"

#include <algorithm>

#include "forge/error.hpp"

namespace forge {

namespace {

using Row = std::array<Integer, 2>;

struct TrackedRow {
  Row v;
  std::vector<Integer> coef;
};

// Row echelon form of an integer n x 2 lattice by unimodular row operations,
// tracking each surviving row as a combination of the inputs.
struct Echelon {
  std::optional<TrackedRow> first;   // first coordinate > 0
  std::optional<TrackedRow> second;  // (0, h) with h > 0
};

TrackedRow combine(const Integer& s, const TrackedRow& a, const Integer& t, const TrackedRow& b) {
  TrackedRow out;
  out.v = {s * a.v[0] + t * b.v[0], s * a.v[1] + t * b.v[1]};
  out.coef.resize(a.coef.size());
  for (std::size_t i = 0; i < a.coef.size(); ++i) out.coef[i] = s * a.coef[i] + t * b.coef[i];
  return out;
}

Echelon echelon(const std::vector<Row>& rows) {
  std::vector<TrackedRow> rest;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    TrackedRow r{rows[i], std::vector<Integer>(rows.size(), 0)};
    r.coef[i] = 1;
    rest.push_back(std::move(r));
  }
  Echelon e;
  std::vector<TrackedRow> zero_first;
  for (auto& r : rest) {
    if (r.v[0] == 0) {
      zero_first.push_back(std::move(r));
      continue;
    }
    if (!e.first) {
      e.first = std::move(r);
      continue;
    }
    TrackedRow& p = *e.first;
    Bezout bz = xgcd(p.v[0], r.v[0]);
    Integer pa = p.v[0] / bz.g, ra = r.v[0] / bz.g;
    TrackedRow np = combine(bz.s, p, bz.t, r);
    zero_first.push_back(combine(ra, p, -pa, r));
    p = std::move(np);
  }
  if (e.first && e.first->v[0] < 0) e.first = combine(-1, *e.first, 0, *e.first);
  for (auto& r : zero_first) {
    if (r.v[1] == 0) continue;
    if (!e.second) {
      e.second = std::move(r);
      continue;
    }
    Bezout bz = xgcd(e.second->v[1], r.v[1]);
    e.second = combine(bz.s, *e.second, bz.t, r);
  }
  if (e.second && e.second->v[1] < 0) e.second = combine(-1, *e.second, 0, *e.second);
  return e;
}

Integer floor_sqrt(const Integer& n) {
  if (n <= 0) return 0;
  Integer r;
  mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
  return r;
}

Row times_w(const Ring& ring, const Row& r) {
  // (a + b w) w = b n + (a + b t) w
  return {r[1] * ring.quad_norm_const(), r[0] + r[1] * ring.quad_trace()};
}

}  // namespace

std::optional<std::vector<Integer>> lattice_solve(const std::vector<Row>& rows, const Row& target) {
  Echelon e = echelon(rows);
  std::vector<Integer> coef(rows.size(), 0);
  Integer r0 = target[0], r1 = target[1];
  if (e.first) {
    if (!mpz_divisible_p(r0.get_mpz_t(), e.first->v[0].get_mpz_t())) return std::nullopt;
    Integer k = r0 / e.first->v[0];
    r1 -= k * e.first->v[1];
    for (std::size_t i = 0; i < coef.size(); ++i) coef[i] += k * e.first->coef[i];
  } else if (r0 != 0) {
    return std::nullopt;
  }
  if (e.second) {
    if (!mpz_divisible_p(r1.get_mpz_t(), e.second->v[1].get_mpz_t())) return std::nullopt;
    Integer k = r1 / e.second->v[1];
    for (std::size_t i = 0; i < coef.size(); ++i) coef[i] += k * e.second->coef[i];
  } else if (r1 != 0) {
    return std::nullopt;
  }
  return coef;
}

QuadIdeal::QuadIdeal(Ring ring, const std::vector<Row>& rows) : ring_(std::move(ring)) {
  if (ring_.kind() != RingKind::QuadOrder) fail(ErrorKind::UnsupportedRing, "ideal needs a QuadOrder");
  Echelon e = echelon(rows);
  if (!e.first || !e.second) fail(ErrorKind::InvalidInput, "ideal basis must have rank 2");
  h11_ = e.first->v[0];
  h22_ = e.second->v[1];
  h12_ = mod(e.first->v[1], h22_);
  for (const auto& b : hnf()) {
    Row bw = times_w(ring_, b);
    if (!contains(Elem{{bw[0], bw[1]}}))
      fail(ErrorKind::InvalidInput, "lattice is not closed under multiplication by w");
  }
}

QuadIdeal QuadIdeal::from_generators(const Ring& ring, const std::vector<Elem>& gens) {
  std::vector<Row> rows;
  for (const auto& g : gens) {
    Row r{g.c.at(0), g.c.at(1)};
    rows.push_back(r);
    rows.push_back(times_w(ring, r));
  }
  return QuadIdeal(ring, rows);
}

QuadIdeal QuadIdeal::unit(const Ring& ring) { return QuadIdeal(ring, {{1, 0}, {0, 1}}); }

std::array<Elem, 2> QuadIdeal::basis() const { return {Elem{{h11_, h12_}}, Elem{{0, h22_}}}; }

std::array<Row, 2> QuadIdeal::hnf() const { return {Row{h11_, h12_}, Row{0, h22_}}; }

bool QuadIdeal::contains(const Elem& x) const {
  if (!mpz_divisible_p(x.c[0].get_mpz_t(), h11_.get_mpz_t())) return false;
  Integer k = x.c[0] / h11_;
  Integer rest = x.c[1] - k * h12_;
  return mpz_divisible_p(rest.get_mpz_t(), h22_.get_mpz_t()) != 0;
}

bool QuadIdeal::contains(const QuadIdeal& other) const {
  for (const auto& b : other.basis())
    if (!contains(b)) return false;
  return true;
}

QuadIdeal QuadIdeal::operator*(const QuadIdeal& other) const {
  if (!(ring_ == other.ring_)) fail(ErrorKind::MismatchedRing, "ideals over different orders");
  std::vector<Elem> gens;
  for (const auto& a : basis())
    for (const auto& b : other.basis()) gens.push_back(ring_.mul(a, b));
  return from_generators(ring_, gens);
}

QuadIdeal QuadIdeal::conjugate() const {
  std::vector<Elem> gens;
  for (const auto& b : basis()) gens.push_back(ring_.quad_conj(b));
  return from_generators(ring_, gens);
}

QuadIdeal QuadIdeal::divide(const Integer& n) const {
  for (const auto& r : hnf())
    for (const auto& x : r)
      if (!mpz_divisible_p(x.get_mpz_t(), n.get_mpz_t()))
        fail(ErrorKind::InvalidInput, "ideal is not divisible by " + to_decimal(n));
  return QuadIdeal(ring_, {Row{h11_ / n, h12_ / n}, Row{0, h22_ / n}});
}

std::string QuadIdeal::format() const {
  return "[[" + to_decimal(h11_) + "," + to_decimal(h12_) + "],[0," + to_decimal(h22_) + "]]";
}

std::vector<QuadPrime> quad_primes_over(const Ring& ring, const Integer& p) {
  // w is a root of x^2 - t x - n.
  Poly minpoly = fp::normalize({-ring.quad_norm_const(), -ring.quad_trace(), 1}, p);
  auto fact = fp::factor(minpoly, p);
  std::vector<QuadPrime> out;
  if (fact.terms.size() == 1 && fp::degree(fact.terms[0].factor) == 2) {
    out.push_back({QuadIdeal(ring, {Row{p, 0}, Row{0, p}}), Ring::ext_field(p, minpoly), 0, true});
    return out;
  }
  for (const auto& term : fact.terms) {
    Integer r = mod(-term.factor[0], p);
    out.push_back({QuadIdeal(ring, {Row{p, 0}, Row{-r, 1}, Row{0, p}}), Ring::prime_field(p), r, false});
  }
  return out;
}

Elem quad_reduce(const Ring& ring, const Elem& x, const QuadPrime& prime) {
  (void)ring;
  if (prime.inert) return prime.residue_field.make({x.c[0], x.c[1]});
  return prime.residue_field.make({x.c[0] + x.c[1] * prime.root});
}

std::vector<QuadFactor> prime_factorization(const QuadIdeal& ideal) {
  const Ring& ring = ideal.ring();
  std::vector<PrimePower> rational;
  try {
    rational = factor_integer(ideal.norm());
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::ModulusTooLarge) fail(ErrorKind::NormTooLarge, e.what());
    throw;
  }
  std::vector<QuadFactor> out;
  QuadIdeal rest = ideal;
  for (const auto& pp : rational) {
    for (const auto& prime : quad_primes_over(ring, pp.prime)) {
      unsigned e = 0;
      const QuadIdeal conj = prime.ideal.conjugate();
      const Integer pn = prime.ideal.norm();
      while (prime.ideal.contains(rest)) {
        rest = (rest * conj).divide(pn);
        ++e;
      }
      if (e > 0) out.push_back({prime.ideal, e});
    }
  }
  ensure(rest == QuadIdeal::unit(ring), "prime factorization left a nontrivial cofactor");
  ensure(recompose(ring, out) == ideal, "prime factorization does not recompose");
  return out;
}

QuadIdeal recompose(const Ring& ring, const std::vector<QuadFactor>& factors) {
  QuadIdeal acc = QuadIdeal::unit(ring);
  for (const auto& f : factors)
    for (unsigned i = 0; i < f.exponent; ++i) acc = acc * f.prime;
  return acc;
}

std::vector<Elem> small_elements(const QuadIdeal& ideal, const Integer& bound) {
  const Ring& ring = ideal.ring();
  const Integer& t = ring.quad_trace();
  const Integer& n = ring.quad_norm_const();
  std::vector<Elem> out;
  auto consider = [&](const Integer& a, const Integer& b) {
    if (a == 0 && b == 0) return;
    Elem x{{a, b}};
    Integer q = abs(ring.quad_norm(x));
    if (q <= bound) out.push_back(std::move(x));
  };
  if (n < 0) {
    // 4 N(a + b w) = (2a + t b)^2 + |D| b^2 with D = t^2 + 4n < 0.
    const Integer absd = -(t * t + 4 * n);
    const Integer bmax = floor_sqrt(4 * bound / absd) + 1;
    const Integer amax = (floor_sqrt(4 * bound) + abs(t) * bmax) / 2 + 1;
    const Integer xmax = amax / ideal.h11() + 1;
    for (Integer x = -xmax; x <= xmax; ++x) {
      const Integer a = x * ideal.h11();
      // b = x h12 + y h22 ranges over one residue class mod h22.
      Integer b = mod(x * ideal.h12() + bmax, ideal.h22()) - bmax;
      for (; b <= bmax; b += ideal.h22()) consider(a, b);
    }
  } else {
    const long box = 40;
    for (long x = -box; x <= box; ++x)
      for (long y = -box; y <= box; ++y)
        consider(x * ideal.h11(), x * ideal.h12() + y * ideal.h22());
  }
  std::sort(out.begin(), out.end(), [&](const Elem& u, const Elem& v) {
    Integer nu = abs(ring.quad_norm(u)), nv = abs(ring.quad_norm(v));
    if (nu != nv) return nu < nv;
    if (abs(u.c[1]) != abs(v.c[1])) return abs(u.c[1]) < abs(v.c[1]);
    if (abs(u.c[0]) != abs(v.c[0])) return abs(u.c[0]) < abs(v.c[0]);
    if (u.c[0] != v.c[0]) return u.c[0] > v.c[0];
    return u.c[1] > v.c[1];
  });
  return out;
}

std::optional<Elem> principal_generator(const QuadIdeal& ideal) {
  const Ring& ring = ideal.ring();
  const Integer nrm = ideal.norm();
  for (const auto& x : small_elements(ideal, nrm)) {
    if (abs(ring.quad_norm(x)) == nrm) {
      ensure(QuadIdeal::from_generators(ring, {x}) == ideal, "principal generator check failed");
      return x;
    }
  }
  return std::nullopt;
}

}  // namespace forge

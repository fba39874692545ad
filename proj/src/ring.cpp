#include "forge/ring.hpp"

#include <algorithm>
#include <sstream>
#include <type_traits>

#include "forge/error.hpp"

namespace forge {

bool operator==(const RingDescriptor& a, const RingDescriptor& b) {
  if (a.value.index() != b.value.index()) return false;
  return std::visit(
      [&](const auto& x) -> bool {
        using T = std::decay_t<decltype(x)>;
        const auto& y = std::get<T>(b.value);
        if constexpr (std::is_same_v<T, ZModDesc>) {
          return x.modulus == y.modulus;
        } else if constexpr (std::is_same_v<T, PrimeFieldDesc> || std::is_same_v<T, LocalIntDesc>) {
          return x.p == y.p;
        } else if constexpr (std::is_same_v<T, ExtFieldDesc> ||
                             std::is_same_v<T, PolyQuotientDesc>) {
          return x.p == y.p && x.modulus == y.modulus;
        } else if constexpr (std::is_same_v<T, ProductDesc>) {
          return x.factors == y.factors;
        } else {
          return x.d == y.d;
        }
      },
      a.value);
}

namespace {

struct IdealInfo {
  Integer residue_char;
  unsigned degree = 1;
  std::optional<Ring> residue_field;  // empty: the ring is its own residue field
  std::string label;
  std::size_t component = 0;
  std::size_t inner = 0;
  Poly factor;
};

Integer random_below(const Integer& n, std::mt19937_64& rng) {
  const std::size_t words = mpz_sizeinbase(n.get_mpz_t(), 2) / 64 + 2;
  Integer v = 0;
  for (std::size_t w = 0; w < words; ++w) {
    v <<= 64;
    v += Integer(static_cast<unsigned long>(rng()));
  }
  return mod(v, n);
}

std::string poly_string(const Poly& f, const char* var) {
  if (f.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = f.size(); i-- > 0;) {
    if (f[i] == 0) continue;
    if (!first) os << "+";
    first = false;
    if (i == 0 || f[i] != 1) os << to_decimal(f[i]);
    if (i > 0) {
      if (f[i] != 1) os << "*";
      os << var;
      if (i > 1) os << "^" << i;
    }
  }
  return os.str();
}

Integer inv_mod(const Integer& a, const Integer& n) {
  Integer r;
  if (mpz_invert(r.get_mpz_t(), a.get_mpz_t(), n.get_mpz_t()) == 0)
    throw InvariantBreach("inv_mod called on a non-unit");
  return r;
}

}  // namespace

struct Ring::Impl {
  RingDescriptor desc;
  RingKind kind = RingKind::ZMod;
  std::size_t width = 1;
  Integer modulus;  // ZMod N or PrimeField p
  Integer p;        // ExtField / PolyQuotient / LocalInt
  Poly f;           // ExtField / PolyQuotient modulus (monic)
  bool field = false;
  bool domain = false;
  bool semilocal = true;
  std::vector<Ring> comps;
  std::vector<std::size_t> offsets;
  Integer qd, qt, qn;
  std::vector<IdealInfo> ideals;
  std::vector<Integer> int_idempotents;
  std::vector<Poly> poly_idempotents;
};

namespace {

void require_prime(const Integer& p, const char* what) {
  if (!is_prime(p)) fail(ErrorKind::InvalidInput, std::string(what) + " " + to_decimal(p) + " is not prime");
}

Poly require_monic(const Poly& f, const Integer& p) {
  Poly g = fp::normalize(f, p);
  if (fp::degree(g) < 1) fail(ErrorKind::InvalidInput, "modulus polynomial must have degree >= 1");
  if (g.back() != 1) fail(ErrorKind::InvalidInput, "modulus polynomial must be monic");
  return g;
}

}  // namespace

Ring::Ring(const RingDescriptor& descriptor) {
  auto impl = std::make_shared<Impl>();
  impl->desc = descriptor;
  std::visit(
      [&](const auto& d) {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, ZModDesc>) {
          if (d.modulus < 2) fail(ErrorKind::InvalidInput, "ZMod modulus must be >= 2");
          impl->kind = RingKind::ZMod;
          impl->modulus = d.modulus;
          auto fact = factor_integer(d.modulus);
          impl->field = impl->domain = (fact.size() == 1 && fact[0].exponent == 1);
          for (const auto& pp : fact) {
            IdealInfo info;
            info.residue_char = pp.prime;
            info.residue_field = Ring::prime_field(pp.prime);
            info.label = "(" + to_decimal(pp.prime) + ")";
            impl->ideals.push_back(std::move(info));
            Integer q;
            mpz_pow_ui(q.get_mpz_t(), pp.prime.get_mpz_t(), pp.exponent);
            Integer cof = d.modulus / q;
            impl->int_idempotents.push_back(mod(cof * inv_mod(mod(cof, q), q), d.modulus));
          }
        } else if constexpr (std::is_same_v<T, PrimeFieldDesc>) {
          require_prime(d.p, "PrimeField characteristic");
          impl->kind = RingKind::PrimeField;
          impl->modulus = d.p;
          impl->p = d.p;
          impl->field = impl->domain = true;
          IdealInfo info;
          info.residue_char = d.p;
          info.label = "(0)";
          impl->ideals.push_back(std::move(info));
        } else if constexpr (std::is_same_v<T, ExtFieldDesc>) {
          require_prime(d.p, "ExtField characteristic");
          impl->kind = RingKind::ExtField;
          impl->p = d.p;
          impl->f = require_monic(d.modulus, d.p);
          if (!fp::is_irreducible(impl->f, d.p))
            fail(ErrorKind::InvalidInput, "ExtField modulus is not irreducible");
          impl->desc = RingDescriptor{ExtFieldDesc{d.p, impl->f}};
          impl->width = static_cast<std::size_t>(fp::degree(impl->f));
          impl->field = impl->domain = true;
          IdealInfo info;
          info.residue_char = d.p;
          info.degree = static_cast<unsigned>(impl->width);
          info.label = "(0)";
          impl->ideals.push_back(std::move(info));
        } else if constexpr (std::is_same_v<T, PolyQuotientDesc>) {
          require_prime(d.p, "PolyQuotient characteristic");
          impl->kind = RingKind::PolyQuotient;
          impl->p = d.p;
          impl->f = require_monic(d.modulus, d.p);
          impl->desc = RingDescriptor{PolyQuotientDesc{d.p, impl->f}};
          impl->width = static_cast<std::size_t>(fp::degree(impl->f));
          auto fact = fp::factor(impl->f, d.p);
          impl->field = impl->domain = (fact.terms.size() == 1 && fact.terms[0].multiplicity == 1);
          for (const auto& term : fact.terms) {
            IdealInfo info;
            info.residue_char = d.p;
            info.degree = static_cast<unsigned>(fp::degree(term.factor));
            info.residue_field = info.degree == 1 ? Ring::prime_field(d.p)
                                                  : Ring::ext_field(d.p, term.factor);
            info.factor = term.factor;
            info.label = "(" + poly_string(term.factor, "x") + ")";
            impl->ideals.push_back(std::move(info));
            Poly block = fp::constant(1, d.p);
            for (unsigned k = 0; k < term.multiplicity; ++k) block = fp::mul(block, term.factor, d.p);
            Poly cof = fp::divmod(impl->f, block, d.p).quotient;
            auto bz = fp::xgcd(fp::rem(cof, block, d.p), block, d.p);
            impl->poly_idempotents.push_back(fp::mulmod(cof, bz.s, impl->f, d.p));
          }
        } else if constexpr (std::is_same_v<T, ProductDesc>) {
          if (d.factors.empty()) fail(ErrorKind::InvalidInput, "product ring needs at least one factor");
          impl->kind = RingKind::Product;
          impl->width = 0;
          for (const auto& fd : d.factors) {
            Ring r(fd);
            impl->offsets.push_back(impl->width);
            impl->width += r.width();
            impl->semilocal = impl->semilocal && r.is_semilocal();
            impl->comps.push_back(std::move(r));
          }
          std::vector<RingDescriptor> canon;
          for (const auto& r : impl->comps) canon.push_back(r.descriptor());
          impl->desc = RingDescriptor{ProductDesc{canon}};
          impl->field = impl->domain = impl->comps.size() == 1 && impl->comps[0].is_field();
          if (impl->semilocal) {
            for (std::size_t i = 0; i < impl->comps.size(); ++i) {
              const Ring& r = impl->comps[i];
              for (std::size_t j = 0; j < r.max_ideal_count(); ++j) {
                MaxIdeal inner(r, j);
                IdealInfo info;
                info.residue_char = inner.residue_char();
                info.degree = inner.residue_degree();
                info.residue_field = inner.residue_field();
                info.component = i;
                info.inner = j;
                info.label = "[" + std::to_string(i) + "]" + inner.describe();
                impl->ideals.push_back(std::move(info));
              }
            }
          }
        } else if constexpr (std::is_same_v<T, LocalIntDesc>) {
          require_prime(d.p, "LocalInt prime");
          impl->kind = RingKind::LocalInt;
          impl->p = d.p;
          impl->width = 2;
          impl->domain = true;
          IdealInfo info;
          info.residue_char = d.p;
          info.residue_field = Ring::prime_field(d.p);
          info.label = "(" + to_decimal(d.p) + ")";
          impl->ideals.push_back(std::move(info));
        } else {
          if (d.d == 0 || d.d == 1) fail(ErrorKind::InvalidInput, "QuadOrder needs d != 0, 1");
          if (!is_squarefree(d.d))
            fail(ErrorKind::InvalidInput, "QuadOrder d = " + to_decimal(d.d) +
                                              " is not squarefree (non-maximal orders are unsupported)");
          impl->kind = RingKind::QuadOrder;
          impl->width = 2;
          impl->domain = true;
          impl->semilocal = false;
          impl->qd = d.d;
          if (mod(d.d, 4) == 1) {
            impl->qt = 1;
            impl->qn = (d.d - 1) / 4;
          } else {
            impl->qt = 0;
            impl->qn = d.d;
          }
        }
      },
      descriptor.value);
  impl_ = std::move(impl);
}

Ring Ring::zmod(const Integer& n) { return Ring(RingDescriptor{ZModDesc{n}}); }
Ring Ring::prime_field(const Integer& p) { return Ring(RingDescriptor{PrimeFieldDesc{p}}); }
Ring Ring::ext_field(const Integer& p, const Poly& f) { return Ring(RingDescriptor{ExtFieldDesc{p, f}}); }
Ring Ring::poly_quotient(const Integer& p, const Poly& f) {
  return Ring(RingDescriptor{PolyQuotientDesc{p, f}});
}
Ring Ring::product(const std::vector<Ring>& factors) {
  ProductDesc d;
  for (const auto& r : factors) d.factors.push_back(r.descriptor());
  return Ring(RingDescriptor{d});
}
Ring Ring::local_int(const Integer& p) { return Ring(RingDescriptor{LocalIntDesc{p}}); }
Ring Ring::quad_order(const Integer& d) { return Ring(RingDescriptor{QuadOrderDesc{d}}); }

const RingDescriptor& Ring::descriptor() const { return impl_->desc; }
RingKind Ring::kind() const { return impl_->kind; }
std::size_t Ring::width() const { return impl_->width; }

std::string Ring::name() const {
  const Impl& I = *impl_;
  switch (I.kind) {
    case RingKind::ZMod: return "Z/" + to_decimal(I.modulus);
    case RingKind::PrimeField: return "F_" + to_decimal(I.p);
    case RingKind::ExtField: return "F_" + to_decimal(I.p) + "[x]/(" + poly_string(I.f, "x") + ")";
    case RingKind::PolyQuotient:
      return "F_" + to_decimal(I.p) + "[x]/(" + poly_string(I.f, "x") + ")";
    case RingKind::Product: {
      std::string s;
      for (std::size_t i = 0; i < I.comps.size(); ++i) s += (i ? " x " : "") + I.comps[i].name();
      return s;
    }
    case RingKind::LocalInt: return "Z_(" + to_decimal(I.p) + ")";
    case RingKind::QuadOrder: return "O(Q(sqrt(" + to_decimal(I.qd) + ")))";
  }
  return "?";
}

Elem Ring::zero() const { return from_int(0); }
Elem Ring::one() const { return from_int(1); }

Elem Ring::from_int(const Integer& n) const {
  const Impl& I = *impl_;
  switch (I.kind) {
    case RingKind::ZMod:
    case RingKind::PrimeField: return Elem{{mod(n, I.modulus)}};
    case RingKind::ExtField:
    case RingKind::PolyQuotient: {
      Elem e{std::vector<Integer>(I.width, 0)};
      e.c[0] = mod(n, I.p);
      return e;
    }
    case RingKind::LocalInt: return Elem{{n, 1}};
    case RingKind::QuadOrder: return Elem{{n, 0}};
    case RingKind::Product: {
      std::vector<Elem> parts;
      for (const auto& r : I.comps) parts.push_back(r.from_int(n));
      return assemble(parts);
    }
  }
  return {};
}

Elem Ring::make(std::vector<Integer> coords) const {
  const Impl& I = *impl_;
  if (coords.size() != I.width)
    fail(ErrorKind::InvalidInput, "element of " + name() + " needs " + std::to_string(I.width) +
                                      " coordinates, got " + std::to_string(coords.size()));
  switch (I.kind) {
    case RingKind::ZMod:
    case RingKind::PrimeField: return Elem{{mod(coords[0], I.modulus)}};
    case RingKind::ExtField:
    case RingKind::PolyQuotient:
      for (auto& c : coords) c = mod(c, I.p);
      return Elem{std::move(coords)};
    case RingKind::LocalInt: {
      Integer num = coords[0], den = coords[1];
      if (den == 0) fail(ErrorKind::InvalidInput, "zero denominator");
      if (den < 0) {
        num = -num;
        den = -den;
      }
      Integer g = gcd(num, den);
      num /= g;
      den /= g;
      if (mpz_divisible_p(den.get_mpz_t(), I.p.get_mpz_t()))
        fail(ErrorKind::InvalidInput, "denominator divisible by " + to_decimal(I.p));
      return Elem{{num, den}};
    }
    case RingKind::QuadOrder: return Elem{std::move(coords)};
    case RingKind::Product: {
      std::vector<Elem> parts;
      for (std::size_t i = 0; i < I.comps.size(); ++i) {
        auto b = coords.begin() + static_cast<std::ptrdiff_t>(I.offsets[i]);
        parts.push_back(I.comps[i].make(std::vector<Integer>(b, b + static_cast<std::ptrdiff_t>(I.comps[i].width()))));
      }
      return assemble(parts);
    }
  }
  return {};
}

namespace {

// Product of a, b (width d) modulo the monic f of degree d.
std::vector<Integer> mul_mod_monic(const std::vector<Integer>& a, const std::vector<Integer>& b,
                                   const Poly& f, const Integer& p) {
  const std::size_t d = a.size();
  std::vector<Integer> r(2 * d - 1, 0);
  for (std::size_t i = 0; i < d; ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < d; ++j) r[i + j] += a[i] * b[j];
  }
  for (std::size_t k = r.size(); k-- > d;) {
    mpz_fdiv_r(r[k].get_mpz_t(), r[k].get_mpz_t(), p.get_mpz_t());
    if (r[k] == 0) continue;
    for (std::size_t j = 0; j < d; ++j) r[k - d + j] -= r[k] * f[j];
  }
  r.resize(d);
  for (auto& x : r) x = mod(x, p);
  return r;
}

}  // namespace

Elem Ring::add(const Elem& a, const Elem& b) const {
  const Impl& I = *impl_;
  switch (I.kind) {
    case RingKind::ZMod:
    case RingKind::PrimeField: {
      Elem r{{a.c[0] + b.c[0]}};
      if (r.c[0] >= I.modulus) r.c[0] -= I.modulus;
      return r;
    }
    case RingKind::ExtField:
    case RingKind::PolyQuotient: {
      Elem r = a;
      for (std::size_t i = 0; i < I.width; ++i) {
        r.c[i] += b.c[i];
        if (r.c[i] >= I.p) r.c[i] -= I.p;
      }
      return r;
    }
    case RingKind::LocalInt:
      return make({a.c[0] * b.c[1] + b.c[0] * a.c[1], a.c[1] * b.c[1]});
    case RingKind::QuadOrder: return Elem{{a.c[0] + b.c[0], a.c[1] + b.c[1]}};
    case RingKind::Product: {
      std::vector<Elem> parts;
      for (std::size_t i = 0; i < I.comps.size(); ++i)
        parts.push_back(I.comps[i].add(project(a, i), project(b, i)));
      return assemble(parts);
    }
  }
  return {};
}

Elem Ring::neg(const Elem& a) const {
  const Impl& I = *impl_;
  switch (I.kind) {
    case RingKind::ZMod:
    case RingKind::PrimeField: return Elem{{a.c[0] == 0 ? Integer(0) : Integer(I.modulus - a.c[0])}};
    case RingKind::ExtField:
    case RingKind::PolyQuotient: {
      Elem r = a;
      for (auto& x : r.c)
        if (x != 0) x = I.p - x;
      return r;
    }
    case RingKind::LocalInt: return Elem{{-a.c[0], a.c[1]}};
    case RingKind::QuadOrder: return Elem{{-a.c[0], -a.c[1]}};
    case RingKind::Product: {
      std::vector<Elem> parts;
      for (std::size_t i = 0; i < I.comps.size(); ++i) parts.push_back(I.comps[i].neg(project(a, i)));
      return assemble(parts);
    }
  }
  return {};
}

Elem Ring::sub(const Elem& a, const Elem& b) const {
  const Impl& I = *impl_;
  if (I.kind == RingKind::ZMod || I.kind == RingKind::PrimeField) {
    Elem r{{a.c[0] - b.c[0]}};
    if (r.c[0] < 0) r.c[0] += I.modulus;
    return r;
  }
  return add(a, neg(b));
}

Elem Ring::mul(const Elem& a, const Elem& b) const {
  const Impl& I = *impl_;
  switch (I.kind) {
    case RingKind::ZMod:
    case RingKind::PrimeField: {
      Elem r{{a.c[0] * b.c[0]}};
      mpz_fdiv_r(r.c[0].get_mpz_t(), r.c[0].get_mpz_t(), I.modulus.get_mpz_t());
      return r;
    }
    case RingKind::ExtField:
    case RingKind::PolyQuotient: return Elem{mul_mod_monic(a.c, b.c, I.f, I.p)};
    case RingKind::LocalInt: return make({a.c[0] * b.c[0], a.c[1] * b.c[1]});
    case RingKind::QuadOrder: {
      const Integer& x = a.c[0];
      const Integer& y = a.c[1];
      const Integer& u = b.c[0];
      const Integer& v = b.c[1];
      Integer yv = y * v;
      return Elem{{x * u + yv * I.qn, x * v + y * u + yv * I.qt}};
    }
    case RingKind::Product: {
      std::vector<Elem> parts;
      for (std::size_t i = 0; i < I.comps.size(); ++i)
        parts.push_back(I.comps[i].mul(project(a, i), project(b, i)));
      return assemble(parts);
    }
  }
  return {};
}

Elem Ring::pow(const Elem& a, unsigned long e) const {
  Elem result = one();
  Elem base = a;
  while (e > 0) {
    if (e & 1UL) result = mul(result, base);
    e >>= 1;
    if (e > 0) base = mul(base, base);
  }
  return result;
}

bool Ring::is_zero(const Elem& a) const {
  for (std::size_t i = 0; i < a.c.size(); ++i) {
    if (impl_->kind == RingKind::LocalInt && i == 1) break;
    if (a.c[i] != 0) return false;
  }
  return true;
}

bool Ring::is_unit(const Elem& a) const {
  const Impl& I = *impl_;
  switch (I.kind) {
    case RingKind::ZMod: return gcd(a.c[0], I.modulus) == 1;
    case RingKind::PrimeField:
    case RingKind::ExtField: return !is_zero(a);
    case RingKind::PolyQuotient: return fp::degree(fp::gcd(to_poly(a), I.f, I.p)) == 0;
    case RingKind::LocalInt: return !mpz_divisible_p(a.c[0].get_mpz_t(), I.p.get_mpz_t());
    case RingKind::QuadOrder: {
      Integer n = quad_norm(a);
      return n == 1 || n == -1;
    }
    case RingKind::Product:
      for (std::size_t i = 0; i < I.comps.size(); ++i)
        if (!I.comps[i].is_unit(project(a, i))) return false;
      return true;
  }
  return false;
}

std::optional<Elem> Ring::inverse(const Elem& a) const {
  if (!is_unit(a)) return std::nullopt;
  const Impl& I = *impl_;
  switch (I.kind) {
    case RingKind::ZMod:
    case RingKind::PrimeField: return Elem{{inv_mod(a.c[0], I.modulus)}};
    case RingKind::ExtField:
    case RingKind::PolyQuotient: return from_poly(fp::xgcd(to_poly(a), I.f, I.p).s);
    case RingKind::LocalInt: return make({a.c[1], a.c[0]});
    case RingKind::QuadOrder: {
      Elem c = quad_conj(a);
      Integer n = quad_norm(a);
      return Elem{{c.c[0] * n, c.c[1] * n}};
    }
    case RingKind::Product: {
      std::vector<Elem> parts;
      for (std::size_t i = 0; i < I.comps.size(); ++i) parts.push_back(*I.comps[i].inverse(project(a, i)));
      return assemble(parts);
    }
  }
  return std::nullopt;
}

Elem Ring::divide_exact(const Elem& a, const Elem& b) const {
  const Impl& I = *impl_;
  if (is_zero(b)) fail(ErrorKind::InvalidInput, "division by zero");
  if (is_field()) return mul(a, *inverse(b));
  switch (I.kind) {
    case RingKind::LocalInt: {
      Integer num = a.c[0] * b.c[1];
      Integer den = a.c[1] * b.c[0];
      Integer g = gcd(num, den);
      Integer reduced = den / g;
      if (mpz_divisible_p(reduced.get_mpz_t(), I.p.get_mpz_t()))
        fail(ErrorKind::InvalidInput, "quotient leaves the local ring");
      return make({num, den});
    }
    case RingKind::QuadOrder: {
      Elem t = mul(a, quad_conj(b));
      Integer n = quad_norm(b);
      if (!mpz_divisible_p(t.c[0].get_mpz_t(), n.get_mpz_t()) ||
          !mpz_divisible_p(t.c[1].get_mpz_t(), n.get_mpz_t()))
        fail(ErrorKind::InvalidInput, "quotient is not integral");
      return Elem{{t.c[0] / n, t.c[1] / n}};
    }
    default: fail(ErrorKind::UnsupportedRing, "exact division needs an integral domain");
  }
}

bool Ring::is_field() const { return impl_->field; }
bool Ring::is_domain() const { return impl_->domain; }
bool Ring::is_semilocal() const { return impl_->semilocal; }

std::optional<std::uint64_t> Ring::word_modulus() const {
  const Impl& I = *impl_;
  if (I.kind != RingKind::ZMod && I.kind != RingKind::PrimeField) return std::nullopt;
  if (I.modulus >= Integer(1UL << 31)) return std::nullopt;
  return I.modulus.get_ui();
}

Integer Ring::characteristic() const {
  const Impl& I = *impl_;
  switch (I.kind) {
    case RingKind::ZMod:
    case RingKind::PrimeField: return I.modulus;
    case RingKind::ExtField:
    case RingKind::PolyQuotient: return I.p;
    case RingKind::LocalInt:
    case RingKind::QuadOrder: return 0;
    case RingKind::Product: {
      Integer acc = 1;
      for (const auto& r : I.comps) {
        Integer c = r.characteristic();
        if (c == 0) return 0;
        acc = lcm(acc, c);
      }
      return acc;
    }
  }
  return 0;
}

std::optional<Integer> Ring::cardinality() const {
  const Impl& I = *impl_;
  switch (I.kind) {
    case RingKind::ZMod:
    case RingKind::PrimeField: return I.modulus;
    case RingKind::ExtField:
    case RingKind::PolyQuotient: {
      Integer q;
      mpz_pow_ui(q.get_mpz_t(), I.p.get_mpz_t(), I.width);
      return q;
    }
    case RingKind::Product: {
      Integer acc = 1;
      for (const auto& r : I.comps) {
        auto c = r.cardinality();
        if (!c) return std::nullopt;
        acc *= *c;
      }
      return acc;
    }
    default: return std::nullopt;
  }
}

std::vector<Elem> Ring::elements() const {
  auto card = cardinality();
  if (!card || *card > 1000000)
    fail(ErrorKind::UnsupportedRing, "element enumeration needs a finite ring of size <= 10^6");
  const Impl& I = *impl_;
  std::vector<Elem> out;
  const unsigned long n = card->get_ui();
  out.reserve(n);
  switch (I.kind) {
    case RingKind::ZMod:
    case RingKind::PrimeField:
      for (unsigned long v = 0; v < n; ++v) out.push_back(Elem{{Integer(v)}});
      break;
    case RingKind::ExtField:
    case RingKind::PolyQuotient: {
      const unsigned long p = I.p.get_ui();
      for (unsigned long v = 0; v < n; ++v) {
        Elem e{std::vector<Integer>(I.width)};
        unsigned long t = v;
        for (std::size_t i = 0; i < I.width; ++i) {
          e.c[i] = Integer(t % p);
          t /= p;
        }
        out.push_back(std::move(e));
      }
      break;
    }
    case RingKind::Product: {
      std::vector<std::vector<Elem>> lists;
      for (const auto& r : I.comps) lists.push_back(r.elements());
      std::vector<std::size_t> idx(lists.size(), 0);
      for (unsigned long v = 0; v < n; ++v) {
        std::vector<Elem> parts;
        for (std::size_t i = 0; i < lists.size(); ++i) parts.push_back(lists[i][idx[i]]);
        out.push_back(assemble(parts));
        for (std::size_t i = 0; i < idx.size(); ++i) {
          if (++idx[i] < lists[i].size()) break;
          idx[i] = 0;
        }
      }
      break;
    }
    default: break;
  }
  return out;
}

Elem Ring::random(std::mt19937_64& rng) const {
  const Impl& I = *impl_;
  switch (I.kind) {
    case RingKind::ZMod:
    case RingKind::PrimeField: return Elem{{random_below(I.modulus, rng)}};
    case RingKind::ExtField:
    case RingKind::PolyQuotient: {
      Elem e{std::vector<Integer>(I.width)};
      for (auto& x : e.c) x = random_below(I.p, rng);
      return e;
    }
    case RingKind::LocalInt: {
      std::uniform_int_distribution<long> num(-30, 30), den(1, 30);
      for (;;) {
        long d = den(rng);
        if (Integer(d) % I.p == 0) continue;
        return make({Integer(num(rng)), Integer(d)});
      }
    }
    case RingKind::QuadOrder: {
      std::uniform_int_distribution<long> dist(-20, 20);
      return Elem{{Integer(dist(rng)), Integer(dist(rng))}};
    }
    case RingKind::Product: {
      std::vector<Elem> parts;
      for (const auto& r : I.comps) parts.push_back(r.random(rng));
      return assemble(parts);
    }
  }
  return {};
}

std::size_t Ring::component_count() const {
  return impl_->kind == RingKind::Product ? impl_->comps.size() : 1;
}

const Ring& Ring::component(std::size_t i) const {
  if (impl_->kind != RingKind::Product) return *this;
  return impl_->comps.at(i);
}

Elem Ring::project(const Elem& a, std::size_t i) const {
  const Impl& I = *impl_;
  if (I.kind != RingKind::Product) return a;
  auto b = a.c.begin() + static_cast<std::ptrdiff_t>(I.offsets[i]);
  return Elem{std::vector<Integer>(b, b + static_cast<std::ptrdiff_t>(I.comps[i].width()))};
}

Elem Ring::assemble(const std::vector<Elem>& parts) const {
  if (impl_->kind != RingKind::Product) return parts.at(0);
  Elem out;
  out.c.reserve(impl_->width);
  for (const auto& p : parts) out.c.insert(out.c.end(), p.c.begin(), p.c.end());
  return out;
}

const Integer& Ring::quad_d() const { return impl_->qd; }
const Integer& Ring::quad_trace() const { return impl_->qt; }
const Integer& Ring::quad_norm_const() const { return impl_->qn; }

Integer Ring::quad_norm(const Elem& a) const {
  const Impl& I = *impl_;
  return a.c[0] * a.c[0] + I.qt * a.c[0] * a.c[1] - I.qn * a.c[1] * a.c[1];
}

Elem Ring::quad_conj(const Elem& a) const {
  return Elem{{a.c[0] + a.c[1] * impl_->qt, -a.c[1]}};
}

const Integer& Ring::poly_prime() const { return impl_->p; }
const Poly& Ring::poly_modulus() const { return impl_->f; }

Poly Ring::to_poly(const Elem& a) const {
  if (impl_->kind == RingKind::PrimeField) return fp::constant(a.c[0], impl_->p);
  return fp::normalize(a.c, impl_->p);
}

Elem Ring::from_poly(const Poly& f) const {
  const Impl& I = *impl_;
  if (I.kind == RingKind::PrimeField) {
    Poly r = fp::normalize(f, I.p);
    if (fp::degree(r) > 0) throw InvariantBreach("non-constant polynomial in a prime field");
    return Elem{{r.empty() ? Integer(0) : r[0]}};
  }
  Poly r = fp::rem(fp::normalize(f, I.p), I.f, I.p);
  Elem e{std::vector<Integer>(I.width, 0)};
  for (std::size_t i = 0; i < r.size(); ++i) e.c[i] = r[i];
  return e;
}

std::size_t Ring::max_ideal_count() const {
  if (!impl_->semilocal)
    fail(ErrorKind::UnsupportedRing, name() + " has infinitely many maximal ideals");
  return impl_->ideals.size();
}

std::vector<MaxIdeal> Ring::max_ideals() const {
  std::vector<MaxIdeal> out;
  const std::size_t n = max_ideal_count();
  for (std::size_t i = 0; i < n; ++i) out.emplace_back(*this, i);
  return out;
}

MaxIdeal Ring::max_ideal(std::size_t index) const { return MaxIdeal(*this, index); }

Elem Ring::residue(const Elem& a, const MaxIdeal& m) const {
  if (!(m.ring() == *this)) fail(ErrorKind::MismatchedRing, "ideal belongs to " + m.ring().name());
  const Impl& I = *impl_;
  const IdealInfo& info = I.ideals[m.index()];
  switch (I.kind) {
    case RingKind::ZMod: return Elem{{mod(a.c[0], info.residue_char)}};
    case RingKind::PrimeField:
    case RingKind::ExtField: return a;
    case RingKind::PolyQuotient:
      return m.residue_field().from_poly(fp::rem(to_poly(a), info.factor, I.p));
    case RingKind::LocalInt:
      return Elem{{mod(a.c[0] * inv_mod(mod(a.c[1], I.p), I.p), I.p)}};
    case RingKind::Product: {
      const Ring& r = I.comps[info.component];
      return r.residue(project(a, info.component), r.max_ideal(info.inner));
    }
    case RingKind::QuadOrder: break;
  }
  fail(ErrorKind::UnsupportedRing, "no residue map");
}

Elem Ring::crt_lift(std::span<const Elem> targets) const {
  const std::size_t n = max_ideal_count();
  if (targets.size() != n)
    fail(ErrorKind::IncompleteTargets, "expected " + std::to_string(n) + " residue targets, got " +
                                           std::to_string(targets.size()));
  const Impl& I = *impl_;
  std::vector<Elem> t;
  for (std::size_t i = 0; i < n; ++i) t.push_back(MaxIdeal(*this, i).residue_field().make(targets[i].c));
  switch (I.kind) {
    case RingKind::ZMod: {
      Integer acc = 0;
      for (std::size_t i = 0; i < n; ++i) acc += t[i].c[0] * I.int_idempotents[i];
      return Elem{{mod(acc, I.modulus)}};
    }
    case RingKind::PrimeField:
    case RingKind::ExtField: return t[0];
    case RingKind::PolyQuotient: {
      Poly acc;
      for (std::size_t i = 0; i < n; ++i) {
        Poly ti = MaxIdeal(*this, i).residue_field().to_poly(t[i]);
        acc = fp::add(acc, fp::mul(ti, I.poly_idempotents[i], I.p), I.p);
      }
      return from_poly(acc);
    }
    case RingKind::LocalInt: return Elem{{t[0].c[0], 1}};
    case RingKind::Product: {
      std::vector<Elem> parts;
      std::size_t k = 0;
      for (const auto& r : I.comps) {
        const std::size_t m = r.max_ideal_count();
        parts.push_back(r.crt_lift(std::span<const Elem>(t.data() + k, m)));
        k += m;
      }
      return assemble(parts);
    }
    case RingKind::QuadOrder: break;
  }
  fail(ErrorKind::UnsupportedRing, "no CRT lifting");
}

Elem Ring::crt_lift(const std::map<std::size_t, Elem>& targets) const {
  const std::size_t n = max_ideal_count();
  std::vector<Elem> t;
  for (std::size_t i = 0; i < n; ++i) {
    auto it = targets.find(i);
    if (it == targets.end())
      fail(ErrorKind::IncompleteTargets, "no residue target for ideal " + std::to_string(i), i);
    t.push_back(it->second);
  }
  if (targets.size() != n) fail(ErrorKind::IncompleteTargets, "targets name unknown ideals");
  return crt_lift(std::span<const Elem>(t));
}

std::string Ring::format(const Elem& a) const {
  const Impl& I = *impl_;
  switch (I.kind) {
    case RingKind::ZMod:
    case RingKind::PrimeField: return to_decimal(a.c[0]);
    case RingKind::ExtField:
    case RingKind::PolyQuotient: return poly_string(to_poly(a), "x");
    case RingKind::LocalInt:
      return a.c[1] == 1 ? to_decimal(a.c[0]) : to_decimal(a.c[0]) + "/" + to_decimal(a.c[1]);
    case RingKind::QuadOrder: return to_decimal(a.c[0]) + (a.c[1] < 0 ? "" : "+") + to_decimal(a.c[1]) + "*w";
    case RingKind::Product: {
      std::string s = "(";
      for (std::size_t i = 0; i < I.comps.size(); ++i)
        s += (i ? ", " : "") + I.comps[i].format(project(a, i));
      return s + ")";
    }
  }
  return "?";
}

bool operator==(const Ring& a, const Ring& b) {
  return a.impl_ == b.impl_ || a.impl_->desc == b.impl_->desc;
}

MaxIdeal::MaxIdeal(Ring ring, std::size_t index) : ring_(std::move(ring)), index_(index) {
  if (index_ >= ring_.max_ideal_count())
    fail(ErrorKind::InvalidInput, "maximal ideal index out of range");
}

const Integer& MaxIdeal::residue_char() const { return ring_.impl_->ideals[index_].residue_char; }
unsigned MaxIdeal::residue_degree() const { return ring_.impl_->ideals[index_].degree; }

const Ring& MaxIdeal::residue_field() const {
  const auto& f = ring_.impl_->ideals[index_].residue_field;
  return f ? *f : ring_;
}

std::string MaxIdeal::describe() const { return ring_.impl_->ideals[index_].label; }

Vec residue_vector(const Ring& ring, const Vec& v, const MaxIdeal& m) {
  Vec out;
  out.reserve(v.size());
  for (const auto& x : v) out.push_back(ring.residue(x, m));
  return out;
}

}  // namespace forge

#include <doctest.h>

#include "forge/algebra.hpp"
#include "support.hpp"

using namespace forge;
using support::error_of;
using support::vec;
using support::z;

namespace {

Ring f9() { return Ring::ext_field(Integer(3), {Integer(1), Integer(0), Integer(1)}); }

// Units of a finite field, from its element list.
std::vector<Elem> units(const Ring& f) {
  std::vector<Elem> out;
  for (const auto& x : f.elements())
    if (!f.is_zero(x)) out.push_back(x);
  return out;
}

}  // namespace

TEST_SUITE("azumaya-galois") {
  TEST_CASE("symbol algebra tables") {
    const Ring f5 = Ring::prime_field(Integer(5));
    const auto one = symbol_algebra(f5, z(f5, 2), z(f5, 3), {f5.one(), 1});
    CHECK(one.dim() == 1);

    const auto q = symbol_algebra(f5, z(f5, 4), z(f5, 4), {z(f5, 4), 2});
    // basis x^i y^j at index 2i + j: 1, y, x, xy
    CHECK(q.product(2, 2) == vec(f5, {4, 0, 0, 0}));  // x^2 = -1
    CHECK(q.product(1, 1) == vec(f5, {4, 0, 0, 0}));  // y^2 = -1
    CHECK(q.product(2, 1) == vec(f5, {0, 0, 0, 1}));  // xy
    CHECK(q.product(1, 2) == vec(f5, {0, 0, 0, 4}));  // yx = -xy
    CHECK_FALSE(q.is_commutative());
  }

  TEST_CASE("symbol algebra relations hold for every root and unit pair") {
    for (long p : {5L, 7L, 13L}) {
      const Ring f = Ring::prime_field(Integer(p));
      for (std::size_t n : {2u, 3u}) {
        if ((p - 1) % n) continue;
        // rho: an element of exact order n
        Elem rho = f.one();
        for (const auto& x : units(f))
          if (!f.is_one(x) && f.is_one(f.pow(x, n))) {
            rho = x;
            break;
          }
        for (long a = 1; a < p; a += 3)
          for (long b = 1; b < p; b += 2) {
            const auto s = symbol_algebra(f, z(f, a), z(f, b), {rho, n});
            const Vec x = s.basis(n), y = s.basis(1);
            CHECK(s.pow(x, n) == s.scalar(z(f, a)));
            CHECK(s.pow(y, n) == s.scalar(z(f, b)));
            CHECK(s.mul(x, y) == s.scale(rho, s.mul(y, x)));
          }
      }
    }
  }

  TEST_CASE("symbol algebra preconditions") {
    const Ring r6 = Ring::zmod(Integer(6));
    const Ring f7 = Ring::prime_field(Integer(7));
    CHECK(error_of([&] { symbol_algebra(r6, z(r6, 2), z(r6, 1), {z(r6, 5), 2}); }) == ErrorKind::NotAUnit);
    // 2 is not a unit in Z/6
    CHECK(error_of([&] { symbol_algebra(r6, z(r6, 1), z(r6, 1), {z(r6, 5), 2}); }) == ErrorKind::BadRoot);
    // 2^3 = 1 in F_7 but 2 has order 3, not 2
    CHECK(error_of([&] { symbol_algebra(f7, z(f7, 1), z(f7, 1), {z(f7, 2), 2}); }) == ErrorKind::BadRoot);
    // 1 is not primitive
    CHECK(error_of([&] { symbol_algebra(f7, z(f7, 1), z(f7, 1), {z(f7, 1), 3}); }) == ErrorKind::BadRoot);
  }

  TEST_CASE("Azumaya criterion examples") {
    const Ring r15 = Ring::zmod(Integer(15));
    CHECK(is_azumaya(matrix_algebra(r15, 2)).invertible);
    const auto base = is_azumaya(matrix_algebra(r15, 1));
    CHECK(base.invertible);
    CHECK(base.size == 1);

    const auto dual = is_azumaya(dual_numbers(r15));
    CHECK_FALSE(dual.invertible);
    REQUIRE(dual.determinant.has_value());
    CHECK_FALSE(r15.is_unit(*dual.determinant));
  }

  TEST_CASE("dual numbers: the sandwich matrix built by hand is singular") {
    // basis 1, e with e^2 = 0; entry [(k*2 + l), (i*2 + j)] = coordinate k of b_i b_l b_j
    auto mult = [](int u, int v) { return u + v; };  // exponent of e; >= 2 vanishes
    oracle::IntMatrix s(4, std::vector<oracle::i64>(4, 0));
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        for (int l = 0; l < 2; ++l) {
          const int e = mult(mult(i, l), j);
          if (e < 2) s[e * 2 + l][i * 2 + j] = 1;
        }
    for (long p : {2L, 3L, 7L}) {
      const Ring f = Ring::prime_field(Integer(p));
      CHECK(support::to_int(sandwich_matrix(dual_numbers(f))) == s);
      CHECK(oracle::det_mod(s, p) == 0);
    }
  }

  TEST_CASE("symbol algebras are Azumaya over rings with a root of unity") {
    const Ring r15 = Ring::zmod(Integer(15));  // 2 and -1 are units
    CHECK(is_azumaya(symbol_algebra(r15, z(r15, 2), z(r15, 7), {z(r15, 14), 2})).invertible);
    const Ring r91 = Ring::zmod(Integer(91));  // 9 has order 3 mod 7 and mod 13
    const Elem rho = z(r91, 9);
    CHECK(r91.is_one(r91.pow(rho, 3)));
    CHECK(is_azumaya(symbol_algebra(r91, z(r91, 2), z(r91, 3), {rho, 3})).invertible);
  }

  TEST_CASE("splitting over finite fields") {
    const Ring f5 = Ring::prime_field(Integer(5));
    const Elem minus_one = z(f5, 4);
    // (1, b): the eigen-idempotent of x
    const auto s1 = symbol_algebra(f5, f5.one(), z(f5, 2), {minus_one, 2});
    const auto sp1 = split_over_finite_field(s1);
    CHECK(verify_splitting(s1, sp1));
    // (1/2)(1 + x) is idempotent
    const Vec e = s1.scale(*f5.inverse(z(f5, 2)), s1.add(s1.unit(), s1.basis(2)));
    CHECK(s1.mul(e, e) == e);

    // (2, 3) over F_5: z^2 = 2u^2 + 3v^2 has a nontrivial solution
    bool isotropic = false;
    for (int zz = 0; zz < 5; ++zz)
      for (int u = 0; u < 5; ++u)
        for (int v = 0; v < 5; ++v)
          if ((zz || u || v) && (zz * zz - 2 * u * u - 3 * v * v) % 5 == 0) isotropic = true;
    CHECK(isotropic);
    const auto s23 = symbol_algebra(f5, z(f5, 2), z(f5, 3), {minus_one, 2});
    const auto sp = split_over_finite_field(s23);
    CHECK(sp.degree == 2);
    CHECK(verify_splitting(s23, sp));
    CHECK(s23.mul(sp.idempotent, sp.idempotent) == sp.idempotent);

    // (g, g) over F_9 with g = 1 + i of order 8
    const Ring f = f9();
    const Elem g = f.make({Integer(1), Integer(1)});
    CHECK(f.is_one(f.pow(g, 8)));
    CHECK_FALSE(f.is_one(f.pow(g, 4)));
    const auto sg = symbol_algebra(f, g, g, {f.from_int(Integer(-1)), 2});
    CHECK(verify_splitting(sg, split_over_finite_field(sg)));
  }

  TEST_CASE("splitting is reproducible and rejects non-squares") {
    const Ring f7 = Ring::prime_field(Integer(7));
    const auto s = symbol_algebra(f7, z(f7, 3), z(f7, 5), {z(f7, 2), 3});
    const auto a = split_over_finite_field(s, 99), b = split_over_finite_field(s, 99);
    CHECK(a.idempotent == b.idempotent);
    CHECK(a.images == b.images);
    CHECK(a.degree == 3);
    CHECK(error_of([&] { split_over_finite_field(dual_numbers(f7)); }) == ErrorKind::InvalidInput);
  }

  TEST_CASE("Brauer relation shadow: (a, b) (x) (a, c) and (a, bc)") {
    const Ring f5 = Ring::prime_field(Integer(5));
    const RootOfUnity root{z(f5, 4), 2};
    for (long a : {2L, 3L})
      for (long b : {2L, 4L}) {
        const long c = 3;
        const auto ab = symbol_algebra(f5, z(f5, a), z(f5, b), root);
        const auto ac = symbol_algebra(f5, z(f5, a), z(f5, c), root);
        const auto abc = symbol_algebra(f5, z(f5, a), z(f5, b * c), root);
        const auto t = tensor_product(ab, ac);
        CHECK(t.dim() == 16);
        CHECK(is_azumaya(t).invertible);
        CHECK(is_azumaya(abc).invertible);
        CHECK(verify_splitting(t, split_over_finite_field(t)));
        CHECK(verify_splitting(abc, split_over_finite_field(abc)));
      }
  }

  TEST_CASE("structure constants are validated") {
    const Ring f2 = Ring::prime_field(Integer(2));
    // b0 * b1 = 0, so b0 is not a two-sided unit
    std::vector<std::vector<Vec>> table{{vec(f2, {1, 0}), vec(f2, {0, 0})}, {vec(f2, {0, 0}), vec(f2, {1, 0})}};
    CHECK(error_of([&] { StructureConstantAlgebra(f2, 2, table, vec(f2, {1, 0})); }) == ErrorKind::InvalidInput);

    // unit b0, b1 b1 = b2, b1 b2 = 0, b2 b1 = b1: (b1 b1) b1 = b1 but b1 (b1 b1) = 0
    for (const Ring& r : {Ring::prime_field(Integer(3)), f9()}) {
      auto e = [&](long a, long b, long c) { return vec(r, {a, b, c}); };
      std::vector<std::vector<Vec>> t{{e(1, 0, 0), e(0, 1, 0), e(0, 0, 1)},
                                      {e(0, 1, 0), e(0, 0, 1), e(0, 0, 0)},
                                      {e(0, 0, 1), e(0, 1, 0), e(0, 0, 0)}};
      CHECK(error_of([&] { StructureConstantAlgebra(r, 3, t, e(1, 0, 0)); }) == ErrorKind::InvalidInput);
    }
  }
}

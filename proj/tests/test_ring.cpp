#include <doctest.h>

#include <cstdlib>
#include <map>
#include <set>

#include "forge/quad.hpp"
#include "support.hpp"

using namespace forge;
using support::error_of;
using support::z;

namespace {

std::set<long> residue_chars(const Ring& r) {
  std::set<long> out;
  for (const auto& m : r.max_ideals()) out.insert(m.residue_char().get_si());
  return out;
}

Ring f4() { return Ring::ext_field(Integer(2), {Integer(1), Integer(1), Integer(1)}); }

}  // namespace

TEST_SUITE("ring-kernel") {
  TEST_CASE("maximal ideals of Z/N follow the prime factorization") {
    CHECK(residue_chars(Ring::zmod(Integer(12))) == std::set<long>{2, 3});
    CHECK(Ring::prime_field(Integer(7)).max_ideal_count() == 1);

    const Ring big = Ring::zmod(Integer(360360));
    const auto expected = oracle::prime_factors(360360);
    CHECK(big.max_ideal_count() == expected.size());
    CHECK(residue_chars(big) == std::set<long>(expected.begin(), expected.end()));
  }

  TEST_CASE("maximal ideals of products and localizations") {
    const Ring prod = Ring::product({Ring::prime_field(Integer(2)), Ring::zmod(Integer(15))});
    CHECK(prod.max_ideal_count() == 3);
    CHECK(residue_chars(prod) == std::set<long>{2, 3, 5});
    CHECK(Ring::local_int(Integer(5)).max_ideal_count() == 1);
    CHECK(f4().max_ideal(0).residue_degree() == 2);
  }

  TEST_CASE("quadratic orders have no finite maximal spectrum") {
    CHECK(error_of([] { Ring::quad_order(Integer(-5)).max_ideals(); }) == ErrorKind::UnsupportedRing);
  }

  TEST_CASE("factoring beyond the trial bound fails loudly") {
    // 1000003 * 1000033: both factors exceed the default bound of 10^6.
    CHECK(error_of([] { Ring::zmod(Integer("1000036000099")).max_ideals(); }) == ErrorKind::ModulusTooLarge);
  }

  TEST_CASE("malformed descriptors are rejected") {
    CHECK(error_of([] { Ring::zmod(Integer(1)); }) == ErrorKind::InvalidInput);
    CHECK(error_of([] { Ring::prime_field(Integer(9)); }).has_value());
    // x^2 + 1 = (x + 1)^2 over F_2
    CHECK(error_of([] { Ring::ext_field(Integer(2), {Integer(1), Integer(0), Integer(1)}); }).has_value());
    CHECK(error_of([] { Ring::quad_order(Integer(12)); }).has_value());
    CHECK(error_of([] { Ring::quad_order(Integer(1)); }).has_value());
    CHECK(error_of([] { Ring::product({}); }).has_value());
  }

  TEST_CASE("residue maps") {
    const Ring r12 = Ring::zmod(Integer(12));
    const MaxIdeal three = r12.max_ideal(1);
    CHECK(three.residue_char() == 3);
    CHECK(r12.residue(z(r12, 10), three) == z(three.residue_field(), 1));
    for (const auto& m : r12.max_ideals()) CHECK(m.residue_field().is_one(r12.residue(r12.one(), m)));

    const Ring loc = Ring::local_int(Integer(2));
    const Elem five_thirds = loc.make({Integer(5), Integer(3)});
    // 5 * 3^-1 = 1 * 1 in F_2
    CHECK(loc.residue(five_thirds, loc.max_ideal(0)) == z(loc.max_ideal(0).residue_field(), 1));
  }

  TEST_CASE("residue maps are ring homomorphisms") {
    std::mt19937_64 rng(101);
    const std::vector<Ring> rings{Ring::zmod(Integer(360)), Ring::local_int(Integer(3)), f4(),
                                  Ring::poly_quotient(Integer(3), {Integer(0), Integer(0), Integer(0), Integer(1)}),
                                  Ring::product({Ring::zmod(Integer(4)), Ring::prime_field(Integer(5))})};
    for (const auto& r : rings)
      for (int trial = 0; trial < 100; ++trial) {
        const Elem x = r.random(rng), y = r.random(rng);
        for (const auto& m : r.max_ideals()) {
          const Ring& k = m.residue_field();
          CHECK(r.residue(r.add(x, y), m) == k.add(r.residue(x, m), r.residue(y, m)));
          CHECK(r.residue(r.mul(x, y), m) == k.mul(r.residue(x, m), r.residue(y, m)));
        }
      }
  }

  TEST_CASE("units are exactly the elements with no vanishing residue") {
    std::vector<Ring> rings;
    for (long n = 2; n <= 60; ++n) rings.push_back(Ring::zmod(Integer(n)));
    rings.push_back(f4());
    rings.push_back(Ring::poly_quotient(Integer(3), {Integer(0), Integer(0), Integer(1)}));
    rings.push_back(Ring::poly_quotient(Integer(2), {Integer(0), Integer(1), Integer(1)}));
    rings.push_back(Ring::product({Ring::zmod(Integer(4)), Ring::prime_field(Integer(3))}));
    for (const auto& r : rings)
      for (const auto& x : r.elements()) {
        bool residues_nonzero = true;
        for (const auto& m : r.max_ideals()) residues_nonzero = residues_nonzero && !m.residue_field().is_zero(r.residue(x, m));
        CHECK(r.is_unit(x) == residues_nonzero);
        // independent witness: some y with xy = 1
        bool has_inverse = false;
        for (const auto& y : r.elements()) has_inverse = has_inverse || r.is_one(r.mul(x, y));
        CHECK(r.is_unit(x) == has_inverse);
      }
  }

  TEST_CASE("CRT lifting examples") {
    const Ring r6 = Ring::zmod(Integer(6));
    const auto ideals = r6.max_ideals();
    const std::vector<Elem> t1{z(ideals[0].residue_field(), 1), z(ideals[1].residue_field(), 2)};
    const Elem five = r6.crt_lift(t1);
    CHECK(five == z(r6, 5));
    CHECK(5 % 2 == 1);
    CHECK(5 % 3 == 2);
    const std::vector<Elem> t0{ideals[0].residue_field().zero(), ideals[1].residue_field().zero()};
    CHECK(r6.is_zero(r6.crt_lift(t0)));

    const Ring f2 = Ring::prime_field(Integer(2)), f3 = Ring::prime_field(Integer(3));
    const Ring prod = Ring::product({f2, f3});
    const std::vector<Elem> tp{z(f2, 1), z(f3, 2)};
    CHECK(prod.crt_lift(tp) == prod.assemble({z(f2, 1), z(f3, 2)}));
  }

  TEST_CASE("CRT lifting needs every ideal") {
    const Ring r6 = Ring::zmod(Integer(6));
    std::map<std::size_t, Elem> partial{{0, z(r6.max_ideal(0).residue_field(), 1)}};
    CHECK(error_of([&] { r6.crt_lift(partial); }) == ErrorKind::IncompleteTargets);
    CHECK(error_of([] {
            const Ring q = Ring::quad_order(Integer(-1));
            q.crt_lift(std::map<std::size_t, Elem>{});
          }) == ErrorKind::UnsupportedRing);
  }

  TEST_CASE("CRT lift then residue is the identity on residue tuples") {
    std::mt19937_64 rng(202);
    for (int trial = 0; trial < 300; ++trial) {
      const long n = support::draw(rng, 2, 1000000);
      const Ring r = Ring::zmod(Integer(n));
      std::vector<Elem> targets;
      for (const auto& m : r.max_ideals()) targets.push_back(m.residue_field().random(rng));
      const Elem x = r.crt_lift(targets);
      std::size_t i = 0;
      for (const auto& m : r.max_ideals()) {
        CHECK(oracle::mod(support::val(x), m.residue_char().get_si()) == support::val(targets[i]));
        ++i;
      }
    }
    const Ring mixed = Ring::product({f4(), Ring::local_int(Integer(7)), Ring::zmod(Integer(90))});
    for (int trial = 0; trial < 50; ++trial) {
      std::vector<Elem> targets;
      for (const auto& m : mixed.max_ideals()) targets.push_back(m.residue_field().random(rng));
      const Elem x = mixed.crt_lift(targets);
      for (std::size_t i = 0; i < targets.size(); ++i) CHECK(mixed.residue(x, mixed.max_ideal(i)) == targets[i]);
    }
  }

  TEST_CASE("LocalInt elements are reduced fractions with denominators prime to p") {
    const Ring loc = Ring::local_int(Integer(3));
    const Elem half = loc.make({Integer(2), Integer(4)});
    CHECK(half.c == std::vector<Integer>{Integer(1), Integer(2)});
    CHECK(error_of([&] { loc.make({Integer(1), Integer(3)}); }).has_value());
    CHECK(loc.is_unit(half));
    CHECK_FALSE(loc.is_unit(loc.make({Integer(3), Integer(2)})));
  }
}

TEST_SUITE("polynomial factorization") {
  using forge::Poly;

  TEST_CASE("factorizations of small polynomials") {
    const Integer two(2), five(5);
    // x^2 + 1 = (x + 1)^2 over F_2
    auto f = fp::factor({Integer(1), Integer(0), Integer(1)}, two);
    REQUIRE(f.terms.size() == 1);
    CHECK(f.terms[0].factor == Poly{Integer(1), Integer(1)});
    CHECK(f.terms[0].multiplicity == 2);
    CHECK(oracle::mod(1 + 2 * 1 + 1, 2) == 0);  // (x+1)^2 = x^2 + 2x + 1, middle term vanishes

    f = fp::factor({Integer(0), Integer(1)}, five);
    REQUIRE(f.terms.size() == 1);
    CHECK(f.terms[0].factor == Poly{Integer(0), Integer(1)});

    // x^2 + 1 over F_5: roots 2 and 3 since 4 = 9 = -1
    CHECK(oracle::mod(2 * 2 + 1, 5) == 0);
    CHECK(oracle::mod(3 * 3 + 1, 5) == 0);
    f = fp::factor({Integer(1), Integer(0), Integer(1)}, five);
    REQUIRE(f.terms.size() == 2);
    CHECK(f.terms[0].factor == Poly{Integer(2), Integer(1)});
    CHECK(f.terms[1].factor == Poly{Integer(3), Integer(1)});
  }

  TEST_CASE("factorizations multiply back and have irreducible factors") {
    std::mt19937_64 rng(303);
    for (long p : {2L, 3L, 5L, 7L, 13L}) {
      const Integer P(p);
      for (int trial = 0; trial < 40; ++trial) {
        Poly f;
        const int deg = static_cast<int>(support::draw(rng, 1, 8));
        for (int i = 0; i <= deg; ++i) f.push_back(Integer(support::draw(rng, 0, p - 1)));
        if (f.back() == 0) f.back() = 1;
        const auto fact = fp::factor(f, P, rng());
        CHECK(fp::expand(fact, P) == fp::normalize(f, P));
        for (const auto& t : fact.terms) {
          CHECK(fp::is_irreducible(t.factor, P));
          // oracle for low degree: irreducible iff no root in F_p
          if (fp::degree(t.factor) >= 2 && fp::degree(t.factor) <= 3)
            for (long x = 0; x < p; ++x) {
              long v = 0;
              for (std::size_t i = t.factor.size(); i-- > 0;) v = oracle::mod(v * x + t.factor[i].get_si(), p);
              CHECK(v != 0);
            }
        }
      }
    }
  }
}

TEST_SUITE("quadratic ideals") {
  TEST_CASE("the ideal (2, 1 + sqrt(-5))") {
    const Ring r = Ring::quad_order(Integer(-5));
    const QuadIdeal i = QuadIdeal::from_generators(r, {z(r, 2), r.make({Integer(1), Integer(1)})});
    // Z-basis {2, 1 + w}: determinant 2 * 1
    CHECK(i.norm() == 2);
    CHECK(i.hnf()[0][0] * i.hnf()[1][1] == 2);
    CHECK(i * i == QuadIdeal::from_generators(r, {z(r, 2)}));
    CHECK(QuadIdeal::unit(r).norm() == 1);
  }

  TEST_CASE("ideals are closed under multiplication by w") {
    const Ring r = Ring::quad_order(Integer(-5));
    // Z-span of {2, w} is not an ideal: w * w = -5 is odd
    CHECK(error_of([&] { QuadIdeal(r, {{Integer(2), Integer(0)}, {Integer(0), Integer(1)}}); }).has_value());
  }

  TEST_CASE("prime factorizations recompose and have prime-power norms") {
    std::mt19937_64 rng(404);
    for (long d : {-5L, -1L, -3L, 2L, 5L, -23L}) {
      const Ring r = Ring::quad_order(Integer(d));
      for (int trial = 0; trial < 30; ++trial) {
        Elem a = r.make({Integer(support::draw(rng, -30, 30)), Integer(support::draw(rng, -30, 30))});
        if (r.is_zero(a)) a = r.one();
        const Elem b = r.make({Integer(support::draw(rng, -30, 30)), Integer(support::draw(rng, -30, 30))});
        const QuadIdeal i = QuadIdeal::from_generators(r, {a, b});
        const auto factors = prime_factorization(i);
        CHECK(recompose(r, factors) == i);
        for (const auto& f : factors) {
          const auto primes = oracle::prime_factors(f.prime.norm().get_si());
          CHECK(primes.size() == 1);
        }
      }
    }
  }
}

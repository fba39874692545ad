#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "forge/forster_swan.hpp"
#include "support.hpp"

using namespace forge;
using support::error_of;
using support::mat;
using support::val;
using support::vec;
using support::z;

namespace {

std::vector<std::vector<oracle::i64>> relator_columns(const ModulePresentation& m) {
  std::vector<std::vector<oracle::i64>> out;
  for (std::size_t k = 0; k < m.relations().cols(); ++k) out.push_back(support::to_int(m.relations().column(k)));
  return out;
}

}  // namespace

TEST_SUITE("forster-swan") {
  TEST_CASE("extend_generator examples") {
    const Ring r6 = Ring::zmod(Integer(6));
    const auto m = ModulePresentation::free(r6, 1);
    const Vec v = extend_generator(m, r6.max_ideals(), {});
    CHECK(val(v[0]) % 2 != 0);
    CHECK(val(v[0]) % 3 != 0);

    const Ring f5 = Ring::prime_field(Integer(5));
    const auto m2 = ModulePresentation::free(f5, 2);
    const Vec w = extend_generator(m2, f5.max_ideals(), {vec(f5, {1, 0})});
    CHECK(val(w[1]) != 0);

    CHECK(extend_generator(m, {}, {}) == vec(r6, {0}));
  }

  TEST_CASE("extend_generator refuses saturated fibers") {
    const Ring r6 = Ring::zmod(Integer(6));
    const auto m = ModulePresentation::free(r6, 1);
    // 3 spans the fiber at (2) but not at (3)
    try {
      extend_generator(m, r6.max_ideals(), {vec(r6, {3})});
      FAIL("expected PreconditionViolated");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::PreconditionViolated);
      REQUIRE(e.ideal().has_value());
      CHECK(r6.max_ideal(*e.ideal()).residue_char() == 2);
    }
  }

  TEST_CASE("repeated extension terminates in max fiber dimension steps") {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 150; ++trial) {
      const long n = support::draw(rng, 2, 360);
      const Ring r = Ring::zmod(Integer(n));
      const std::size_t t = support::draw(rng, 1, 5);
      const ModulePresentation m(r, t, support::random_matrix(r, t, support::draw(rng, 0, 3), rng));
      std::vector<Vec> elems;
      std::size_t steps = 0;
      for (;;) {
        std::vector<MaxIdeal> s;
        for (const auto& p : r.max_ideals())
          if (span_dim_at(m, elems, p) < fiber_dimension(m, p)) s.push_back(p);
        if (s.empty()) break;
        std::vector<std::size_t> before;
        for (const auto& p : s) before.push_back(span_dim_at(m, elems, p));
        elems.push_back(extend_generator(m, s, elems));
        for (std::size_t i = 0; i < s.size(); ++i) CHECK(span_dim_at(m, elems, s[i]) == before[i] + 1);
        ++steps;
      }
      CHECK(steps == max_fiber_dimension(m));
      CHECK(generates(m, elems).generates);
    }
  }

  TEST_CASE("minimal_generators examples") {
    const Ring r12 = Ring::zmod(Integer(12));
    const ModulePresentation m(r12, 2, mat(r12, {{2, 0}, {0, 3}}));
    const auto g = minimal_generators(m);
    CHECK(g.size() == 1);
    CHECK(generates(m, g).generates);

    const auto free3 = ModulePresentation::free(r12, 3);
    CHECK(minimal_generators(free3).size() == 3);

    const ModulePresentation zero(r12, 2, Matrix::identity(r12, 2));
    CHECK(minimal_generators(zero).empty());
  }

  TEST_CASE("minimal_generators is a true minimum (brute force)") {
    std::mt19937_64 rng(32);
    int checked = 0;
    while (checked < 60) {
      const long n = support::draw(rng, 2, 24);
      const std::size_t t = support::draw(rng, 1, n <= 6 ? 3 : 2);
      const Ring r = Ring::zmod(Integer(n));
      const ModulePresentation m(r, t, support::random_matrix(r, t, support::draw(rng, 0, 2), rng));
      const auto g = minimal_generators(m);
      CHECK(g.size() == max_fiber_dimension(m));
      CHECK(generates(m, g).generates);
      std::size_t cost = 1;
      for (std::size_t k = 1; k < g.size(); ++k) cost *= static_cast<std::size_t>(std::pow(n, t));
      if (cost > 20000) continue;
      CHECK(oracle::min_generators_brute(relator_columns(m), n, t, g.size()) == g.size());
      ++checked;
    }
  }

  TEST_CASE("minimal_generators over other semilocal rings") {
    std::mt19937_64 rng(33);
    const std::vector<Ring> rings{Ring::local_int(Integer(5)),
                                  Ring::ext_field(Integer(3), {Integer(1), Integer(0), Integer(1)}),
                                  Ring::product({Ring::zmod(Integer(8)), Ring::prime_field(Integer(3))})};
    for (const auto& r : rings)
      for (int trial = 0; trial < 20; ++trial) {
        const std::size_t t = support::draw(rng, 1, 3);
        const ModulePresentation m(r, t, support::random_matrix(r, t, support::draw(rng, 0, 2), rng));
        const auto g = minimal_generators(m);
        CHECK(g.size() == max_fiber_dimension(m));
        CHECK(generates(m, g).generates);
      }
    CHECK(error_of([] { minimal_generators(ModulePresentation::free(Ring::quad_order(Integer(-5)), 1)); }) ==
          ErrorKind::UnsupportedRing);
  }

  TEST_CASE("lift_generators examples") {
    const Ring r6 = Ring::zmod(Integer(6));
    const auto m = ModulePresentation::free(r6, 1);

    const auto lifted = lift_generators(m, vec(r6, {2}), {vec(r6, {3})});
    const long a = val(lifted.lifted[0][0]);
    CHECK(oracle::mod(a - 3, 2) == 0);
    CHECK(std::gcd(a, 6L) == 1);
    CHECK(verify_lift(m, vec(r6, {2}), {vec(r6, {3})}, lifted));

    // I = R: no constraint, output generates
    const auto unit = lift_generators(m, vec(r6, {1}), {vec(r6, {0})});
    CHECK(generates(m, unit.lifted).generates);

    // I = 0: a = b
    const auto rigid = lift_generators(m, vec(r6, {0}), {vec(r6, {5})});
    CHECK(rigid.lifted[0] == vec(r6, {5}));
    CHECK(error_of([&] { lift_generators(m, vec(r6, {0}), {vec(r6, {2})}); }) == ErrorKind::NotGeneratingModI);
    CHECK(error_of([&] { lift_generators(ModulePresentation::free(r6, 2), vec(r6, {2}), {vec(r6, {1, 0})}); }) ==
          ErrorKind::TooFewElements);
  }

  TEST_CASE("lifted generators agree with b modulo I*M") {
    std::mt19937_64 rng(34);
    int done = 0;
    while (done < 150) {
      const long n = support::draw(rng, 2, 360);
      const Ring r = Ring::zmod(Integer(n));
      const std::size_t t = support::draw(rng, 1, 3);
      const ModulePresentation m(r, t, support::random_matrix(r, t, support::draw(rng, 0, 2), rng));
      const Vec ideal = support::random_vec(r, support::draw(rng, 1, 2), rng);
      std::vector<Vec> b;
      for (std::size_t k = max_fiber_dimension(m) + support::draw(rng, 0, 1); k > 0; --k)
        b.push_back(support::random_vec(r, t, rng));
      LiftResult res{{}, {}};
      try {
        res = lift_generators(m, ideal, b);
      } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::NotGeneratingModI);
        continue;
      }
      ++done;
      CHECK(verify_lift(m, ideal, b, res));
      // independent recomputation of a_j - b_j from the certificate
      for (std::size_t j = 0; j < b.size(); ++j)
        for (std::size_t c = 0; c < t; ++c) {
          long diff = 0;
          for (std::size_t k = 0; k < ideal.size(); ++k)
            diff += val(ideal[k]) * val(res.certificate.corrections[j][k][c]) % n;
          CHECK(oracle::mod(val(res.lifted[j][c]) - val(b[j][c]) - diff, n) == 0);
        }
      std::vector<std::vector<oracle::i64>> gens = relator_columns(m);
      for (const auto& a : res.lifted) gens.push_back(support::to_int(a));
      if (std::pow(n, t) <= 50000) CHECK(oracle::spans_everything(gens, n, t));
    }
  }

  TEST_CASE("stable range examples") {
    const Ring r6 = Ring::zmod(Integer(6));
    const auto alpha = stable_range_reduce(r6, vec(r6, {2, 3}));
    CHECK(std::gcd(oracle::mod(2 + val(alpha[0]) * 3, 6), 6L) == 1);

    const Ring r12 = Ring::zmod(Integer(12));
    CHECK(stable_range_reduce(r12, vec(r12, {1, 0, 7})) == vec(r12, {0, 0}));
    for (long n : {2L, 7L, 30L}) {
      const Ring r = Ring::zmod(Integer(n));
      CHECK(stable_range_reduce(r, vec(r, {0, 1})) == vec(r, {1}));
    }
    CHECK(error_of([&] { stable_range_reduce(r6, vec(r6, {2, 4})); }) == ErrorKind::NotUnimodular);
  }

  TEST_CASE("iterated stable range reduction ends in a unit") {
    std::mt19937_64 rng(35);
    for (int trial = 0; trial < 300; ++trial) {
      const long n = support::draw(rng, 2, 1000000);
      const Ring r = Ring::zmod(Integer(n));
      Vec row = support::random_vec(r, support::draw(rng, 2, 5), rng);
      row.back() = r.one();  // guarantees unimodularity
      std::shuffle(row.begin(), row.end(), rng);
      while (row.size() > 1) {
        const Vec alpha = stable_range_reduce(r, row);
        Vec next;
        for (std::size_t i = 0; i + 1 < row.size(); ++i) next.push_back(r.add(row[i], r.mul(alpha[i], row.back())));
        row = next;
      }
      CHECK(std::gcd(val(row[0]), n) == 1);
    }
  }

  TEST_CASE("unimodular combinations") {
    std::mt19937_64 rng(36);
    for (int trial = 0; trial < 200; ++trial) {
      const long n = support::draw(rng, 2, 100000);
      const Ring r = Ring::zmod(Integer(n));
      const Vec row = support::random_vec(r, support::draw(rng, 1, 4), rng);
      long g = n;
      for (const auto& x : row) g = std::gcd(g, val(x));
      if (g != 1) {
        CHECK(error_of([&] { unimodular_combination(r, row); }) == ErrorKind::NotUnimodular);
        continue;
      }
      const Vec c = unimodular_combination(r, row);
      __int128 sum = 0;
      for (std::size_t i = 0; i < row.size(); ++i) sum += static_cast<__int128>(val(c[i])) * val(row[i]);
      CHECK(static_cast<long>(sum % n) == 1 % n);
    }
  }

  TEST_CASE("two generators examples in Z[sqrt(-5)]") {
    const Ring r = Ring::quad_order(Integer(-5));
    const QuadIdeal three = QuadIdeal::from_generators(r, {z(r, 3)});
    const auto g3 = ideal_two_generators(three);
    CHECK(QuadIdeal::from_generators(r, {g3.x, g3.y}) == three);
    CHECK(QuadIdeal::from_generators(r, {g3.x}) == three);

    const QuadIdeal i = QuadIdeal::from_generators(r, {z(r, 2), r.make({Integer(1), Integer(1)})});
    const auto gi = ideal_two_generators(i);
    CHECK(QuadIdeal::from_generators(r, {gi.x, gi.y}) == i);
    // a^2 + 5 b^2 = 2 has no integer solution
    bool norm_two = false;
    for (long a = -2; a <= 2; ++a)
      for (long b = -1; b <= 1; ++b) norm_two = norm_two || a * a + 5 * b * b == 2;
    CHECK_FALSE(norm_two);
    CHECK_FALSE(principal_generator(i).has_value());

    const auto gu = ideal_two_generators(QuadIdeal::unit(r));
    CHECK(r.is_unit(gu.x));
  }

  TEST_CASE("two generators reproduce random ideals") {
    std::mt19937_64 rng(37);
    for (long d : {-5L, -1L, -3L, 10L}) {
      const Ring r = Ring::quad_order(Integer(d));
      for (int trial = 0; trial < 50; ++trial) {
        Elem a = r.make({Integer(support::draw(rng, -60, 60)), Integer(support::draw(rng, -60, 60))});
        if (r.is_zero(a)) a = z(r, 7);
        const Elem b = r.make({Integer(support::draw(rng, -60, 60)), Integer(support::draw(rng, -60, 60))});
        const QuadIdeal i = QuadIdeal::from_generators(r, {a, b});
        if (i.norm() > 10000) continue;
        const auto g = ideal_two_generators(i);
        CHECK(i.contains(g.x));
        CHECK(i.contains(g.y));
        CHECK(QuadIdeal::from_generators(r, {g.x, g.y}) == i);
      }
    }
  }
}

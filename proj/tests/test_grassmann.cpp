#include <doctest.h>

#include "forge/forster_swan.hpp"
#include "forge/grassmann.hpp"
#include "support.hpp"

using namespace forge;
using support::error_of;
using support::mat;
using support::vec;
using support::z;

namespace {

// A random frame: the first n rows of g and the first n columns of g^-1.
std::pair<Matrix, Matrix> random_frame(const Ring& r, std::size_t n, std::size_t m, std::mt19937_64& rng) {
  const Matrix g = support::random_sl(r, m, 12, rng);
  const Matrix ginv = *inverse_or_certificate(g).inverse;
  Matrix a(r, n, m), b(r, m, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      a(i, j) = g(i, j);
      b(j, i) = ginv(j, i);
    }
  return {a, b};
}

}  // namespace

TEST_SUITE("grassmann-generic") {
  TEST_CASE("frames") {
    const Ring r6 = Ring::zmod(Integer(6));
    const auto t = idempotent_from_frame(mat(r6, {{1, 0}}), mat(r6, {{1}, {0}}));
    CHECK(t.e == mat(r6, {{1, 0}, {0, 0}}));

    const Matrix g = mat(r6, {{1, 1}, {1, 2}});
    const auto full = idempotent_from_frame(*inverse_or_certificate(g).inverse, g);
    CHECK(is_identity(full.e));

    const auto z6 = idempotent_from_frame(mat(r6, {{1, 2}}), mat(r6, {{1}, {0}}));
    CHECK(z6.e == mat(r6, {{1, 2}, {0, 0}}));
    CHECK(z6.e * z6.e == z6.e);

    CHECK(error_of([&] { idempotent_from_frame(mat(r6, {{2, 0}}), mat(r6, {{1}, {0}})); }) == ErrorKind::NotAFrame);
  }

  TEST_CASE("frame round trips and constant rank") {
    std::mt19937_64 rng(51);
    for (int trial = 0; trial < 100; ++trial) {
      const Ring r = Ring::zmod(Integer(support::draw(rng, 2, 360)));
      const std::size_t m = support::draw(rng, 2, 4), n = support::draw(rng, 1, static_cast<long>(m));
      const auto [a, b] = random_frame(r, n, m, rng);
      const auto t = idempotent_from_frame(a, b);
      CHECK(a * (b * a) == a);
      CHECK((b * a) * b == b);
      const ProjectiveIdempotent p(t.e);
      for (const auto& ideal : r.max_ideals()) CHECK(idempotent_rank_at(p, ideal) == n);
    }
  }

  TEST_CASE("classifying surjection examples") {
    const Ring r6 = Ring::zmod(Integer(6));
    const ProjectiveIdempotent free(Matrix::identity(r6, 2));
    const auto s = classifying_surjection(free, {vec(r6, {1, 0}), vec(r6, {0, 1})});
    CHECK(is_identity(s.ambient));

    const ProjectiveIdempotent line(mat(r6, {{1, 0}, {0, 0}}));
    const auto l = classifying_surjection(line, {vec(r6, {1, 0}), vec(r6, {5, 0})});
    REQUIRE(l.coordinates.has_value());
    CHECK(*l.coordinates == mat(r6, {{1, 5}}));
    CHECK(l.certificate.generates);

    try {
      classifying_surjection(line, {vec(r6, {2, 0})});
      FAIL("expected NotGenerating");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::NotGenerating);
      REQUIRE(e.ideal().has_value());
      CHECK(r6.max_ideal(*e.ideal()).residue_char() == 2);
    }
    CHECK(error_of([&] { classifying_surjection(line, {vec(r6, {0, 1})}); }) == ErrorKind::NotInImage);
  }

  TEST_CASE("generators -> surjection -> generators is the identity") {
    std::mt19937_64 rng(52);
    for (int trial = 0; trial < 150; ++trial) {
      const Ring r = Ring::zmod(Integer(support::draw(rng, 2, 360)));
      const std::size_t m = support::draw(rng, 2, 4), n = support::draw(rng, 1, static_cast<long>(m));
      const auto [a, b] = random_frame(r, n, m, rng);
      const auto frame = idempotent_from_frame(a, b);
      const ProjectiveIdempotent p(frame.e);
      std::vector<Vec> gens;
      for (const auto& g : minimal_generators(idempotent_module(p))) gens.push_back(forge::apply(p.matrix(), g));
      for (long extra = support::draw(rng, 0, 2); extra > 0; --extra)
        gens.push_back(forge::apply(p.matrix(), support::random_vec(r, m, rng)));
      std::shuffle(gens.begin(), gens.end(), rng);
      const auto s = classifying_surjection(p, gens, frame);
      CHECK(generators_of(s) == gens);
      REQUIRE(s.coordinates.has_value());
      CHECK(b * *s.coordinates == s.ambient);
      CHECK(is_section_surjection(*s.coordinates).surjective);
    }
  }

  TEST_CASE("section surjection examples") {
    const Ring r6 = Ring::zmod(Integer(6));
    CHECK(is_section_surjection(mat(r6, {{1, 0, 0}, {0, 1, 0}})).surjective);
    const auto zero = is_section_surjection(Matrix(r6, 2, 3));
    CHECK_FALSE(zero.surjective);
    CHECK(zero.failing_ideal.has_value());
    const auto c = is_section_surjection(mat(r6, {{2, 3}}));
    CHECK(c.surjective);
    CHECK(c.residue_ranks == std::vector<std::size_t>{1, 1});
    // the certificate combination of minors sums to 1
    Elem sum = r6.zero();
    for (std::size_t k = 0; k < c.minors.size(); ++k) sum = r6.add(sum, r6.mul(c.minors[k], c.minor_coeffs[k]));
    CHECK(r6.is_one(sum));
  }

  TEST_CASE("residue-rank and minor criteria agree") {
    std::mt19937_64 rng(53);
    for (int trial = 0; trial < 300; ++trial) {
      const long n = support::draw(rng, 2, 360);
      const Ring r = Ring::zmod(Integer(n));
      const std::size_t rows = support::draw(rng, 1, 3), cols = support::draw(rng, rows, 4);
      Matrix a = support::random_matrix(r, rows, cols, rng);
      if (trial % 3 == 0)
        for (std::size_t j = 0; j < cols; ++j) a(0, j) = r.mul(z(r, oracle::prime_factors(n)[0]), a(0, j));
      // throws InvariantBreach on disagreement
      const auto cert = is_section_surjection(a);
      // surjective iff the gcd of the maximal minors (over Z) with n is 1, via Leibniz
      long g = n;
      for (const auto& cs : cert.minor_columns) {
        oracle::IntMatrix sub(rows, std::vector<oracle::i64>(rows));
        for (std::size_t i = 0; i < rows; ++i)
          for (std::size_t k = 0; k < rows; ++k) sub[i][k] = support::val(a(i, cs[k]));
        g = std::gcd(g, oracle::det_mod(sub, n));
      }
      if (cert.surjective) CHECK(g == 1);
    }
  }

  TEST_CASE("truncation") {
    const Ring f2 = Ring::prime_field(Integer(2));
    const Matrix a = mat(f2, {{1, 0, 1}, {0, 1, 1}});
    CHECK(truncate_surjection(a, 3) == a);
    const Ring r7 = Ring::zmod(Integer(7));
    CHECK(truncate_surjection(mat(r7, {{1, 0, 0}}), 1) == mat(r7, {{1}}));
    CHECK(error_of([&] { truncate_surjection(mat(f2, {{0, 1, 1}}), 1); }) == ErrorKind::OnMinorLocus);
  }

  TEST_CASE("universal idempotent specialization") {
    const Ring r6 = Ring::zmod(Integer(6));
    Matrix d(r6, 4, 4);
    d(0, 0) = r6.one();
    d(1, 1) = r6.one();
    const auto pt = specialize_universal_idempotent(ProjectiveIdempotent(d));
    CHECK(pt.n == 2);
    // t^2 (t - 1)^2 = t^4 - 2t^3 + t^2
    CHECK(pt.charpoly == vec(r6, {0, 0, 1, 4, 1}));

    const auto e = specialize_universal_idempotent(ProjectiveIdempotent(mat(r6, {{1, 1}, {0, 0}})));
    CHECK(e.n == 1);
    CHECK(e.charpoly == vec(r6, {0, 5, 1}));  // t^2 - t

    // diag(1, 0) + diag(0, 1) mixed across the CRT factors: rank 1 at (2), 0 at (3)
    CHECK(error_of([&] { specialize_universal_idempotent(ProjectiveIdempotent(mat(r6, {{3}}))); }) ==
          ErrorKind::NonConstantRank);
  }
}

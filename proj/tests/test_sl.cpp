#include <doctest.h>

#include "forge/sl_factor.hpp"
#include "support.hpp"

using namespace forge;
using support::error_of;
using support::mat;
using support::z;

namespace {

// Product of the word's elementary matrices, computed on machine integers.
oracle::IntMatrix multiply_back(const ElementaryWord& w, oracle::i64 n) {
  oracle::IntMatrix acc = oracle::identity(w.m);
  for (std::size_t l = 0; l < w.positions.size(); ++l) {
    oracle::IntMatrix e = oracle::identity(w.m);
    e[w.positions[l].first - 1][w.positions[l].second - 1] = support::val(w.coeffs[l]);
    acc = oracle::multiply(acc, e, n);
  }
  return acc;
}

}  // namespace

TEST_SUITE("sl-factor") {
  TEST_CASE("position words") {
    CHECK(position_sequence(1).positions.empty());
    CHECK(word_length(1) == 0);
    CHECK(word_length(2) == 4);
    CHECK(word_length(3) == 12);
    CHECK(word_length(4) == 25);
    using P = std::vector<std::pair<std::size_t, std::size_t>>;
    CHECK(position_sequence(2).positions == P{{1, 2}, {2, 1}, {1, 2}, {2, 1}});
    for (std::size_t m = 2; m <= 6; ++m) {
      const auto big = position_sequence(m).positions, small = position_sequence(m - 1).positions;
      CHECK(big.size() == word_length(m));
      REQUIRE(big.size() >= small.size());
      CHECK(std::equal(small.begin(), small.end(), big.end() - static_cast<long>(small.size())));
      for (const auto& [i, j] : big) {
        CHECK(i != j);
        CHECK(i >= 1);
        CHECK(j <= m);
      }
    }
  }

  TEST_CASE("identity factors with zero coefficients") {
    const Ring r = Ring::zmod(Integer(30030));
    for (std::size_t m = 1; m <= 4; ++m) {
      const auto w = factor_sl(Matrix::identity(r, m));
      CHECK(w.coeffs.size() == word_length(m));
      for (const auto& c : w.coeffs) CHECK(r.is_zero(c));
    }
  }

  TEST_CASE("an elementary matrix multiplies back") {
    for (long n : {6L, 10L, 720L}) {
      const Ring r = Ring::zmod(Integer(n));
      const Matrix a = Matrix::elementary(r, 2, 0, 1, z(r, 5));
      const auto w = factor_sl(a);
      CHECK(multiply_back(w, n) == support::to_int(a));
      CHECK(evaluate_word(r, w) == a);
    }
  }

  TEST_CASE("random SL_3(Z/720) products of 20 elementaries") {
    std::mt19937_64 rng(41);
    const Ring r = Ring::zmod(Integer(720));
    for (int trial = 0; trial < 50; ++trial) {
      const Matrix a = support::random_sl(r, 3, 20, rng);
      const auto w = factor_sl(a);
      CHECK(multiply_back(w, 720) == support::to_int(a));
    }
  }

  TEST_CASE("multiply back over Z/N with up to four prime factors") {
    std::mt19937_64 rng(42);
    const std::vector<long> moduli{2, 4, 6, 12, 30, 97, 210, 720, 1001, 30030, 65536, 510510 / 17, 999983, 1000000};
    for (int trial = 0; trial < 300; ++trial) {
      const long n = moduli[trial % moduli.size()];
      const std::size_t m = 2 + trial % 3;
      const Ring r = Ring::zmod(Integer(n));
      const Matrix a = support::random_sl(r, m, 25, rng);
      const auto w = factor_sl(a);
      CHECK(w.positions == position_sequence(m).positions);
      CHECK(w.coeffs.size() == word_length(m));
      CHECK(multiply_back(w, n) == support::to_int(a));
    }
  }

  TEST_CASE("other semilocal rings") {
    std::mt19937_64 rng(43);
    const std::vector<Ring> rings{Ring::local_int(Integer(3)),
                                  Ring::ext_field(Integer(2), {Integer(1), Integer(1), Integer(1)}),
                                  Ring::poly_quotient(Integer(3), {Integer(0), Integer(0), Integer(0), Integer(1)}),
                                  Ring::product({Ring::zmod(Integer(4)), Ring::prime_field(Integer(5))})};
    for (const auto& r : rings)
      for (int trial = 0; trial < 20; ++trial) {
        const std::size_t m = 2 + trial % 3;
        const Matrix a = support::random_sl(r, m, 15, rng);
        CHECK(evaluate_word(r, factor_sl(a)) == a);
      }
  }

  TEST_CASE("preconditions") {
    const Ring r6 = Ring::zmod(Integer(6));
    CHECK(error_of([&] { factor_sl(mat(r6, {{2, 1}, {1, 2}})); }) == ErrorKind::NotSL);
    CHECK(error_of([&] { factor_sl(mat(r6, {{5, 0}, {0, 1}})); }) == ErrorKind::NotSL);
    const Ring q = Ring::quad_order(Integer(-1));
    CHECK(error_of([&] { factor_sl(Matrix::identity(q, 2)); }) == ErrorKind::UnsupportedRing);
  }
}

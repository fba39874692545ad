#pragma once

// Generator algorithms over semilocal rings: extending a partial generating
// set one fiber dimension at a time, minimal generation, lifting generators
// modulo an ideal, stable range 1 reductions, and two-element generation of
// ideals in quadratic orders.

#include <cstddef>
#include <vector>

#include "forge/modules.hpp"
#include "forge/quad.hpp"

namespace forge {

// A new element whose image raises the span dimension by one at every ideal
// of S. All ideals here are maximal and pairwise comaximal, so the prescribed
// residues are realized by one CRT lift (no prime-avoidance step is needed).
// PreconditionViolated names an ideal of S whose fiber is already spanned.
Vec extend_generator(const ModulePresentation& m, const std::vector<MaxIdeal>& s,
                     const std::vector<Vec>& elems);

// Exactly max fiber dimension many generators.
std::vector<Vec> minimal_generators(const ModulePresentation& m);

struct LiftCertificate {
  // a_j = b_j + sum_k ideal_gens[k] * corrections[j][k].
  std::vector<std::vector<Vec>> corrections;
  // Ideals containing I, where a_j = b_j is forced.
  std::vector<std::size_t> ideals_containing_i;
};

struct LiftResult {
  std::vector<Vec> lifted;
  LiftCertificate certificate;
};

// Generators a of M with a_j = b_j mod I*M, given b generating M/IM.
LiftResult lift_generators(const ModulePresentation& m, const Vec& ideal_gens, const std::vector<Vec>& b);
// Re-checks the correction identity and that the output generates M.
bool verify_lift(const ModulePresentation& m, const Vec& ideal_gens, const std::vector<Vec>& b,
                 const LiftResult& result);

// alpha_1..alpha_{m-1} with (r_i + alpha_i r_m)_{i<m} unimodular.
Vec stable_range_reduce(const Ring& ring, const Vec& row);
// Coefficients c with sum c_i r_i = 1 (NotUnimodular otherwise).
Vec unimodular_combination(const Ring& ring, const Vec& row);

struct TwoGenerators {
  Elem x, y;
  // Primes dividing (x) I^-1, where y does the generating.
  std::vector<QuadIdeal> cofactor_primes;
};

TwoGenerators ideal_two_generators(const QuadIdeal& ideal);

// e = (a, b)^T (c, d) with a, b the two generators and c, d in I^-1 solving
// ac + bd = 1; im(e) is isomorphic to I.
Matrix rank_one_idempotent(const QuadIdeal& ideal, const TwoGenerators& gens);

}  // namespace forge

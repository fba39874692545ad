#pragma once

// Finitely generated modules as cokernels, and projective modules as images
// of idempotent matrices.

#include <cstddef>
#include <optional>
#include <vector>

#include "forge/matrix.hpp"

namespace forge {

// M = R^t / (column span of relations); relations is t x k.
class ModulePresentation {
 public:
  ModulePresentation(Ring ring, std::size_t ambient, Matrix relations);
  static ModulePresentation free(const Ring& ring, std::size_t rank);

  const Ring& ring() const { return ring_; }
  std::size_t ambient() const { return ambient_; }
  const Matrix& relations() const { return relations_; }

 private:
  Ring ring_;
  std::size_t ambient_;
  Matrix relations_;
};

std::size_t fiber_dimension(const ModulePresentation& m, const MaxIdeal& p);
std::size_t max_fiber_dimension(const ModulePresentation& m);
// Image of an element of M in the residue vector space k(p)^t (before
// quotienting by the relator residues).
Vec reduce_element(const ModulePresentation& m, const Vec& x, const MaxIdeal& p);
// Dimension of the span of the images of elems in M(p).
std::size_t span_dim_at(const ModulePresentation& m, const std::vector<Vec>& elems, const MaxIdeal& p);

struct FiberReport {
  std::size_t ideal;
  std::size_t fiber_dim;
  std::size_t span_dim;
};

struct GenerationReport {
  bool generates = false;
  std::vector<FiberReport> fibers;
  std::optional<std::size_t> failing_ideal;
  // Z/N only: verdict from Howell-form membership of the unit vectors.
  std::optional<bool> howell_verdict;
};

// Nakayama test at every maximal ideal, cross-checked by Howell membership
// over Z/N (a disagreement is an InvariantBreach).
GenerationReport generates(const ModulePresentation& m, const std::vector<Vec>& elems);

class ProjectiveIdempotent {
 public:
  // NotIdempotent unless e*e == e.
  explicit ProjectiveIdempotent(Matrix e);

  const Ring& ring() const { return e_.ring(); }
  std::size_t size() const { return e_.rows(); }
  const Matrix& matrix() const { return e_; }

 private:
  Matrix e_;
};

// coker(1 - e), which is isomorphic to im(e).
ModulePresentation idempotent_module(const ProjectiveIdempotent& p);
std::size_t idempotent_rank_at(const ProjectiveIdempotent& p, const MaxIdeal& m);

struct SampledRank {
  Integer prime;
  std::size_t prime_index;  // which prime above `prime`
  std::size_t rank;
};
// QuadOrder: residue ranks of e at the primes above each listed rational prime.
std::vector<SampledRank> sampled_ranks(const ProjectiveIdempotent& p, const std::vector<Integer>& primes);

}  // namespace forge

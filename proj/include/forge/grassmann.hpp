#pragma once

// Idempotents, frames and surjections R^k -> P: the affine form of the
// correspondence between generating tuples of a projective module and
// classifying maps to the Grassmannian.

#include <cstddef>
#include <optional>
#include <vector>

#include "forge/modules.hpp"

namespace forge {

// (a, e, b) with a*b = 1 (n x n) and e = b*a.
struct FrameTriple {
  Matrix a;  // n x m
  Matrix e;  // m x m
  Matrix b;  // m x n
};

// NotAFrame unless a*b is the identity.
FrameTriple idempotent_from_frame(const Matrix& a, const Matrix& b);
// The frame selecting the unit diagonal entries of a 0/1 diagonal idempotent.
std::optional<FrameTriple> diagonal_frame(const ProjectiveIdempotent& p);

struct ClassifyingSurjection {
  Matrix ambient;                    // m x k, columns are the generators
  std::optional<Matrix> coordinates;  // n x k, a*ambient when a frame is known
  GenerationReport certificate;
};

// NotInImage when e*g != g; NotGenerating naming the first ideal where the
// generators miss the fiber.
ClassifyingSurjection classifying_surjection(const ProjectiveIdempotent& p, const std::vector<Vec>& gens,
                                             const std::optional<FrameTriple>& frame = std::nullopt);
// Evaluates the surjection on unit vectors (the inverse correspondence).
std::vector<Vec> generators_of(const ClassifyingSurjection& s);

struct SurjectionCertificate {
  bool surjective = false;
  std::vector<std::size_t> residue_ranks;  // per maximal ideal
  std::optional<std::size_t> failing_ideal;
  // When surjective: coefficients c_S with sum c_S det(a_S) = 1 over the
  // n-column subsets listed in `minor_columns`.
  std::vector<std::vector<std::size_t>> minor_columns;
  Vec minors;
  Vec minor_coeffs;
};

// n x m matrix a: surjectivity of a: R^m -> R^n, decided by residue ranks and
// independently by the unit ideal test on the maximal minors.
SurjectionCertificate is_section_surjection(const Matrix& a);

// First m columns, re-certified; OnMinorLocus names an ideal where all
// maximal minors of the truncation vanish.
Matrix truncate_surjection(const Matrix& a, std::size_t m);

struct UniversalPoint {
  std::size_t n, m;
  Matrix e;
  std::vector<Elem> charpoly;  // lowest degree first
};

// NonConstantRank / WrongCharPoly.
UniversalPoint specialize_universal_idempotent(const ProjectiveIdempotent& p);

}  // namespace forge

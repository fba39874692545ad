#include "forge/modules.hpp"

#include "forge/error.hpp"
#include "forge/quad.hpp"

namespace forge {

ModulePresentation::ModulePresentation(Ring ring, std::size_t ambient, Matrix relations)
    : ring_(std::move(ring)), ambient_(ambient), relations_(std::move(relations)) {
  if (relations_.rows() != ambient_)
    fail(ErrorKind::InvalidInput, "relation matrix must have one row per ambient generator");
  if (!(relations_.ring() == ring_)) fail(ErrorKind::MismatchedRing, "relations over a different ring");
}

ModulePresentation ModulePresentation::free(const Ring& ring, std::size_t rank) {
  return ModulePresentation(ring, rank, Matrix(ring, rank, 0));
}

namespace {

void check_elements(const ModulePresentation& m, const std::vector<Vec>& elems) {
  for (const auto& e : elems)
    if (e.size() != m.ambient())
      fail(ErrorKind::InvalidInput, "module element has length " + std::to_string(e.size()) +
                                        ", expected " + std::to_string(m.ambient()));
}

Matrix with_elements(const ModulePresentation& m, const std::vector<Vec>& elems) {
  return hstack(m.relations(), Matrix::from_columns(m.ring(), elems, m.ambient()));
}

}  // namespace

std::size_t fiber_dimension(const ModulePresentation& m, const MaxIdeal& p) {
  return m.ambient() - residue_rank(m.relations(), p);
}

std::size_t max_fiber_dimension(const ModulePresentation& m) {
  std::size_t best = 0;
  for (const auto& p : m.ring().max_ideals()) best = std::max(best, fiber_dimension(m, p));
  return best;
}

Vec reduce_element(const ModulePresentation& m, const Vec& x, const MaxIdeal& p) {
  check_elements(m, {x});
  return residue_vector(m.ring(), x, p);
}

std::size_t span_dim_at(const ModulePresentation& m, const std::vector<Vec>& elems, const MaxIdeal& p) {
  check_elements(m, elems);
  if (elems.empty()) return 0;
  return residue_rank(with_elements(m, elems), p) - residue_rank(m.relations(), p);
}

GenerationReport generates(const ModulePresentation& m, const std::vector<Vec>& elems) {
  check_elements(m, elems);
  GenerationReport report;
  report.generates = true;
  const auto ideals = m.ring().max_ideals();
  for (std::size_t i = 0; i < ideals.size(); ++i) {
    FiberReport f{i, fiber_dimension(m, ideals[i]), span_dim_at(m, elems, ideals[i])};
    if (f.span_dim != f.fiber_dim && report.generates) {
      report.generates = false;
      report.failing_ideal = i;
    }
    report.fibers.push_back(f);
  }
  if (m.ring().kind() == RingKind::ZMod) {
    const Ring& R = m.ring();
    Matrix span = with_elements(m, elems).transpose();
    Matrix h = span.rows() == 0 ? span : howell_form(span);
    bool all = true;
    for (std::size_t j = 0; j < m.ambient() && all; ++j) {
      Vec unit(m.ambient(), R.zero());
      unit[j] = R.one();
      all = howell_contains(h, unit);
    }
    report.howell_verdict = all;
    if (all != report.generates)
      throw InvariantBreach("Nakayama and Howell generation verdicts disagree");
  }
  return report;
}

ProjectiveIdempotent::ProjectiveIdempotent(Matrix e) : e_(std::move(e)) {
  if (!e_.square()) fail(ErrorKind::InvalidInput, "idempotent must be square");
  if (!(e_ * e_ == e_)) fail(ErrorKind::NotIdempotent, "e*e != e");
}

ModulePresentation idempotent_module(const ProjectiveIdempotent& p) {
  const Matrix& e = p.matrix();
  return ModulePresentation(p.ring(), p.size(), Matrix::identity(p.ring(), p.size()) - e);
}

std::size_t idempotent_rank_at(const ProjectiveIdempotent& p, const MaxIdeal& m) {
  return residue_rank(p.matrix(), m);
}

std::vector<SampledRank> sampled_ranks(const ProjectiveIdempotent& p, const std::vector<Integer>& primes) {
  const Ring& R = p.ring();
  if (R.kind() != RingKind::QuadOrder) fail(ErrorKind::UnsupportedRing, "sampled ranks need a QuadOrder");
  std::vector<SampledRank> out;
  for (const auto& q : primes) {
    const auto over = quad_primes_over(R, q);
    for (std::size_t k = 0; k < over.size(); ++k) {
      Matrix red(over[k].residue_field, p.size(), p.size());
      for (std::size_t i = 0; i < p.size(); ++i)
        for (std::size_t j = 0; j < p.size(); ++j) red(i, j) = quad_reduce(R, p.matrix()(i, j), over[k]);
      out.push_back({q, k, rank_over_field(red)});
    }
  }
  return out;
}

}  // namespace forge

#include "forge/grassmann.hpp"

#include "forge/error.hpp"
#include "forge/forster_swan.hpp"

namespace forge {

FrameTriple idempotent_from_frame(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.cols() || a.cols() != b.rows())
    fail(ErrorKind::NotAFrame, "frame dimensions do not match");
  if (!is_identity(a * b)) fail(ErrorKind::NotAFrame, "a*b is not the identity");
  Matrix e = b * a;
  ensure(e * e == e, "b*a is not idempotent");
  ensure(a * e == a && e * b == b, "frame round trip failed");
  return {a, std::move(e), b};
}

std::optional<FrameTriple> diagonal_frame(const ProjectiveIdempotent& p) {
  const Ring& R = p.ring();
  const Matrix& e = p.matrix();
  std::vector<std::size_t> ones;
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = 0; j < p.size(); ++j) {
      if (i != j && !R.is_zero(e(i, j))) return std::nullopt;
      if (i == j) {
        if (R.is_one(e(i, i)))
          ones.push_back(i);
        else if (!R.is_zero(e(i, i)))
          return std::nullopt;
      }
    }
  Matrix a(R, ones.size(), p.size());
  for (std::size_t k = 0; k < ones.size(); ++k) a(k, ones[k]) = R.one();
  return idempotent_from_frame(a, a.transpose());
}

ClassifyingSurjection classifying_surjection(const ProjectiveIdempotent& p, const std::vector<Vec>& gens,
                                             const std::optional<FrameTriple>& frame) {
  const Ring& R = p.ring();
  for (std::size_t k = 0; k < gens.size(); ++k) {
    if (gens[k].size() != p.size()) fail(ErrorKind::InvalidInput, "generator has the wrong length");
    if (forge::apply(p.matrix(), gens[k]) != gens[k])
      fail(ErrorKind::NotInImage, "generator " + std::to_string(k) + " is not fixed by e");
  }
  GenerationReport report = generates(idempotent_module(p), gens);
  if (!report.generates)
    fail(ErrorKind::NotGenerating,
         "generators miss the fiber at " + R.max_ideal(*report.failing_ideal).describe(),
         report.failing_ideal);
  ClassifyingSurjection out{Matrix::from_columns(R, gens, p.size()), std::nullopt, std::move(report)};
  std::optional<FrameTriple> f = frame ? frame : diagonal_frame(p);
  if (f) {
    if (!(f->e == p.matrix())) fail(ErrorKind::NotAFrame, "frame does not belong to this idempotent");
    out.coordinates = f->a * out.ambient;
    ensure(f->b * *out.coordinates == out.ambient, "frame coordinates do not recover the generators");
  }
  ensure(generators_of(out) == gens, "surjection does not return the generators");
  return out;
}

std::vector<Vec> generators_of(const ClassifyingSurjection& s) {
  std::vector<Vec> out;
  const Ring& R = s.ambient.ring();
  for (std::size_t k = 0; k < s.ambient.cols(); ++k) {
    Vec unit(s.ambient.cols(), R.zero());
    unit[k] = R.one();
    out.push_back(forge::apply(s.ambient, unit));
  }
  return out;
}

namespace {

void subsets(std::size_t m, std::size_t n, std::size_t start, std::vector<std::size_t>& cur,
             std::vector<std::vector<std::size_t>>& out) {
  if (cur.size() == n) {
    out.push_back(cur);
    return;
  }
  for (std::size_t j = start; j < m; ++j) {
    cur.push_back(j);
    subsets(m, n, j + 1, cur, out);
    cur.pop_back();
  }
}

}  // namespace

SurjectionCertificate is_section_surjection(const Matrix& a) {
  const Ring& R = a.ring();
  if (!R.is_semilocal()) fail(ErrorKind::UnsupportedRing, R.name() + " is not semilocal");
  const std::size_t n = a.rows(), m = a.cols();
  SurjectionCertificate cert;
  cert.surjective = true;
  const auto ideals = R.max_ideals();
  for (std::size_t i = 0; i < ideals.size(); ++i) {
    cert.residue_ranks.push_back(residue_rank(a, ideals[i]));
    if (cert.residue_ranks.back() < n && cert.surjective) {
      cert.surjective = false;
      cert.failing_ideal = i;
    }
  }
  bool minor_verdict = false;
  if (n <= m) {
    std::vector<std::size_t> cur;
    subsets(m, n, 0, cur, cert.minor_columns);
    for (const auto& cols : cert.minor_columns) {
      Matrix sub(R, n, n);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k) sub(i, k) = a(i, cols[k]);
      cert.minors.push_back(determinant(sub));
    }
    try {
      cert.minor_coeffs = unimodular_combination(R, cert.minors);
      minor_verdict = true;
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::NotUnimodular) throw;
    }
  }
  if (minor_verdict != cert.surjective)
    throw InvariantBreach("residue-rank and minor-ideal surjectivity tests disagree");
  if (!cert.surjective) {
    cert.minor_columns.clear();
    cert.minors.clear();
    cert.minor_coeffs.clear();
  }
  return cert;
}

Matrix truncate_surjection(const Matrix& a, std::size_t m) {
  const std::size_t n = a.rows(), r = a.cols();
  if (m < n || m > r) fail(ErrorKind::InvalidInput, "need rows <= m <= columns");
  Matrix t = a.columns(0, m);
  auto cert = is_section_surjection(t);
  if (!cert.surjective)
    fail(ErrorKind::OnMinorLocus,
         "all maximal minors of the first " + std::to_string(m) + " columns vanish at " +
             a.ring().max_ideal(*cert.failing_ideal).describe(),
         cert.failing_ideal);
  return t;
}

UniversalPoint specialize_universal_idempotent(const ProjectiveIdempotent& p) {
  const Ring& R = p.ring();
  const std::size_t m = p.size();
  std::optional<std::size_t> rank;
  for (const auto& ideal : R.max_ideals()) {
    const std::size_t r = idempotent_rank_at(p, ideal);
    if (rank && *rank != r)
      fail(ErrorKind::NonConstantRank,
           "rank " + std::to_string(r) + " at " + ideal.describe() + " differs from " + std::to_string(*rank),
           ideal.index());
    rank = r;
  }
  const std::size_t n = rank.value_or(0);
  // t^(m-n) (t-1)^n, lowest degree first
  std::vector<Elem> expected(m + 1, R.zero());
  expected[m - n] = R.one();
  for (std::size_t k = 0; k < n; ++k) {
    std::vector<Elem> next(m + 1, R.zero());
    for (std::size_t d = 0; d <= m; ++d) {
      next[d] = R.neg(expected[d]);
      if (d > 0) next[d] = R.add(next[d], expected[d - 1]);
    }
    expected = std::move(next);
  }
  UniversalPoint out{n, m, p.matrix(), charpoly(p.matrix())};
  if (out.charpoly != expected)
    fail(ErrorKind::WrongCharPoly, "characteristic polynomial is not t^(m-n) (t-1)^n");
  return out;
}

}  // namespace forge

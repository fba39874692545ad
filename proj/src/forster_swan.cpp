#include "forge/forster_swan.hpp"

#include <map>

#include "forge/error.hpp"

namespace forge {

namespace {

Vec unit_vector(const Ring& field, std::size_t t, std::size_t j) {
  Vec v(t, field.zero());
  v[j] = field.one();
  return v;
}

// Relator residues plus the given residue vectors, as columns over k(p).
Matrix fiber_span(const ModulePresentation& m, const MaxIdeal& p, const std::vector<Vec>& residues) {
  Matrix rel = residue(m.relations(), p);
  if (residues.empty()) return rel;
  return hstack(rel, Matrix::from_columns(p.residue_field(), residues, m.ambient()));
}

// First unit vector of k(p)^t outside the span, if any.
std::optional<Vec> first_unit_outside(const ModulePresentation& m, const MaxIdeal& p,
                                      const std::vector<Vec>& residues) {
  const Ring& F = p.residue_field();
  Matrix span = fiber_span(m, p, residues);
  const std::size_t base = rank_over_field(span);
  for (std::size_t j = 0; j < m.ambient(); ++j) {
    Vec e = unit_vector(F, m.ambient(), j);
    if (rank_over_field(hstack(span, Matrix::from_columns(F, {e}, m.ambient()))) > base) return e;
  }
  return std::nullopt;
}

// Element of R^t whose residue at ideal i is targets[i] (zero where absent).
Vec lift_vector(const Ring& R, std::size_t t, const std::map<std::size_t, Vec>& targets) {
  const auto ideals = R.max_ideals();
  Vec out;
  for (std::size_t j = 0; j < t; ++j) {
    std::vector<Elem> coord;
    for (std::size_t i = 0; i < ideals.size(); ++i) {
      auto it = targets.find(i);
      coord.push_back(it == targets.end() ? ideals[i].residue_field().zero() : it->second[j]);
    }
    out.push_back(R.crt_lift(std::span<const Elem>(coord)));
  }
  return out;
}

void require_semilocal(const Ring& R) {
  if (!R.is_semilocal()) fail(ErrorKind::UnsupportedRing, R.name() + " is not semilocal");
}

}  // namespace

Vec extend_generator(const ModulePresentation& m, const std::vector<MaxIdeal>& s, const std::vector<Vec>& elems) {
  const Ring& R = m.ring();
  require_semilocal(R);
  std::map<std::size_t, Vec> targets;
  for (const auto& p : s) {
    if (!(p.ring() == R)) fail(ErrorKind::MismatchedRing, "ideal of a different ring");
    std::vector<Vec> residues;
    for (const auto& e : elems) residues.push_back(reduce_element(m, e, p));
    auto v = first_unit_outside(m, p, residues);
    if (!v)
      fail(ErrorKind::PreconditionViolated,
           "elements already span the fiber at " + p.describe(), p.index());
    targets[p.index()] = std::move(*v);
  }
  if (targets.empty()) return Vec(m.ambient(), R.zero());
  Vec out = lift_vector(R, m.ambient(), targets);
  std::vector<Vec> extended = elems;
  extended.push_back(out);
  for (const auto& p : s)
    ensure(span_dim_at(m, extended, p) == span_dim_at(m, elems, p) + 1,
           "new generator failed to raise a span dimension");
  return out;
}

std::vector<Vec> minimal_generators(const ModulePresentation& m) {
  const Ring& R = m.ring();
  require_semilocal(R);
  const auto ideals = R.max_ideals();
  std::vector<Vec> gens;
  for (;;) {
    std::vector<MaxIdeal> open;
    for (const auto& p : ideals)
      if (span_dim_at(m, gens, p) < fiber_dimension(m, p)) open.push_back(p);
    if (open.empty()) break;
    gens.push_back(extend_generator(m, open, gens));
  }
  ensure(gens.size() == max_fiber_dimension(m), "generator count differs from the maximal fiber dimension");
  ensure(generates(m, gens).generates, "minimal generators do not generate");
  return gens;
}

LiftResult lift_generators(const ModulePresentation& m, const Vec& ideal_gens, const std::vector<Vec>& b) {
  const Ring& R = m.ring();
  require_semilocal(R);
  const auto ideals = R.max_ideals();
  const std::size_t t = m.ambient();
  for (const auto& v : b)
    if (v.size() != t) fail(ErrorKind::InvalidInput, "element length does not match the module");
  const std::size_t mu = max_fiber_dimension(m);
  if (b.size() < mu)
    fail(ErrorKind::TooFewElements,
         "need at least " + std::to_string(mu) + " elements, got " + std::to_string(b.size()));

  LiftResult result;
  std::vector<bool> in_z(ideals.size(), false);
  std::vector<std::size_t> pivot_gen(ideals.size(), 0);
  for (std::size_t i = 0; i < ideals.size(); ++i) {
    const Ring& F = ideals[i].residue_field();
    in_z[i] = true;
    for (std::size_t k = 0; k < ideal_gens.size(); ++k) {
      if (!F.is_zero(R.residue(ideal_gens[k], ideals[i]))) {
        in_z[i] = false;
        pivot_gen[i] = k;
        break;
      }
    }
    if (in_z[i]) {
      result.certificate.ideals_containing_i.push_back(i);
      if (span_dim_at(m, b, ideals[i]) != fiber_dimension(m, ideals[i]))
        fail(ErrorKind::NotGeneratingModI, "elements do not generate M/IM at " + ideals[i].describe(), i);
    }
  }

  // Residue targets per ideal outside Z, chosen greedily so that the lifted
  // elements span every fiber.
  std::vector<std::vector<Vec>> chosen(ideals.size());
  std::vector<std::map<std::size_t, Vec>> deltas(b.size());
  for (std::size_t j = 0; j < b.size(); ++j) {
    for (std::size_t i = 0; i < ideals.size(); ++i) {
      if (in_z[i]) continue;
      const MaxIdeal& p = ideals[i];
      const Ring& F = p.residue_field();
      Vec bj = reduce_element(m, b[j], p);
      Matrix span = fiber_span(m, p, chosen[i]);
      const std::size_t base = rank_over_field(span);
      Vec target = bj;
      if (base < t && rank_over_field(hstack(span, Matrix::from_columns(F, {bj}, t))) == base) {
        auto e = first_unit_outside(m, p, chosen[i]);
        ensure(e.has_value(), "unsaturated fiber without a new unit vector");
        target = *e;
      }
      chosen[i].push_back(target);
      if (target != bj) {
        const Elem ginv = *F.inverse(R.residue(ideal_gens[pivot_gen[i]], p));
        Vec delta;
        for (std::size_t c = 0; c < t; ++c) delta.push_back(F.mul(ginv, F.sub(target[c], bj[c])));
        deltas[j][i] = std::move(delta);
      }
    }
  }

  for (std::size_t j = 0; j < b.size(); ++j) {
    std::vector<Vec> corr;
    Vec a = b[j];
    for (std::size_t k = 0; k < ideal_gens.size(); ++k) {
      std::map<std::size_t, Vec> targets;
      for (const auto& [i, delta] : deltas[j])
        if (pivot_gen[i] == k) targets[i] = delta;
      Vec c = targets.empty() ? Vec(t, R.zero()) : lift_vector(R, t, targets);
      for (std::size_t r = 0; r < t; ++r) a[r] = R.add(a[r], R.mul(ideal_gens[k], c[r]));
      corr.push_back(std::move(c));
    }
    result.lifted.push_back(std::move(a));
    result.certificate.corrections.push_back(std::move(corr));
  }
  ensure(verify_lift(m, ideal_gens, b, result), "lifted generators failed verification");
  return result;
}

bool verify_lift(const ModulePresentation& m, const Vec& ideal_gens, const std::vector<Vec>& b,
                 const LiftResult& result) {
  const Ring& R = m.ring();
  if (result.lifted.size() != b.size() || result.certificate.corrections.size() != b.size()) return false;
  for (std::size_t j = 0; j < b.size(); ++j) {
    const auto& corr = result.certificate.corrections[j];
    if (corr.size() != ideal_gens.size()) return false;
    Vec a = b[j];
    for (std::size_t k = 0; k < ideal_gens.size(); ++k) {
      if (corr[k].size() != m.ambient()) return false;
      for (std::size_t r = 0; r < m.ambient(); ++r) a[r] = R.add(a[r], R.mul(ideal_gens[k], corr[k][r]));
    }
    if (a != result.lifted[j]) return false;
  }
  return generates(m, result.lifted).generates;
}

Vec stable_range_reduce(const Ring& R, const Vec& row) {
  require_semilocal(R);
  const std::size_t m = row.size();
  if (m < 2) fail(ErrorKind::InvalidInput, "stable range reduction needs a row of length >= 2");
  const auto ideals = R.max_ideals();
  std::vector<std::vector<Elem>> targets(m - 1, std::vector<Elem>(ideals.size()));
  for (std::size_t q = 0; q < ideals.size(); ++q) {
    const Ring& F = ideals[q].residue_field();
    bool prefix_alive = false;
    for (std::size_t i = 0; i + 1 < m && !prefix_alive; ++i)
      prefix_alive = !F.is_zero(R.residue(row[i], ideals[q]));
    if (!prefix_alive && F.is_zero(R.residue(row[m - 1], ideals[q])))
      fail(ErrorKind::NotUnimodular, "row vanishes at " + ideals[q].describe(), q);
    for (std::size_t i = 0; i + 1 < m; ++i) targets[i][q] = F.zero();
    if (!prefix_alive) targets[0][q] = F.one();
  }
  Vec alpha;
  for (const auto& t : targets) alpha.push_back(R.crt_lift(std::span<const Elem>(t)));
  Vec shorter;
  for (std::size_t i = 0; i + 1 < m; ++i) shorter.push_back(R.add(row[i], R.mul(alpha[i], row[m - 1])));
  for (const auto& p : ideals) {
    bool alive = false;
    for (const auto& x : shorter) alive = alive || !p.residue_field().is_zero(R.residue(x, p));
    ensure(alive, "stable range reduction lost unimodularity");
  }
  return alpha;
}

Vec unimodular_combination(const Ring& R, const Vec& row) {
  if (row.empty()) fail(ErrorKind::NotUnimodular, "empty row");
  if (row.size() == 1) {
    auto inv = R.inverse(row[0]);
    if (!inv) fail(ErrorKind::NotUnimodular, "single entry is not a unit");
    return {*inv};
  }
  Vec alpha = stable_range_reduce(R, row);
  Vec shorter;
  for (std::size_t i = 0; i + 1 < row.size(); ++i) shorter.push_back(R.add(row[i], R.mul(alpha[i], row.back())));
  Vec c = unimodular_combination(R, shorter);
  Elem last = R.zero();
  for (std::size_t i = 0; i < c.size(); ++i) last = R.add(last, R.mul(c[i], alpha[i]));
  c.push_back(last);
  Elem check = R.zero();
  for (std::size_t i = 0; i < row.size(); ++i) check = R.add(check, R.mul(c[i], row[i]));
  ensure(R.is_one(check), "unimodular combination does not sum to 1");
  return c;
}

TwoGenerators ideal_two_generators(const QuadIdeal& ideal) {
  const Ring& R = ideal.ring();
  const Integer nrm = ideal.norm();
  auto candidates = small_elements(ideal, 16 * nrm);
  if (candidates.empty())
    fail(ErrorKind::NormTooLarge, "no nonzero element of norm <= 16 N(I) found");
  TwoGenerators out{candidates.front(), candidates.front(), {}};
  // (x) = I J with J = (x) conj(I) / N(I).
  QuadIdeal j = (QuadIdeal::from_generators(R, {out.x}) * ideal.conjugate()).divide(nrm);
  std::vector<QuadIdeal> primes;
  for (const auto& f : prime_factorization(j)) primes.push_back(f.prime);
  out.cofactor_primes = primes;
  if (!primes.empty()) {
    Elem y = R.zero();
    for (std::size_t k = 0; k < primes.size(); ++k) {
      const QuadIdeal ipk = ideal * primes[k];
      std::optional<Elem> yk;
      for (const auto& v : ideal.basis())
        if (!ipk.contains(v)) {
          yk = v;
          break;
        }
      ensure(yk.has_value(), "I is contained in I*P");
      QuadIdeal others = QuadIdeal::unit(R);
      for (std::size_t l = 0; l < primes.size(); ++l)
        if (l != k) others = others * primes[l];
      std::optional<Elem> ck;
      for (const auto& v : others.basis())
        if (!primes[k].contains(v)) {
          ck = v;
          break;
        }
      ensure(ck.has_value(), "product of the other primes lies in P");
      y = R.add(y, R.mul(*yk, *ck));
    }
    out.y = y;
  }
  ensure(QuadIdeal::from_generators(R, {out.x, out.y}) == ideal, "(x, y) does not generate I");
  return out;
}

Matrix rank_one_idempotent(const QuadIdeal& ideal, const TwoGenerators& gens) {
  const Ring& R = ideal.ring();
  const Integer nrm = ideal.norm();
  const auto conj = ideal.conjugate().basis();
  std::vector<std::array<Integer, 2>> rows;
  for (const auto& g : {gens.x, gens.y})
    for (const auto& c : conj) {
      Elem p = R.mul(g, c);
      rows.push_back({p.c[0], p.c[1]});
    }
  auto u = lattice_solve(rows, {nrm, 0});
  ensure(u.has_value(), "N(I) is not in x*conj(I) + y*conj(I)");
  auto comb = [&](const Integer& s, const Integer& t) {
    return R.add(R.mul(R.from_int(s), conj[0]), R.mul(R.from_int(t), conj[1]));
  };
  const Elem c = comb((*u)[0], (*u)[1]);
  const Elem d = comb((*u)[2], (*u)[3]);
  const Elem n = R.from_int(nrm);
  Matrix e(R, 2, 2);
  e(0, 0) = R.divide_exact(R.mul(gens.x, c), n);
  e(0, 1) = R.divide_exact(R.mul(gens.x, d), n);
  e(1, 0) = R.divide_exact(R.mul(gens.y, c), n);
  e(1, 1) = R.divide_exact(R.mul(gens.y, d), n);
  ensure(e * e == e, "rank-one idempotent is not idempotent");
  ensure(R.is_one(R.add(e(0, 0), e(1, 1))), "rank-one idempotent has trace != 1");
  return e;
}

}  // namespace forge

#include "forge/json_io.hpp"

#include "forge/error.hpp"

namespace forge {

namespace {

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) fail(ErrorKind::InvalidInput, std::string("missing field \"") + key + "\"");
  return j.at(key);
}

std::size_t count_from_json(const Json& j) {
  const Integer n = integer_from_json(j);
  if (n < 0 || !n.fits_ulong_p()) fail(ErrorKind::InvalidInput, "expected a nonnegative count");
  return n.get_ui();
}

Json poly_to_json(const Poly& f) {
  Json out = Json::array();
  for (const auto& c : f) out.push_back(to_json(c));
  return out;
}

Poly poly_from_json(const Json& j) {
  if (!j.is_array()) fail(ErrorKind::InvalidInput, "polynomial must be a coefficient array");
  Poly f;
  for (const auto& c : j) f.push_back(integer_from_json(c));
  return f;
}

Ring ring_of(const Json& j, const std::optional<Ring>& ring, const char* what) {
  if (j.contains("ring")) return ring_from_json(j.at("ring"));
  if (!ring) fail(ErrorKind::InvalidInput, std::string(what) + " has no ring");
  return *ring;
}

std::string text_of(const Json& j) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_number_integer()) return j.dump();
  fail(ErrorKind::InvalidInput, "expected an integer, got " + j.dump());
}

}  // namespace

Json to_json(const Integer& n) { return to_decimal(n); }

Integer integer_from_json(const Json& j) { return parse_integer(text_of(j)); }

Json ring_to_json(const Ring& ring) {
  return std::visit(
      [&](const auto& d) -> Json {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, ZModDesc>) {
          return {{"type", "zmod"}, {"modulus", to_json(d.modulus)}};
        } else if constexpr (std::is_same_v<T, PrimeFieldDesc>) {
          return {{"type", "gf"}, {"p", to_json(d.p)}};
        } else if constexpr (std::is_same_v<T, ExtFieldDesc>) {
          return {{"type", "gf"}, {"p", to_json(d.p)}, {"poly", poly_to_json(d.modulus)}};
        } else if constexpr (std::is_same_v<T, PolyQuotientDesc>) {
          return {{"type", "poly_quotient"}, {"p", to_json(d.p)}, {"poly", poly_to_json(d.modulus)}};
        } else if constexpr (std::is_same_v<T, ProductDesc>) {
          Json factors = Json::array();
          for (std::size_t i = 0; i < ring.component_count(); ++i) factors.push_back(ring_to_json(ring.component(i)));
          return {{"type", "product"}, {"factors", factors}};
        } else if constexpr (std::is_same_v<T, LocalIntDesc>) {
          return {{"type", "local_int"}, {"p", to_json(d.p)}};
        } else {
          return {{"type", "quad_order"}, {"d", to_json(d.d)}};
        }
      },
      ring.descriptor().value);
}

Ring ring_from_json(const Json& j) {
  const std::string type = field(j, "type").get<std::string>();
  if (type == "zmod") return Ring::zmod(integer_from_json(field(j, "modulus")));
  if (type == "gf") {
    const Integer p = integer_from_json(field(j, "p"));
    if (j.contains("poly")) return Ring::ext_field(p, poly_from_json(j.at("poly")));
    return Ring::prime_field(p);
  }
  if (type == "poly_quotient") return Ring::poly_quotient(integer_from_json(field(j, "p")), poly_from_json(field(j, "poly")));
  if (type == "product") {
    std::vector<Ring> factors;
    for (const auto& f : field(j, "factors")) factors.push_back(ring_from_json(f));
    return Ring::product(factors);
  }
  if (type == "local_int") return Ring::local_int(integer_from_json(field(j, "p")));
  if (type == "quad_order") return Ring::quad_order(integer_from_json(field(j, "d")));
  fail(ErrorKind::InvalidInput, "unknown ring type \"" + type + "\"");
}

Json elem_to_json(const Ring& ring, const Elem& a) {
  switch (ring.kind()) {
    case RingKind::ZMod:
    case RingKind::PrimeField:
      return to_json(a.c[0]);
    case RingKind::LocalInt:
      return ring.format(a);
    case RingKind::ExtField:
    case RingKind::PolyQuotient:
    case RingKind::QuadOrder: {
      Json out = Json::array();
      for (const auto& c : a.c) out.push_back(to_json(c));
      return out;
    }
    case RingKind::Product: {
      Json out = Json::array();
      for (std::size_t i = 0; i < ring.component_count(); ++i)
        out.push_back(elem_to_json(ring.component(i), ring.project(a, i)));
      return out;
    }
  }
  return nullptr;
}

Elem elem_from_json(const Ring& ring, const Json& j) {
  switch (ring.kind()) {
    case RingKind::ZMod:
    case RingKind::PrimeField:
      return ring.from_int(integer_from_json(j));
    case RingKind::LocalInt: {
      const Rational q = parse_rational(text_of(j));
      return ring.make({q.get_num(), q.get_den()});
    }
    case RingKind::ExtField:
    case RingKind::PolyQuotient: {
      if (!j.is_array()) return ring.from_int(integer_from_json(j));
      return ring.from_poly(fp::normalize(poly_from_json(j), ring.poly_prime()));
    }
    case RingKind::QuadOrder: {
      if (!j.is_array()) return ring.from_int(integer_from_json(j));
      if (j.size() != 2) fail(ErrorKind::InvalidInput, "quadratic order element must be [a, b]");
      return ring.make({integer_from_json(j[0]), integer_from_json(j[1])});
    }
    case RingKind::Product: {
      if (!j.is_array()) return ring.from_int(integer_from_json(j));
      if (j.size() != ring.component_count()) fail(ErrorKind::InvalidInput, "product element has the wrong arity");
      std::vector<Elem> parts;
      for (std::size_t i = 0; i < j.size(); ++i) parts.push_back(elem_from_json(ring.component(i), j[i]));
      return ring.assemble(parts);
    }
  }
  fail(ErrorKind::InvalidInput, "unsupported ring");
}

Json vec_to_json(const Ring& ring, const Vec& v) {
  Json out = Json::array();
  for (const auto& x : v) out.push_back(elem_to_json(ring, x));
  return out;
}

Vec vec_from_json(const Ring& ring, const Json& j) {
  if (!j.is_array()) fail(ErrorKind::InvalidInput, "vector must be an array");
  Vec out;
  for (const auto& x : j) out.push_back(elem_from_json(ring, x));
  return out;
}

std::vector<Vec> vecs_from_json(const Ring& ring, const Json& j) {
  if (!j.is_array()) fail(ErrorKind::InvalidInput, "expected an array of vectors");
  std::vector<Vec> out;
  for (const auto& v : j) out.push_back(vec_from_json(ring, v));
  return out;
}

Json vecs_to_json(const Ring& ring, const std::vector<Vec>& vs) {
  Json out = Json::array();
  for (const auto& v : vs) out.push_back(vec_to_json(ring, v));
  return out;
}

Json matrix_to_json(const Matrix& m) {
  Json data = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t k = 0; k < m.cols(); ++k) data.push_back(elem_to_json(m.ring(), m(i, k)));
  return {{"ring", ring_to_json(m.ring())}, {"rows", m.rows()}, {"cols", m.cols()}, {"data", data}};
}

Matrix matrix_from_json(const Json& j, const std::optional<Ring>& ring) {
  if (j.is_array()) {
    if (!ring) fail(ErrorKind::InvalidInput, "matrix given as nested rows needs a ring");
    std::vector<Vec> rows = vecs_from_json(*ring, j);
    const std::size_t cols = rows.empty() ? 0 : rows[0].size();
    return Matrix::from_rows(*ring, rows, cols);
  }
  const Ring r = ring_of(j, ring, "matrix");
  const Json& data = field(j, "data");
  if (!j.contains("rows")) return matrix_from_json(data, r);
  const std::size_t rows = count_from_json(j.at("rows")), cols = count_from_json(field(j, "cols"));
  Matrix m(r, rows, cols);
  if (!data.is_array()) fail(ErrorKind::InvalidInput, "matrix data must be a flat row-major array");
  if (data.size() != rows * cols) fail(ErrorKind::InvalidInput, "matrix data has the wrong length");
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t k = 0; k < cols; ++k) m(i, k) = elem_from_json(r, data[i * cols + k]);
  return m;
}

Json module_to_json(const ModulePresentation& m) {
  return {{"ring", ring_to_json(m.ring())}, {"ambient", m.ambient()}, {"relations", matrix_to_json(m.relations())}};
}

ModulePresentation module_from_json(const Json& j) {
  const Ring ring = ring_from_json(field(j, "ring"));
  const std::size_t t = count_from_json(field(j, "ambient"));
  if (!j.contains("relations") || (j.at("relations").is_array() && j.at("relations").empty()))
    return ModulePresentation::free(ring, t);
  const Json& rel = j.at("relations");
  if (rel.is_array() && !rel.empty() && rel[0].is_array() && rel[0].empty())
    return ModulePresentation::free(ring, t);
  return ModulePresentation(ring, t, matrix_from_json(rel, ring));
}

Json idempotent_to_json(const ProjectiveIdempotent& p) {
  return {{"ring", ring_to_json(p.ring())}, {"e", matrix_to_json(p.matrix())}};
}

ProjectiveIdempotent idempotent_from_json(const Json& j) {
  const Ring ring = ring_from_json(field(j, "ring"));
  return ProjectiveIdempotent(matrix_from_json(field(j, "e"), ring));
}

Json quad_ideal_to_json(const QuadIdeal& ideal) {
  const auto h = ideal.hnf();
  return {{"ring", ring_to_json(ideal.ring())},
          {"hnf", Json::array({Json::array({to_json(h[0][0]), to_json(h[0][1])}),
                               Json::array({to_json(h[1][0]), to_json(h[1][1])})})},
          {"norm", to_json(ideal.norm())}};
}

QuadIdeal quad_ideal_from_json(const Json& j, const std::optional<Ring>& ring) {
  const Ring r = ring_of(j, ring, "ideal");
  if (r.kind() != RingKind::QuadOrder) fail(ErrorKind::UnsupportedRing, "ideals are supported over quadratic orders");
  if (j.contains("generators")) {
    std::vector<Elem> gens;
    for (const auto& g : j.at("generators")) gens.push_back(elem_from_json(r, g));
    return QuadIdeal::from_generators(r, gens);
  }
  const Json& h = field(j, "hnf");
  if (!h.is_array() || h.size() != 2) fail(ErrorKind::InvalidInput, "hnf must be a 2x2 matrix");
  std::vector<std::array<Integer, 2>> rows;
  for (const auto& row : h) {
    if (!row.is_array() || row.size() != 2) fail(ErrorKind::InvalidInput, "hnf must be a 2x2 matrix");
    rows.push_back({integer_from_json(row[0]), integer_from_json(row[1])});
  }
  return QuadIdeal(r, rows);
}

Json algebra_to_json(const StructureConstantAlgebra& a) {
  Json table = Json::array();
  for (std::size_t i = 0; i < a.dim(); ++i) {
    Json row = Json::array();
    for (std::size_t k = 0; k < a.dim(); ++k) row.push_back(vec_to_json(a.ring(), a.product(i, k)));
    table.push_back(row);
  }
  return {{"ring", ring_to_json(a.ring())}, {"dim", a.dim()}, {"table", table}, {"unit", vec_to_json(a.ring(), a.unit())}};
}

StructureConstantAlgebra algebra_from_json(const Json& j, const std::optional<Ring>& ring) {
  const Ring r = ring_of(j, ring, "algebra");
  const std::size_t dim = count_from_json(field(j, "dim"));
  const Json& t = field(j, "table");
  if (!t.is_array() || t.size() != dim) fail(ErrorKind::InvalidInput, "table must have dim rows");
  std::vector<std::vector<Vec>> table;
  for (const auto& row : t) table.push_back(vecs_from_json(r, row));
  return StructureConstantAlgebra(r, dim, std::move(table), vec_from_json(r, field(j, "unit")));
}

Json extension_to_json(const GaloisExtensionData& e) {
  return {{"algebra", algebra_to_json(e.algebra)}, {"sigma", matrix_to_json(e.sigma)}, {"order", e.order}};
}

GaloisExtensionData extension_from_json(const Json& j) {
  StructureConstantAlgebra a = algebra_from_json(field(j, "algebra"));
  Matrix sigma = matrix_from_json(field(j, "sigma"), a.ring());
  return make_extension(std::move(a), std::move(sigma), count_from_json(field(j, "order")));
}

Json word_to_json(const Ring& ring, const ElementaryWord& w) {
  Json positions = Json::array();
  for (const auto& [i, k] : w.positions) positions.push_back({i, k});
  Json out{{"m", w.m}, {"positions", positions}};
  if (!w.coeffs.empty()) out["coeffs"] = vec_to_json(ring, w.coeffs);
  return out;
}

ElementaryWord word_from_json(const Ring& ring, const Json& j) {
  ElementaryWord w;
  w.m = count_from_json(field(j, "m"));
  for (const auto& pos : field(j, "positions")) {
    if (!pos.is_array() || pos.size() != 2) fail(ErrorKind::InvalidInput, "position must be [i, j]");
    const std::size_t i = count_from_json(pos[0]), k = count_from_json(pos[1]);
    if (i == k || i < 1 || k < 1 || i > w.m || k > w.m) fail(ErrorKind::InvalidInput, "position out of range");
    w.positions.emplace_back(i, k);
  }
  if (j.contains("coeffs")) w.coeffs = vec_from_json(ring, j.at("coeffs"));
  if (!w.coeffs.empty() && w.coeffs.size() != w.positions.size())
    fail(ErrorKind::InvalidInput, "coeffs and positions differ in length");
  return w;
}

Json ideal_to_json(const MaxIdeal& m) {
  return {{"index", m.index()},
          {"label", m.describe()},
          {"residue_char", to_json(m.residue_char())},
          {"residue_degree", m.residue_degree()}};
}

Json verdict_to_json(const InvertibilityVerdict& v, const Ring& ring) {
  Json out{{"invertible", v.invertible}, {"size", v.size}, {"residue_ranks", v.residue_ranks}};
  if (v.determinant) out["determinant"] = elem_to_json(ring, *v.determinant);
  if (v.vanishing_ideal) out["vanishing_ideal"] = ideal_to_json(*v.vanishing_ideal);
  return out;
}

Json generation_to_json(const GenerationReport& r, const Ring& ring) {
  Json fibers = Json::array();
  for (const auto& f : r.fibers)
    fibers.push_back({{"ideal", ideal_to_json(ring.max_ideal(f.ideal))}, {"fiber_dim", f.fiber_dim}, {"span_dim", f.span_dim}});
  Json out{{"generates", r.generates}, {"fibers", fibers}};
  if (r.failing_ideal) out["failing_ideal"] = ideal_to_json(ring.max_ideal(*r.failing_ideal));
  if (r.howell_verdict) out["howell_verdict"] = *r.howell_verdict;
  return out;
}

}  // namespace forge

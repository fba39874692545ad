#include "forge/cli.hpp"

#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include <CLI11.hpp>

#include "forge/error.hpp"
#include "forge/hilbert.hpp"
#include "forge/json_io.hpp"

namespace forge {

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Inline JSON, or the path of a file holding it.
Json load_arg(const std::string& text, const char* what) {
  if (text.empty()) throw UsageError(std::string("empty value for ") + what);
  std::error_code ec;
  if (text.size() < 4096 && std::filesystem::is_regular_file(text, ec)) {
    std::ifstream in(text);
    try {
      return Json::parse(in);
    } catch (const Json::parse_error& e) {
      fail(ErrorKind::InvalidInput, std::string(what) + " file is not valid JSON: " + e.what());
    }
  }
  try {
    return Json::parse(text);
  } catch (const Json::parse_error&) {
    // A bare word such as an unquoted decimal or rational.
    return text;
  }
}

Json require(const std::string& text, const char* what) {
  if (text.empty()) throw UsageError(std::string("missing --") + what);
  return load_arg(text, what);
}

Json error_json(const Error& e) {
  Json out{{"error", to_string(e.kind())}, {"message", e.what()}};
  if (e.ideal()) out["ideal"] = *e.ideal();
  return out;
}

Json verified(Json checks) { return {{"checks", std::move(checks)}}; }

bool all_true(const Json& checks) {
  for (const auto& [k, v] : checks.items())
    if (v.is_boolean() && !v.get<bool>()) return false;
  return true;
}

Ring ring_option(const std::string& text, const Json& doc_with_ring) {
  if (!text.empty()) return ring_from_json(load_arg(text, "ring"));
  if (doc_with_ring.is_object() && doc_with_ring.contains("ring")) return ring_from_json(doc_with_ring.at("ring"));
  throw UsageError("missing --ring");
}

// ---- factor-sl -------------------------------------------------------------

Json cmd_factor_sl(const std::string& ring_arg, const std::string& matrix_arg) {
  const Json mj = require(matrix_arg, "matrix");
  const Ring ring = ring_option(ring_arg, mj);
  const Matrix a = matrix_from_json(mj, ring);
  const ElementaryWord w = factor_sl(a);
  return {{"command", "factor-sl"},
          {"input", {{"matrix", matrix_to_json(a)}}},
          {"word", word_to_json(ring, w)},
          {"certificate",
           {{"word_length", w.positions.size()},
            {"positions_match_sequence", w.positions == position_sequence(a.rows()).positions},
            {"product_equals_input", evaluate_word(ring, w) == a}}}};
}

Json verify_factor_sl(const Json& doc) {
  const Matrix a = matrix_from_json(doc.at("input").at("matrix"));
  const ElementaryWord w = word_from_json(a.ring(), doc.at("word"));
  return verified({{"positions_match_sequence", w.m == a.rows() && w.positions == position_sequence(w.m).positions},
                         {"product_equals_input", w.coeffs.size() == w.positions.size() && evaluate_word(a.ring(), w) == a}});
}

// ---- min-gens --------------------------------------------------------------

Json cmd_min_gens(const std::string& module_arg) {
  const ModulePresentation m = module_from_json(require(module_arg, "module"));
  const auto gens = minimal_generators(m);
  const auto report = generates(m, gens);
  return {{"command", "min-gens"},
          {"input", {{"module", module_to_json(m)}}},
          {"generators", vecs_to_json(m.ring(), gens)},
          {"certificate",
           {{"max_fiber_dimension", max_fiber_dimension(m)},
            {"count", gens.size()},
            {"generation", generation_to_json(report, m.ring())}}}};
}

Json verify_min_gens(const Json& doc) {
  const ModulePresentation m = module_from_json(doc.at("input").at("module"));
  const auto gens = vecs_from_json(m.ring(), doc.at("generators"));
  return verified({{"generates", generates(m, gens).generates},
                         {"count_is_max_fiber_dimension", gens.size() == max_fiber_dimension(m)}});
}

// ---- lift-gens -------------------------------------------------------------

Json cmd_lift_gens(const std::string& module_arg, const std::string& ideal_arg, const std::string& b_arg) {
  const ModulePresentation m = module_from_json(require(module_arg, "module"));
  const Vec ideal = vec_from_json(m.ring(), require(ideal_arg, "ideal"));
  const auto b = vecs_from_json(m.ring(), require(b_arg, "b"));
  const LiftResult r = lift_generators(m, ideal, b);
  Json corrections = Json::array();
  for (const auto& cj : r.certificate.corrections) corrections.push_back(vecs_to_json(m.ring(), cj));
  return {{"command", "lift-gens"},
          {"input", {{"module", module_to_json(m)}, {"ideal", vec_to_json(m.ring(), ideal)}, {"b", vecs_to_json(m.ring(), b)}}},
          {"lifted", vecs_to_json(m.ring(), r.lifted)},
          {"certificate",
           {{"corrections", corrections},
            {"ideals_containing_i", r.certificate.ideals_containing_i},
            {"generation", generation_to_json(generates(m, r.lifted), m.ring())}}}};
}

Json verify_lift_gens(const Json& doc) {
  const Json& in = doc.at("input");
  const ModulePresentation m = module_from_json(in.at("module"));
  const Ring& R = m.ring();
  const Vec ideal = vec_from_json(R, in.at("ideal"));
  const auto b = vecs_from_json(R, in.at("b"));
  LiftResult r{vecs_from_json(R, doc.at("lifted")), {}};
  for (const auto& cj : doc.at("certificate").at("corrections")) r.certificate.corrections.push_back(vecs_from_json(R, cj));
  r.certificate.ideals_containing_i = doc.at("certificate").at("ideals_containing_i").get<std::vector<std::size_t>>();
  return verified({{"lift_certificate", verify_lift(m, ideal, b, r)}});
}

// ---- two-gen-ideal ---------------------------------------------------------

Json cmd_two_gen_ideal(const std::string& ring_arg, const std::string& ideal_arg) {
  const Json ij = require(ideal_arg, "ideal");
  std::optional<Ring> ring;
  if (!ring_arg.empty()) ring = ring_from_json(load_arg(ring_arg, "ring"));
  const QuadIdeal ideal = quad_ideal_from_json(ij, ring);
  const Ring& R = ideal.ring();
  const TwoGenerators g = ideal_two_generators(ideal);
  const QuadIdeal spanned = QuadIdeal::from_generators(R, {g.x, g.y});
  Json primes = Json::array();
  for (const auto& p : g.cofactor_primes) primes.push_back(quad_ideal_to_json(p));
  const auto principal = principal_generator(ideal);
  return {{"command", "two-gen-ideal"},
          {"input", {{"ideal", quad_ideal_to_json(ideal)}}},
          {"x", elem_to_json(R, g.x)},
          {"y", elem_to_json(R, g.y)},
          {"certificate",
           {{"generated", quad_ideal_to_json(spanned)},
            {"hnf_equal", spanned == ideal},
            {"cofactor_primes", primes},
            {"principal_generator", principal ? elem_to_json(R, *principal) : Json(nullptr)}}}};
}

Json verify_two_gen_ideal(const Json& doc) {
  const QuadIdeal ideal = quad_ideal_from_json(doc.at("input").at("ideal"));
  const Ring& R = ideal.ring();
  const Elem x = elem_from_json(R, doc.at("x")), y = elem_from_json(R, doc.at("y"));
  Json checks{{"hnf_equal", QuadIdeal::from_generators(R, {x, y}) == ideal}};
  const Json& pg = doc.at("certificate").at("principal_generator");
  if (!pg.is_null()) checks["principal_generator"] = QuadIdeal::from_generators(R, {elem_from_json(R, pg)}) == ideal;
  return verified(checks);
}

// ---- classify --------------------------------------------------------------

Json frame_to_json(const FrameTriple& f) {
  return {{"a", matrix_to_json(f.a)}, {"e", matrix_to_json(f.e)}, {"b", matrix_to_json(f.b)}};
}

Json cmd_classify(const std::string& idem_arg, const std::string& gens_arg, const std::string& frame_arg) {
  const ProjectiveIdempotent p = idempotent_from_json(require(idem_arg, "idempotent"));
  const Ring& R = p.ring();
  const auto gens = vecs_from_json(R, require(gens_arg, "gens"));
  std::optional<FrameTriple> frame;
  if (!frame_arg.empty()) {
    const Json fj = load_arg(frame_arg, "frame");
    frame = idempotent_from_frame(matrix_from_json(fj.at("a"), R), matrix_from_json(fj.at("b"), R));
  }
  const ClassifyingSurjection s = classifying_surjection(p, gens, frame);
  const auto used_frame = frame ? frame : diagonal_frame(p);
  Json spec;
  try {
    const UniversalPoint u = specialize_universal_idempotent(p);
    spec = {{"rank", u.n}, {"size", u.m}, {"charpoly", vec_to_json(R, u.charpoly)}};
  } catch (const Error& e) {
    spec = error_json(e);
  }
  return {{"command", "classify"},
          {"input",
           {{"idempotent", idempotent_to_json(p)},
            {"gens", vecs_to_json(R, gens)},
            {"frame", used_frame ? frame_to_json(*used_frame) : Json(nullptr)}}},
          {"surjection", matrix_to_json(s.ambient)},
          {"coordinates", s.coordinates ? matrix_to_json(*s.coordinates) : Json(nullptr)},
          {"certificate",
           {{"generation", generation_to_json(s.certificate, R)},
            {"round_trip", generators_of(s) == gens},
            {"specialization", spec}}}};
}

Json verify_classify(const Json& doc) {
  const Json& in = doc.at("input");
  const ProjectiveIdempotent p = idempotent_from_json(in.at("idempotent"));
  const Ring& R = p.ring();
  const auto gens = vecs_from_json(R, in.at("gens"));
  const Matrix s = matrix_from_json(doc.at("surjection"), R);
  bool fixed = true;
  for (const auto& g : gens) fixed = fixed && forge::apply(p.matrix(), g) == g;
  Json checks{{"gens_in_image", fixed},
              {"surjection_columns_are_gens", s == Matrix::from_columns(R, gens, p.size())},
              {"generates", generates(idempotent_module(p), gens).generates}};
  if (!in.at("frame").is_null()) {
    const Matrix a = matrix_from_json(in.at("frame").at("a"), R), b = matrix_from_json(in.at("frame").at("b"), R);
    checks["frame_ab_identity"] = is_identity(a * b);
    checks["frame_ba_is_e"] = b * a == p.matrix();
    if (!doc.at("coordinates").is_null())
      checks["coordinates_recover_gens"] = b * matrix_from_json(doc.at("coordinates"), R) == s;
  }
  return verified(checks);
}

// ---- symbol ----------------------------------------------------------------

Json splitting_to_json(const Ring& F, const Splitting& s) {
  Json images = Json::array();
  for (const auto& m : s.images) images.push_back(matrix_to_json(m));
  return {{"degree", s.degree},
          {"element", vec_to_json(F, s.element)},
          {"idempotent", vec_to_json(F, s.idempotent)},
          {"left_ideal_basis", vecs_to_json(F, s.left_ideal_basis)},
          {"images", images},
          {"seed", s.seed},
          {"candidates_tried", s.candidates_tried}};
}

Splitting splitting_from_json(const Ring& F, const Json& j) {
  Splitting s;
  s.degree = j.at("degree").get<std::size_t>();
  s.element = vec_from_json(F, j.at("element"));
  s.idempotent = vec_from_json(F, j.at("idempotent"));
  s.left_ideal_basis = vecs_from_json(F, j.at("left_ideal_basis"));
  for (const auto& m : j.at("images")) s.images.push_back(matrix_from_json(m, F));
  s.seed = j.at("seed").get<std::uint64_t>();
  s.candidates_tried = j.at("candidates_tried").get<std::size_t>();
  return s;
}

Json cmd_symbol(const std::string& ring_arg, const std::string& a_arg, const std::string& b_arg, std::size_t n,
                const std::string& rho_arg, std::uint64_t seed, bool split) {
  const Ring R = ring_from_json(require(ring_arg, "ring"));
  const Elem a = elem_from_json(R, require(a_arg, "a")), b = elem_from_json(R, require(b_arg, "b"));
  const RootOfUnity root{elem_from_json(R, require(rho_arg, "rho")), n};
  const StructureConstantAlgebra alg = symbol_algebra(R, a, b, root);
  Json cert{{"azumaya", verdict_to_json(is_azumaya(alg), R)}};
  if (split && R.is_field() && R.cardinality()) cert["splitting"] = splitting_to_json(R, split_over_finite_field(alg, seed));
  return {{"command", "symbol"},
          {"input",
           {{"ring", ring_to_json(R)},
            {"a", elem_to_json(R, a)},
            {"b", elem_to_json(R, b)},
            {"n", n},
            {"rho", elem_to_json(R, root.rho)}}},
          {"algebra", algebra_to_json(alg)},
          {"certificate", cert}};
}

Json verify_symbol(const Json& doc) {
  const Json& in = doc.at("input");
  const Ring R = ring_from_json(in.at("ring"));
  const StructureConstantAlgebra rebuilt =
      symbol_algebra(R, elem_from_json(R, in.at("a")), elem_from_json(R, in.at("b")),
                     {elem_from_json(R, in.at("rho")), in.at("n").get<std::size_t>()});
  const StructureConstantAlgebra given = algebra_from_json(doc.at("algebra"), R);
  const bool claimed = doc.at("certificate").at("azumaya").at("invertible").get<bool>();
  Json checks{{"table_matches", given.table() == rebuilt.table() && given.unit() == rebuilt.unit()},
              {"azumaya_verdict", is_azumaya(given).invertible == claimed}};
  if (doc.at("certificate").contains("splitting"))
    checks["splitting"] = verify_splitting(given, splitting_from_json(R, doc.at("certificate").at("splitting")));
  return verified(checks);
}

// ---- hilbert ---------------------------------------------------------------

Json cmd_hilbert(const std::string& a_text, const std::string& b_text, const std::string& place_text) {
  if (a_text.empty() || b_text.empty()) throw UsageError("hilbert needs --a and --b");
  const Rational a = parse_rational(a_text), b = parse_rational(b_text);
  Json input{{"a", a.get_str()}, {"b", b.get_str()}};
  if (!place_text.empty()) {
    const Place v = parse_place(place_text);
    input["place"] = v.name();
    return {{"command", "hilbert"},
            {"input", input},
            {"symbol", hilbert_symbol(a, b, v)},
            {"certificate", {{"search", hilbert_symbol_by_search(a, b, v)}}}};
  }
  const ProductFormula pf = hilbert_product(a, b);
  Json symbols = Json::array();
  for (std::size_t i = 0; i < pf.places.size(); ++i)
    symbols.push_back({{"place", pf.places[i].name()},
                       {"symbol", pf.symbols[i]},
                       {"search", hilbert_symbol_by_search(a, b, pf.places[i])}});
  return {{"command", "hilbert"}, {"input", input}, {"symbols", symbols}, {"certificate", {{"product", pf.product}}}};
}

Json verify_hilbert(const Json& doc) {
  const Json& in = doc.at("input");
  const Rational a = parse_rational(in.at("a").get<std::string>()), b = parse_rational(in.at("b").get<std::string>());
  if (in.contains("place")) {
    const Place v = parse_place(in.at("place").get<std::string>());
    const int s = doc.at("symbol").get<int>();
    return verified({{"closed_form", hilbert_symbol(a, b, v) == s}, {"search", hilbert_symbol_by_search(a, b, v) == s}});
  }
  int product = 1;
  bool each = true;
  for (const auto& e : doc.at("symbols")) {
    const Place v = parse_place(e.at("place").get<std::string>());
    each = each && hilbert_symbol(a, b, v) == e.at("symbol").get<int>();
    product *= e.at("symbol").get<int>();
  }
  return verified({{"symbols", each}, {"product", product == doc.at("certificate").at("product").get<int>()}});
}

// ---- artin-schreier --------------------------------------------------------

Json cmd_as_build(const std::string& ring_arg, const std::string& a_arg) {
  const Ring R = ring_from_json(require(ring_arg, "ring"));
  const Elem a = elem_from_json(R, require(a_arg, "a"));
  const GaloisExtensionData e = artin_schreier(R, a);
  return {{"command", "artin-schreier build"},
          {"input", {{"ring", ring_to_json(R)}, {"a", elem_to_json(R, a)}}},
          {"extension", extension_to_json(e)},
          {"certificate", {{"galois", verdict_to_json(is_galois(e), R)}}}};
}

Json verify_as_build(const Json& doc) {
  const Json& in = doc.at("input");
  const Ring R = ring_from_json(in.at("ring"));
  const GaloisExtensionData given = extension_from_json(doc.at("extension"));
  const GaloisExtensionData rebuilt = artin_schreier(R, elem_from_json(R, in.at("a")));
  return verified({{"action_verified", true},
                         {"matches_construction", given.algebra.table() == rebuilt.algebra.table() &&
                                                      given.sigma == rebuilt.sigma && given.order == rebuilt.order},
                         {"galois", is_galois(given).invertible}});
}

Json cmd_as_descend(const std::string& ext_arg) {
  const GaloisExtensionData e = extension_from_json(require(ext_arg, "extension"));
  const Ring& R = e.base();
  const auto verdict = is_galois(e);
  if (!verdict.invertible)
    fail(ErrorKind::PreconditionViolated, "the extension is not Galois", verdict.vanishing_ideal
                                                                             ? std::optional(verdict.vanishing_ideal->index())
                                                                             : std::nullopt);
  const Descent d = artin_schreier_descent(e);
  return {{"command", "artin-schreier descend"},
          {"input", {{"extension", extension_to_json(e)}}},
          {"a", elem_to_json(R, d.a)},
          {"x", vec_to_json(R, d.x)},
          {"trace_one", vec_to_json(R, d.trace_one)},
          {"isomorphism", matrix_to_json(d.isomorphism)},
          {"certificate", {{"galois", verdict_to_json(verdict, R)}}}};
}

Json verify_as_descend(const Json& doc) {
  const GaloisExtensionData e = extension_from_json(doc.at("input").at("extension"));
  const auto& s = e.algebra;
  const Ring& R = e.base();
  const Elem a = elem_from_json(R, doc.at("a"));
  const Vec x = vec_from_json(R, doc.at("x"));
  const Matrix iso = matrix_from_json(doc.at("isomorphism"), R);
  std::vector<Vec> powers;
  for (std::size_t k = 0; k < s.dim(); ++k) powers.push_back(s.pow(x, k));
  return verified({{"sigma_x_is_x_plus_1", forge::apply(e.sigma, x) == s.add(x, s.unit())},
                         {"x_p_minus_x_is_a", s.sub(s.pow(x, e.order), x) == s.scalar(a)},
                         {"isomorphism_columns_are_powers", iso == Matrix::from_columns(R, powers, s.dim())},
                         {"isomorphism_invertible", invertibility_verdict(iso).invertible}});
}

// ---- selftest --------------------------------------------------------------

struct Suite {
  std::string name;
  std::size_t cases = 0, passed = 0;
};

Integer draw(std::mt19937_64& rng, long lo, long hi) {
  return Integer(std::uniform_int_distribution<long>(lo, hi)(rng));
}

Matrix random_matrix(const Ring& R, std::size_t r, std::size_t c, std::mt19937_64& rng) {
  Matrix m(R, r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t k = 0; k < c; ++k) m(i, k) = R.random(rng);
  return m;
}

ModulePresentation random_module(std::mt19937_64& rng) {
  const Ring R = Ring::zmod(draw(rng, 2, 360));
  const std::size_t t = draw(rng, 1, 4).get_ui(), k = draw(rng, 0, 3).get_ui();
  if (k == 0) return ModulePresentation::free(R, t);
  return ModulePresentation(R, t, random_matrix(R, t, k, rng));
}

Json run_selftest(std::uint64_t seed, std::size_t count) {
  std::mt19937_64 rng(seed);
  std::vector<Suite> suites;
  auto run = [&](const std::string& name, const std::function<bool()>& body) {
    Suite s{name};
    for (std::size_t i = 0; i < count; ++i) {
      ++s.cases;
      if (body()) ++s.passed;
    }
    suites.push_back(s);
  };

  run("sl-factor multiply-back", [&] {
    static const long moduli[] = {6, 720, 30030};
    const Ring R = Ring::zmod(Integer(moduli[rng() % 3]));
    const std::size_t m = 2 + rng() % 3;
    Matrix a = Matrix::identity(R, m);
    for (int s = 0; s < 20; ++s) {
      const std::size_t i = rng() % m, j = (i + 1 + rng() % (m - 1)) % m;
      a = a * Matrix::elementary(R, m, i, j, R.random(rng));
    }
    const auto w = factor_sl(a);
    return evaluate_word(R, w) == a && w.positions == position_sequence(m).positions;
  });
  run("minimal generators", [&] {
    const auto m = random_module(rng);
    const auto g = minimal_generators(m);
    return g.size() == max_fiber_dimension(m) && generates(m, g).generates;
  });
  run("extend generator", [&] {
    const auto m = random_module(rng);
    std::vector<Vec> elems;
    for (std::size_t i = rng() % 3; i > 0; --i) elems.push_back(random_matrix(m.ring(), m.ambient(), 1, rng).column(0));
    std::vector<MaxIdeal> s;
    for (const auto& p : m.ring().max_ideals())
      if (span_dim_at(m, elems, p) < fiber_dimension(m, p)) s.push_back(p);
    auto more = elems;
    more.push_back(extend_generator(m, s, elems));
    for (const auto& p : s)
      if (span_dim_at(m, more, p) != span_dim_at(m, elems, p) + 1) return false;
    return true;
  });
  run("generator lifting", [&] {
    const auto m = random_module(rng);
    const Ring& R = m.ring();
    const Vec ideal{R.random(rng)};
    auto b = minimal_generators(m);
    for (auto& v : b)
      for (auto& x : v) x = R.add(x, R.mul(ideal[0], R.random(rng)));
    const auto r = lift_generators(m, ideal, b);
    return verify_lift(m, ideal, b, r);
  });
  run("two generators in Z[sqrt(-5)]", [&] {
    const Ring R = Ring::quad_order(Integer(-5));
    Elem g1 = R.make({draw(rng, -40, 40), draw(rng, -40, 40)}), g2 = R.make({draw(rng, -40, 40), draw(rng, -40, 40)});
    if (R.is_zero(g1)) g1 = R.one();
    const QuadIdeal I = QuadIdeal::from_generators(R, {g1, g2});
    if (I.norm() > 10000) return true;
    const auto g = ideal_two_generators(I);
    return QuadIdeal::from_generators(R, {g.x, g.y}) == I;
  });
  run("generators to surjection round trip", [&] {
    const Ring R = Ring::zmod(draw(rng, 2, 360));
    const std::size_t m = 1 + rng() % 3;
    std::vector<Vec> rows;
    for (std::size_t i = 0; i < m; ++i)
      if (rng() % 2) {
        Vec row(m, R.zero());
        row[i] = R.one();
        rows.push_back(row);
      }
    const Matrix fa = Matrix::from_rows(R, rows, m);
    const FrameTriple f = idempotent_from_frame(fa, fa.transpose());
    const ProjectiveIdempotent p(f.e);
    std::vector<Vec> gens;
    for (std::size_t k = 0; k < m; ++k) gens.push_back(f.e.column(k));
    gens.push_back(forge::apply(f.e, random_matrix(R, m, 1, rng).column(0)));
    const auto s = classifying_surjection(p, gens, f);
    return generators_of(s) == gens && f.a * f.e == f.a && f.e * f.b == f.b;
  });
  run("symbol algebras split", [&] {
    static const long qs[] = {5, 7, 13};
    const long q = qs[rng() % 3];
    const std::size_t n = (q % 3 == 1 && rng() % 2) ? 3 : 2;
    const Ring F = Ring::prime_field(Integer(q));
    Elem rho = F.one();
    for (long g = 2; g < q; ++g) {
      const Elem c = F.from_int(Integer(g));
      try {
        validate_root(F, {c, n});
        rho = c;
        break;
      } catch (const Error&) {
      }
    }
    const Elem a = F.from_int(draw(rng, 1, q - 1)), b = F.from_int(draw(rng, 1, q - 1));
    const auto alg = symbol_algebra(F, a, b, {rho, n});
    return is_azumaya(alg).invertible && verify_splitting(alg, split_over_finite_field(alg, seed));
  });
  run("hilbert closed form vs search", [&] {
    static const long places[] = {0, 2, 3, 5, 7, 13};
    long a = draw(rng, 1, 50).get_si(), b = draw(rng, 1, 50).get_si();
    if (rng() % 2) a = -a;
    if (rng() % 2) b = -b;
    const long pl = places[rng() % 6];
    const Place v = pl == 0 ? Place::real() : Place::at(Integer(pl));
    return hilbert_symbol(Rational(a), Rational(b), v) == hilbert_symbol_by_search(Rational(a), Rational(b), v);
  });
  run("artin-schreier round trip", [&] {
    static const long ps[] = {2, 3, 5, 7};
    const Ring R = Ring::prime_field(Integer(ps[rng() % 4]));
    const Elem a = R.random(rng);
    const auto e = artin_schreier(R, a);
    if (!is_galois(e).invertible) return false;
    const auto d = artin_schreier_descent(e);
    return wp_preimage(R, R.sub(d.a, a)).has_value();
  });

  Json out{{"command", "selftest"}, {"seed", seed}, {"count", count}};
  Json list = Json::array();
  bool all = true;
  for (const auto& s : suites) {
    list.push_back({{"name", s.name}, {"cases", s.cases}, {"passed", s.passed}});
    all = all && s.passed == s.cases;
  }
  out["suites"] = list;
  out["all_passed"] = all;
  return out;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact algebra: generators, SL factorization, idempotents, symbol algebras", "forge"};
  app.require_subcommand(1);

  std::string ring, matrix, module, ideal, b, idem, gens, frame, a_arg, b_arg, rho, place, extension, verify;
  std::size_t n = 2, count = 20;
  std::uint64_t seed = fp::kDefaultSeed;
  bool no_split = false;

  auto add_verify = [&](CLI::App* sub) {
    sub->add_option("--verify", verify, "re-check a previously emitted result (JSON or file)");
  };
  auto* factor = app.add_subcommand("factor-sl", "factor an SL matrix into elementary matrices");
  factor->add_option("--ring", ring);
  factor->add_option("--matrix", matrix);
  add_verify(factor);
  auto* mingens = app.add_subcommand("min-gens", "minimal generating set of a module over a semilocal ring");
  mingens->add_option("--module", module);
  mingens->add_option("--seed", seed);
  add_verify(mingens);
  auto* lift = app.add_subcommand("lift-gens", "lift generators of M/IM to generators of M");
  lift->add_option("--module", module);
  lift->add_option("--ideal", ideal, "generators of I");
  lift->add_option("--b", b, "elements generating M/IM");
  lift->add_option("--seed", seed);
  add_verify(lift);
  auto* twogen = app.add_subcommand("two-gen-ideal", "two generators of an ideal of a quadratic order");
  twogen->add_option("--ring", ring);
  twogen->add_option("--ideal", ideal);
  add_verify(twogen);
  auto* classify = app.add_subcommand("classify", "classifying surjection of generators of im(e)");
  classify->add_option("--idempotent", idem);
  classify->add_option("--gens", gens);
  classify->add_option("--frame", frame, "{\"a\":..., \"b\":...} with ab = 1 and ba = e");
  add_verify(classify);
  auto* symbol = app.add_subcommand("symbol", "symbol algebra (a, b) with its Azumaya certificate");
  symbol->add_option("--ring", ring);
  symbol->add_option("--a", a_arg);
  symbol->add_option("--b", b_arg);
  symbol->add_option("--n", n);
  symbol->add_option("--rho", rho);
  symbol->add_option("--seed", seed);
  symbol->add_flag("--no-split", no_split, "skip the explicit splitting over finite fields");
  add_verify(symbol);
  auto* hilbert = app.add_subcommand("hilbert", "Hilbert symbol of rationals at a place, or at all places");
  hilbert->add_option("--a", a_arg);
  hilbert->add_option("--b", b_arg);
  hilbert->add_option("--place", place, "a prime or inf");
  add_verify(hilbert);
  auto* as = app.add_subcommand("artin-schreier", "Artin-Schreier extensions");
  as->require_subcommand(1);
  auto* build = as->add_subcommand("build", "R[x]/(x^p - x - a) with sigma(x) = x + 1");
  build->add_option("--ring", ring);
  build->add_option("--a", a_arg);
  add_verify(build);
  auto* descend = as->add_subcommand("descend", "recover a from a cyclic degree-p extension");
  descend->add_option("--extension", extension);
  add_verify(descend);
  auto* selftest = app.add_subcommand("selftest", "run randomized invariant suites");
  selftest->add_option("--seed", seed);
  selftest->add_option("--count", count, "cases per suite");

  std::vector<const char*> argv{"forge"};
  for (const auto& s : args) argv.push_back(s.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n" << app.help();
    return kExitUsage;
  }

  auto emit = [&](const Json& j) { out << j.dump(2) << "\n"; };
  try {
    Json result;
    const bool verifying = !verify.empty();
    const Json doc = verifying ? load_arg(verify, "verify") : Json();
    if (factor->parsed())
      result = verifying ? verify_factor_sl(doc) : cmd_factor_sl(ring, matrix);
    else if (mingens->parsed())
      result = verifying ? verify_min_gens(doc) : cmd_min_gens(module);
    else if (lift->parsed())
      result = verifying ? verify_lift_gens(doc) : cmd_lift_gens(module, ideal, b);
    else if (twogen->parsed())
      result = verifying ? verify_two_gen_ideal(doc) : cmd_two_gen_ideal(ring, ideal);
    else if (classify->parsed())
      result = verifying ? verify_classify(doc) : cmd_classify(idem, gens, frame);
    else if (symbol->parsed())
      result = verifying ? verify_symbol(doc) : cmd_symbol(ring, a_arg, b_arg, n, rho, seed, !no_split);
    else if (hilbert->parsed())
      result = verifying ? verify_hilbert(doc) : cmd_hilbert(a_arg, b_arg, place);
    else if (build->parsed())
      result = verifying ? verify_as_build(doc) : cmd_as_build(ring, a_arg);
    else if (descend->parsed())
      result = verifying ? verify_as_descend(doc) : cmd_as_descend(extension);
    else if (selftest->parsed())
      result = run_selftest(seed, count);
    if (verifying) {
      result["verified"] = all_true(result.at("checks"));
      emit(result);
      return result["verified"].get<bool>() ? kExitOk : kExitPrecondition;
    }
    emit(result);
    if (selftest->parsed() && !result.at("all_passed").get<bool>()) return kExitInvariant;
    return kExitOk;
  } catch (const UsageError& e) {
    err << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    emit(error_json(e));
    return kExitPrecondition;
  } catch (const InvariantBreach& e) {
    emit({{"error", "InvariantBreach"}, {"message", e.what()}});
    return kExitInvariant;
  } catch (const Json::exception& e) {
    emit({{"error", "InvalidInput"}, {"message", std::string("malformed JSON document: ") + e.what()}});
    return kExitPrecondition;
  }
}

}  // namespace forge

#pragma once

// JSON encodings. Integers are decimal strings (numbers are accepted on
// input). Rings:
//   {"type":"zmod","modulus":"12"}
//   {"type":"gf","p":"7"}                        prime field
//   {"type":"gf","p":"2","poly":["1","1","1"]}    F_p[x]/(f), f irreducible, low to high
//   {"type":"poly_quotient","p":"3","poly":[...]} F_p[x]/(f), any monic f
//   {"type":"product","factors":[...]}
//   {"type":"local_int","p":"2"}
//   {"type":"quad_order","d":"-5"}
// Elements: a decimal string for Z/N and F_p, "a/s" for localizations, a
// coefficient array for F_p[x]/(f), [a, b] for a + b*w, and an array of
// components for products. Matrices: {"ring":..., "rows":r, "cols":c,
// "data":[row-major elements]}. Without "rows"/"cols", "data" (or the
// matrix itself, when the ring is known from context) is a nested array of rows.

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "forge/algebra.hpp"
#include "forge/galois.hpp"
#include "forge/grassmann.hpp"
#include "forge/forster_swan.hpp"
#include "forge/sl_factor.hpp"

namespace forge {

using Json = nlohmann::ordered_json;

Json to_json(const Integer& n);
Integer integer_from_json(const Json& j);

Json ring_to_json(const Ring& ring);
Ring ring_from_json(const Json& j);

Json elem_to_json(const Ring& ring, const Elem& a);
Elem elem_from_json(const Ring& ring, const Json& j);
Json vec_to_json(const Ring& ring, const Vec& v);
Vec vec_from_json(const Ring& ring, const Json& j);
std::vector<Vec> vecs_from_json(const Ring& ring, const Json& j);
Json vecs_to_json(const Ring& ring, const std::vector<Vec>& vs);

Json matrix_to_json(const Matrix& m);
// Uses the embedded "ring" when present, else `ring`.
Matrix matrix_from_json(const Json& j, const std::optional<Ring>& ring = std::nullopt);

// {"ring":..., "ambient":t, "relations": matrix}; relations may be omitted for a free module.
Json module_to_json(const ModulePresentation& m);
ModulePresentation module_from_json(const Json& j);
// {"ring":..., "e": matrix}
Json idempotent_to_json(const ProjectiveIdempotent& p);
ProjectiveIdempotent idempotent_from_json(const Json& j);

// {"ring":..., "hnf":[[h11,h12],[0,h22]]} or {"ring":..., "generators":[...]}
Json quad_ideal_to_json(const QuadIdeal& ideal);
QuadIdeal quad_ideal_from_json(const Json& j, const std::optional<Ring>& ring = std::nullopt);

// {"ring":..., "dim":d, "table":[[[coords]...]...], "unit":[...]}
Json algebra_to_json(const StructureConstantAlgebra& a);
StructureConstantAlgebra algebra_from_json(const Json& j, const std::optional<Ring>& ring = std::nullopt);
// {"algebra":..., "sigma": matrix, "order": n}
Json extension_to_json(const GaloisExtensionData& e);
GaloisExtensionData extension_from_json(const Json& j);

Json word_to_json(const Ring& ring, const ElementaryWord& w);
ElementaryWord word_from_json(const Ring& ring, const Json& j);

Json ideal_to_json(const MaxIdeal& m);
Json verdict_to_json(const InvertibilityVerdict& v, const Ring& ring);
Json generation_to_json(const GenerationReport& r, const Ring& ring);

}  // namespace forge

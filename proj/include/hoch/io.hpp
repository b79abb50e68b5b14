#pragma once

// JSON input documents and report fragments. Scalars are strings "num/den"
// over Q and integers over F_p; basis elements are referenced by name.

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "hoch/ainf.hpp"

namespace hoch::io {

using Json = nlohmann::ordered_json;

struct InputDocument {
  std::optional<Field> field;
  AlgebraPtr algebra;  // null without an algebra block
  std::optional<AInfStructure> structure;
  Json params = Json::object();
  std::string description;
};

// Structural validation only; errors are ConfigError prefixed by a JSON path
// such as "$.algebra.products[2].value".
InputDocument parse_input(const std::string& text);
InputDocument parse_document(const Json& doc);
Json emit(const InputDocument& d);

Json scalar_json(const Scalar& s);
Scalar parse_scalar(const Json& j, const Field& f, const std::string& path);

Json vec_json(const GradedAlgebra& a, const Vec& v);
Json cochain_json(const Cochain& c);
Cochain parse_cochain(const Json& j, const AlgebraPtr& a, int arity, int end_degree, const std::string& path);
Json structure_json(const AInfStructure& s);

// Dense coordinate list of length n.
Json dense_json(const SparseVector& v, std::size_t n, const Field& f);
// [[index, value], ...]
Json sparse_json(const SparseVector& v);
Json matrix_json(const SparseMatrix& m);

}  // namespace hoch::io

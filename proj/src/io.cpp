#include "hoch/io.hpp"

#include <set>

#include "hoch/errors.hpp"

namespace hoch::io {

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& what) { throw ConfigError(path + ": " + what); }

const Json& require(const Json& j, const char* key, const std::string& path) {
  if (!j.is_object()) fail(path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) fail(path, std::string("missing key \"") + key + "\"");
  return *it;
}

void only_keys(const Json& j, std::initializer_list<const char*> keys, const std::string& path) {
  if (!j.is_object()) fail(path, "expected an object");
  for (const auto& [k, v] : j.items()) {
    bool known = false;
    for (const char* allowed : keys) known = known || k == allowed;
    if (!known) fail(path, "unknown key \"" + k + "\"");
  }
}

int as_int(const Json& j, const std::string& path) {
  if (!j.is_number_integer()) fail(path, "expected an integer");
  return j.get<int>();
}

std::string as_string(const Json& j, const std::string& path) {
  if (!j.is_string()) fail(path, "expected a string");
  return j.get<std::string>();
}

const Json& as_array(const Json& j, const std::string& path) {
  if (!j.is_array()) fail(path, "expected an array");
  return j;
}

std::string at(const std::string& path, std::size_t i) { return path + "[" + std::to_string(i) + "]"; }

Field parse_field(const Json& j, const std::string& path) {
  only_keys(j, {"type", "p"}, path);
  const std::string type = as_string(require(j, "type", path), path + ".type");
  if (type == "Q") {
    if (j.contains("p")) fail(path + ".p", "not allowed for Q");
    return Field::rationals();
  }
  if (type != "F") fail(path + ".type", "unknown field kind \"" + type + "\" (expected \"Q\" or \"F\")");
  const int p = as_int(require(j, "p", path), path + ".p");
  if (p < 2 || !is_prime(static_cast<std::uint64_t>(p))) fail(path + ".p", std::to_string(p) + " is not prime");
  return Field::prime(static_cast<std::uint32_t>(p));
}

int index_of(const GradedAlgebra& a, const Json& j, const std::string& path) {
  const std::string name = as_string(j, path);
  for (int i = 0; i < a.dim(); ++i)
    if (a.name(i) == name) return i;
  fail(path, "unknown basis element \"" + name + "\"");
}

std::map<std::string, Scalar> parse_named_vec(const Json& j, const Field& f, const std::set<std::string>& names,
                                              const std::string& path) {
  if (!j.is_object()) fail(path, "expected an object of basis name -> scalar");
  std::map<std::string, Scalar> out;
  for (const auto& [k, v] : j.items()) {
    if (!names.count(k)) fail(path, "unknown basis element \"" + k + "\"");
    Scalar s = parse_scalar(v, f, path + "." + k);
    if (!s.is_zero()) out[k] = s;
  }
  return out;
}

AlgebraPtr parse_algebra(const Json& j, const Field& f, const std::string& path) {
  only_keys(j, {"basis", "unit", "products", "vertices"}, path);
  const Json& basis = as_array(require(j, "basis", path), path + ".basis");
  if (basis.empty()) fail(path + ".basis", "empty basis");
  std::vector<BasisElement> elems;
  std::set<std::string> names;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    const std::string p = at(path + ".basis", i);
    only_keys(basis[i], {"name", "degree"}, p);
    BasisElement b{as_string(require(basis[i], "name", p), p + ".name"),
                   as_int(require(basis[i], "degree", p), p + ".degree")};
    if (b.name.empty()) fail(p + ".name", "empty name");
    if (!names.insert(b.name).second) fail(p + ".name", "duplicate basis name \"" + b.name + "\"");
    elems.push_back(b);
  }
  const std::string unit = as_string(require(j, "unit", path), path + ".unit");
  if (!names.count(unit)) fail(path + ".unit", "unknown basis element \"" + unit + "\"");

  std::map<std::pair<std::string, std::string>, std::map<std::string, Scalar>> products;
  if (j.contains("products")) {
    const Json& ps = as_array(j["products"], path + ".products");
    for (std::size_t i = 0; i < ps.size(); ++i) {
      const std::string p = at(path + ".products", i);
      only_keys(ps[i], {"left", "right", "value"}, p);
      const std::string l = as_string(require(ps[i], "left", p), p + ".left");
      const std::string r = as_string(require(ps[i], "right", p), p + ".right");
      if (!names.count(l)) fail(p + ".left", "unknown basis element \"" + l + "\"");
      if (!names.count(r)) fail(p + ".right", "unknown basis element \"" + r + "\"");
      if (products.count({l, r})) fail(p, "duplicate product " + l + "*" + r);
      products[{l, r}] = parse_named_vec(require(ps[i], "value", p), f, names, p + ".value");
    }
  }
  std::shared_ptr<GradedAlgebra> a;
  try {
    a = std::make_shared<GradedAlgebra>(f, elems, unit, products);
  } catch (const ConfigError& e) {
    fail(path, e.what());
  }
  if (j.contains("vertices")) {
    const Json& vs = as_array(j["vertices"], path + ".vertices");
    std::vector<std::string> v;
    for (std::size_t i = 0; i < vs.size(); ++i) {
      v.push_back(as_string(vs[i], at(path + ".vertices", i)));
      if (!names.count(v.back())) fail(at(path + ".vertices", i), "unknown basis element \"" + v.back() + "\"");
    }
    try {
      a->set_vertices(v);
    } catch (const ConfigError& e) {
      fail(path + ".vertices", e.what());
    }
  }
  return a;
}

AInfStructure parse_structure(const Json& j, const AlgebraPtr& a, const std::string& path) {
  only_keys(j, {"k", "maps"}, path);
  const int k = as_int(require(j, "k", path), path + ".k");
  if (k < 2) fail(path + ".k", "k must be at least 2");
  std::vector<Cochain> higher;
  for (int n = 3; n <= k; ++n) higher.emplace_back(a, n, -1);
  if (j.contains("maps")) {
    const Json& ms = as_array(j["maps"], path + ".maps");
    std::set<int> seen;
    for (std::size_t i = 0; i < ms.size(); ++i) {
      const std::string p = at(path + ".maps", i);
      only_keys(ms[i], {"arity", "entries"}, p);
      const int n = as_int(require(ms[i], "arity", p), p + ".arity");
      if (n < 3 || n > k) fail(p + ".arity", "arity must lie in [3, k]");
      if (!seen.insert(n).second) fail(p + ".arity", "duplicate map m" + std::to_string(n));
      higher[n - 3] = parse_cochain(ms[i], a, n, -1, p);
    }
  }
  return AInfStructure(a, higher);
}

}  // namespace

Scalar parse_scalar(const Json& j, const Field& f, const std::string& path) {
  if (j.is_number_integer()) return f.from_int(j.get<long long>());
  if (!j.is_string()) fail(path, "expected an integer or a string \"num/den\"");
  try {
    return f.parse(j.get<std::string>());
  } catch (const std::exception& e) {
    fail(path, "bad scalar \"" + j.get<std::string>() + "\": " + e.what());
  }
}

Json scalar_json(const Scalar& s) {
  const Field f = s.typed() ? s.field() : Field::rationals();
  if (!f.is_rational()) return s.residue();
  const mpq_class q = s.typed() ? s.as_rational() : mpq_class(0);
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Json vec_json(const GradedAlgebra& a, const Vec& v) {
  Json out = Json::object();
  for (const auto& [i, c] : v)
    if (!c.is_zero()) out[a.name(i)] = scalar_json(c);
  return out;
}

Json cochain_json(const Cochain& c) {
  const GradedAlgebra& a = *c.algebra();
  Json entries = Json::array();
  for (const auto& [t, v] : c.table()) {
    Json in = Json::array();
    for (int i : t) in.push_back(a.name(i));
    entries.push_back({{"inputs", in}, {"value", vec_json(a, v)}});
  }
  return {{"arity", c.arity()},
          {"end_degree", c.end_degree()},
          {"bidegree", {c.bidegree().first, c.bidegree().second}},
          {"entries", entries}};
}

Cochain parse_cochain(const Json& j, const AlgebraPtr& a, int arity, int end_degree, const std::string& path) {
  Cochain c(a, arity, end_degree);
  std::set<std::string> names;
  for (const auto& b : a->basis()) names.insert(b.name);
  const Json& es = as_array(require(j, "entries", path), path + ".entries");
  for (std::size_t i = 0; i < es.size(); ++i) {
    const std::string p = at(path + ".entries", i);
    only_keys(es[i], {"inputs", "value"}, p);
    const Json& in = as_array(require(es[i], "inputs", p), p + ".inputs");
    if (static_cast<int>(in.size()) != arity)
      fail(p + ".inputs", "expected " + std::to_string(arity) + " inputs, got " + std::to_string(in.size()));
    Tuple t;
    for (std::size_t k = 0; k < in.size(); ++k) t.push_back(index_of(*a, in[k], at(p + ".inputs", k)));
    if (c.table().count(t)) fail(p + ".inputs", "duplicate tuple");
    Vec v;
    for (const auto& [name, s] : parse_named_vec(require(es[i], "value", p), a->field(), names, p + ".value"))
      v[a->index(name)] = s;
    try {
      c.add(t, v);
    } catch (const DomainError&) {
      fail(p, "degree mismatch: an output does not have the degree forced by the inputs");
    }
  }
  return c;
}

Json structure_json(const AInfStructure& s) {
  Json maps = Json::array();
  for (int n = 3; n <= s.k(); ++n) {
    if (s.m(n).is_zero()) continue;
    Json m = cochain_json(s.m(n));
    maps.push_back({{"arity", n}, {"entries", m["entries"]}});
  }
  return {{"k", s.k()}, {"maps", maps}};
}

InputDocument parse_input(const std::string& text) {
  Json doc;
  try {
    doc = Json::parse(text.empty() ? std::string("{}") : text);
  } catch (const Json::parse_error& e) {
    fail("$", std::string("invalid JSON: ") + e.what());
  }
  return parse_document(doc);
}

InputDocument parse_document(const Json& doc) {
  only_keys(doc, {"field", "algebra", "structure", "params", "description"}, "$");
  InputDocument d;
  if (doc.contains("description")) d.description = as_string(doc["description"], "$.description");
  if (doc.contains("field")) d.field = parse_field(doc["field"], "$.field");
  if (doc.contains("params")) {
    if (!doc["params"].is_object()) fail("$.params", "expected an object");
    d.params = doc["params"];
  }
  if (doc.contains("algebra")) {
    if (!d.field) fail("$", "an algebra block needs a field block");
    d.algebra = parse_algebra(doc["algebra"], *d.field, "$.algebra");
  }
  if (doc.contains("structure")) {
    if (!d.algebra) fail("$", "a structure block needs an algebra block");
    d.structure = parse_structure(doc["structure"], d.algebra, "$.structure");
  }
  return d;
}

Json emit(const InputDocument& d) {
  Json out = Json::object();
  if (!d.description.empty()) out["description"] = d.description;
  if (d.field) {
    if (d.field->is_rational())
      out["field"] = {{"type", "Q"}};
    else
      out["field"] = {{"type", "F"}, {"p", d.field->characteristic()}};
  }
  if (d.algebra) {
    const GradedAlgebra& a = *d.algebra;
    Json basis = Json::array(), products = Json::array();
    for (const auto& b : a.basis()) basis.push_back({{"name", b.name}, {"degree", b.degree}});
    for (int i = 0; i < a.dim(); ++i)
      for (int j = 0; j < a.dim(); ++j) {
        if (i == a.unit() || j == a.unit() || vec_is_zero(a.product(i, j))) continue;
        products.push_back({{"left", a.name(i)}, {"right", a.name(j)}, {"value", vec_json(a, a.product(i, j))}});
      }
    Json alg = {{"basis", basis}, {"unit", a.name(a.unit())}, {"products", products}};
    if (a.has_vertices()) {
      Json vs = Json::array();
      for (int v : a.vertex_basis()) vs.push_back(a.name(v));
      alg["vertices"] = vs;
    }
    out["algebra"] = alg;
  }
  if (d.structure) out["structure"] = structure_json(*d.structure);
  if (!d.params.empty()) out["params"] = d.params;
  return out;
}

Json dense_json(const SparseVector& v, std::size_t n, const Field& f) {
  Json out = Json::array();
  std::size_t k = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (k < v.size() && v[k].first == i)
      out.push_back(scalar_json(v[k++].second));
    else
      out.push_back(scalar_json(f.zero()));
  }
  return out;
}

Json sparse_json(const SparseVector& v) {
  Json out = Json::array();
  for (const auto& [i, s] : v) out.push_back({i, scalar_json(s)});
  return out;
}

Json matrix_json(const SparseMatrix& m) {
  Json rows = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) rows.push_back(sparse_json(m.row(r)));
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"entries", rows}};
}

}  // namespace hoch::io

#include "hoch/algebra.hpp"

#include <algorithm>
#include <climits>

#include "hoch/cochain.hpp"
#include "hoch/errors.hpp"

namespace hoch {

void add_into(Vec& acc, const Vec& v, const Scalar& coef) {
  if (coef.is_zero()) return;
  for (const auto& [i, s] : v) {
    auto it = acc.find(i);
    if (it == acc.end()) {
      Scalar t = s * coef;
      if (!t.is_zero()) acc.emplace(i, std::move(t));
    } else {
      it->second += s * coef;
      if (it->second.is_zero()) acc.erase(it);
    }
  }
}

bool vec_is_zero(const Vec& v) {
  for (const auto& [i, s] : v)
    if (!s.is_zero()) return false;
  return true;
}

GradedAlgebra::GradedAlgebra(
    Field field, std::vector<BasisElement> basis, const std::string& unit,
    const std::map<std::pair<std::string, std::string>, std::map<std::string, Scalar>>& products)
    : field_(field), basis_(std::move(basis)) {
  if (basis_.empty()) throw ConfigError("algebra basis is empty");
  for (int i = 0; i < dim(); ++i) {
    if (!index_.emplace(basis_[i].name, i).second)
      throw ConfigError("duplicate basis name '" + basis_[i].name + "'");
  }
  unit_ = index(unit);
  products_.assign(dim() * dim(), Vec{});
  std::vector<bool> given(dim() * dim(), false);
  Scalar one = field_.one();
  for (const auto& [pair, out] : products) {
    int a = index(pair.first), b = index(pair.second);
    Vec v;
    for (const auto& [name, s] : out) {
      if (s.typed() && !(s.field() == field_))
        throw ConfigError("product coefficient over the wrong field");
      Scalar t = s * one;
      if (!t.is_zero()) v[index(name)] += t;
    }
    std::erase_if(v, [](const auto& e) { return e.second.is_zero(); });
    products_[a * dim() + b] = std::move(v);
    given[a * dim() + b] = true;
  }
  for (int a = 0; a < dim(); ++a) {
    if (!given[unit_ * dim() + a]) products_[unit_ * dim() + a] = Vec{{a, one}};
    if (!given[a * dim() + unit_]) products_[a * dim() + unit_] = Vec{{a, one}};
  }
}

int GradedAlgebra::index(const std::string& name) const {
  auto it = index_.find(name);
  if (it == index_.end()) throw ConfigError("unknown basis name '" + name + "'");
  return it->second;
}

Vec GradedAlgebra::multiply(const Vec& x, const Vec& y) const {
  Vec out;
  for (const auto& [a, s] : x)
    for (const auto& [b, t] : y) add_into(out, product(a, b), s * t);
  return out;
}

int GradedAlgebra::min_degree() const {
  int m = INT_MAX;
  for (const auto& b : basis_) m = std::min(m, b.degree);
  return m;
}

int GradedAlgebra::max_degree() const {
  int m = INT_MIN;
  for (const auto& b : basis_) m = std::max(m, b.degree);
  return m;
}

bool GradedAlgebra::separable(int i) const {
  return i == unit_ || std::find(idempotents_.begin(), idempotents_.end(), i) != idempotents_.end();
}

Vec GradedAlgebra::vertex_idempotent(int v) const {
  if (v > 0) return Vec{{idempotents_[v - 1], field_.one()}};
  Vec e{{unit_, field_.one()}};
  for (int i : idempotents_) e[i] = -field_.one();
  return e;
}

void GradedAlgebra::set_vertices(const std::vector<std::string>& idempotents) {
  idempotents_.clear();
  for (const auto& n : idempotents) {
    int i = index(n);
    if (i == unit_ || separable(i)) throw ConfigError("vertex idempotent '" + n + "' repeated or the unit");
    if (degree(i) != 0) throw ConfigError("vertex idempotent '" + n + "' is not in degree 0");
    idempotents_.push_back(i);
  }
  const int nv = vertex_count();
  std::vector<Vec> e(nv);
  for (int v = 0; v < nv; ++v) e[v] = vertex_idempotent(v);
  for (int v = 0; v < nv; ++v)
    for (int w = 0; w < nv; ++w) {
      Vec prod = multiply(e[v], e[w]);
      if (!(v == w ? prod == e[v] : vec_is_zero(prod)))
        throw ConfigError("vertex idempotents are not orthogonal idempotents");
    }
  source_.assign(dim(), -1);
  target_.assign(dim(), -1);
  for (int b = 0; b < dim(); ++b) {
    if (separable(b)) continue;
    const Vec x{{b, field_.one()}};
    for (int side = 0; side < 2; ++side) {
      int found = -1, nonzero = 0;
      for (int v = 0; v < nv; ++v) {
        Vec y = side == 0 ? multiply(e[v], x) : multiply(x, e[v]);
        if (vec_is_zero(y)) continue;
        ++nonzero;
        if (y == x) found = v;
      }
      if (found < 0 || nonzero != 1)
        throw ConfigError("basis element '" + name(b) + "' is not homogeneous for the vertex idempotents");
      (side == 0 ? source_ : target_)[b] = found;
    }
  }
  has_vertices_ = true;
}

ValidationReport validate_algebra(const GradedAlgebra& a) {
  ValidationReport rep;
  const int n = a.dim();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (const auto& [c, s] : a.product(i, j))
        if (a.degree(c) != a.degree(i) + a.degree(j))
          rep.violations.push_back({"degree",
                                    {a.name(i), a.name(j)},
                                    "term " + a.name(c) + " has degree " +
                                        std::to_string(a.degree(c))});
  const int u = a.unit();
  Scalar one = a.field().one();
  if (a.degree(u) != 0) rep.violations.push_back({"unit", {a.name(u)}, "unit not in degree 0"});
  for (int i = 0; i < n; ++i) {
    Vec e{{i, one}};
    if (a.product(u, i) != e) rep.violations.push_back({"unit", {a.name(u), a.name(i)}, "left unit law"});
    if (a.product(i, u) != e) rep.violations.push_back({"unit", {a.name(i), a.name(u)}, "right unit law"});
  }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        Vec lhs = a.multiply(a.product(i, j), Vec{{k, one}});
        Vec rhs = a.multiply(Vec{{i, one}}, a.product(j, k));
        if (lhs != rhs)
          rep.violations.push_back({"associativity", {a.name(i), a.name(j), a.name(k)}, "(ab)c != a(bc)"});
      }
  return rep;
}

Cochain shifted_m2(const AlgebraPtr& a, bool require_associative) {
  ValidationReport rep = validate_algebra(*a);
  for (const auto& v : rep.violations) {
    if (v.kind == "associativity" && !require_associative) continue;
    if (v.kind == "unit" && !require_associative) continue;
    std::string w;
    for (const auto& s : v.witness) w += (w.empty() ? "" : ",") + s;
    throw ValidationError("algebra invalid: " + v.kind + " at (" + w + ")");
  }
  Cochain m(a, 2, -1);
  for (int i = 0; i < a->dim(); ++i)
    for (int j = 0; j < a->dim(); ++j) {
      const Vec& v = a->product(i, j);
      if (v.empty()) continue;
      Scalar sign = a->field().from_int(a->degree(i) % 2 == 0 ? 1 : -1);
      Vec w;
      add_into(w, v, sign);
      m.add({i, j}, w);
    }
  return m;
}

namespace algebras {

AlgebraPtr ground(Field f) {
  return std::make_shared<GradedAlgebra>(f, std::vector<BasisElement>{{"1", 0}}, "1",
                                         std::map<std::pair<std::string, std::string>,
                                                  std::map<std::string, Scalar>>{});
}

AlgebraPtr dual_numbers(Field f, int eps_degree) {
  return truncated_polynomial(f, 2, eps_degree, "eps");
}

AlgebraPtr exterior(Field f, int u_degree) {
  std::vector<BasisElement> basis{{"1", 0}, {"u", u_degree}};
  return std::make_shared<GradedAlgebra>(
      f, basis, "1",
      std::map<std::pair<std::string, std::string>, std::map<std::string, Scalar>>{});
}

AlgebraPtr truncated_polynomial(Field f, int n, int x_degree, const std::string& var) {
  if (n < 1) throw ConfigError("truncation order must be positive");
  std::vector<BasisElement> basis;
  auto name = [&](int i) { return i == 0 ? std::string("1") : i == 1 ? var : var + std::to_string(i); };
  for (int i = 0; i < n; ++i) basis.push_back({name(i), i * x_degree});
  std::map<std::pair<std::string, std::string>, std::map<std::string, Scalar>> prod;
  for (int i = 1; i < n; ++i)
    for (int j = 1; j < n; ++j)
      if (i + j < n) prod[{name(i), name(j)}] = {{name(i + j), f.one()}};
  return std::make_shared<GradedAlgebra>(f, basis, "1", prod);
}

AlgebraPtr dual_extension(Field f, int n, int x_degree, int twist) {
  if (n < 1) throw ConfigError("truncation order must be positive");
  if (twist != 1 && twist != -1) throw ConfigError("twist must be 1 or -1");
  auto name = [](int a, int k) {
    std::string r = a ? "e" : "";
    if (k == 1) r += "x";
    if (k > 1) r += "x" + std::to_string(k);
    return r.empty() ? std::string("1") : r;
  };
  std::vector<BasisElement> basis;
  for (int a = 0; a < 2; ++a)
    for (int k = 0; k < n; ++k) basis.push_back({name(a, k), k * x_degree});
  std::map<std::pair<std::string, std::string>, std::map<std::string, Scalar>> prod;
  // (e^a x^k)(e^c x^l) = twist^{kc} e^{a+c} x^{k+l}
  for (int a = 0; a < 2; ++a)
    for (int k = 0; k < n; ++k)
      for (int c = 0; c < 2; ++c)
        for (int l = 0; l < n; ++l) {
          if (a + c > 1 || k + l >= n) continue;
          const int sign = (k * c) % 2 ? twist : 1;
          prod[{name(a, k), name(c, l)}] = {{name(a + c, k + l), f.from_int(sign)}};
        }
  return std::make_shared<GradedAlgebra>(f, basis, "1", prod);
}

AlgebraPtr cyclic_quiver(Field f, const std::vector<int>& arrow_degrees) {
  const int n = static_cast<int>(arrow_degrees.size());
  if (n < 1) throw ConfigError("cyclic quiver needs an arrow");
  // vertex 1 is 1 - e2 - ... - en; arrow a_i runs from vertex i to i+1 mod n
  std::vector<BasisElement> basis{{"1", 0}};
  std::vector<std::string> vertices;
  for (int i = 2; i <= n; ++i) {
    vertices.push_back("e" + std::to_string(i));
    basis.push_back({vertices.back(), 0});
  }
  for (int i = 1; i <= n; ++i) basis.push_back({"a" + std::to_string(i), arrow_degrees[i - 1]});
  std::map<std::pair<std::string, std::string>, std::map<std::string, Scalar>> prod;
  auto vname = [](int v) { return "e" + std::to_string(v); };
  for (int i = 2; i <= n; ++i) prod[{vname(i), vname(i)}] = {{vname(i), f.one()}};
  for (int i = 1; i <= n; ++i) {
    const std::string a = "a" + std::to_string(i);
    const int src = i, tgt = i % n + 1;
    if (src > 1) prod[{vname(src), a}] = {{a, f.one()}};
    if (tgt > 1) prod[{a, vname(tgt)}] = {{a, f.one()}};
    if (n == 1) prod[{a, a}] = {};
  }
  auto alg = std::make_shared<GradedAlgebra>(f, basis, "1", prod);
  alg->set_vertices(vertices);
  return alg;
}

}  // namespace algebras

}  // namespace hoch

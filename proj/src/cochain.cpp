#include "hoch/cochain.hpp"

#include <algorithm>
#include <mutex>
#include <unordered_map>

#include "hoch/errors.hpp"
#include "hoch/kernels.hpp"

namespace hoch {

Cochain::Cochain(AlgebraPtr a, int arity, int end_degree)
    : alg_(std::move(a)), arity_(arity), end_degree_(end_degree) {
  if (!alg_) throw ConfigError("cochain without algebra");
}

int Cochain::output_sdegree(const Tuple& t) const {
  int s = end_degree_;
  for (int b : t) s += alg_->sdegree(b);
  return s;
}

void Cochain::add(const Tuple& t, const Vec& v, const Scalar& coef) {
  if (static_cast<int>(t.size()) != arity_) throw DomainError("tuple length differs from arity");
  if (v.empty() || coef.is_zero()) return;
  const int want = output_sdegree(t);
  for (const auto& [c, s] : v) {
    if (c < 0 || c >= alg_->dim()) throw DomainError("output index out of range");
    if (!s.is_zero() && alg_->sdegree(c) != want)
      throw DomainError("inhomogeneous cochain entry at output " + alg_->name(c));
  }
  for (int b : t)
    if (b < 0 || b >= alg_->dim()) throw DomainError("input index out of range");
  auto it = table_.find(t);
  if (it == table_.end()) {
    Vec w;
    add_into(w, v, coef);
    if (!w.empty()) table_.emplace(t, std::move(w));
    return;
  }
  add_into(it->second, v, coef);
  if (it->second.empty()) table_.erase(it);
}

void Cochain::add(const Tuple& t, const Vec& v) { add(t, v, field().one()); }

void Cochain::add(const Tuple& t, int out, const Scalar& coef) {
  add(t, Vec{{out, field().one()}}, coef);
}

Vec Cochain::eval(const Tuple& t) const {
  auto it = table_.find(t);
  return it == table_.end() ? Vec{} : it->second;
}

bool Cochain::is_normalized() const {
  const int u = alg_->unit();
  for (const auto& [t, v] : table_)
    for (int b : t)
      if (b == u) return false;
  return true;
}

void Cochain::check_compatible(const Cochain& o) const {
  if (alg_ != o.alg_) throw ConfigError("cochains over different algebras");
  if (arity_ != o.arity_ || end_degree_ != o.end_degree_)
    throw DomainError("adding cochains of different bidegrees");
}

Cochain& Cochain::operator+=(const Cochain& o) {
  check_compatible(o);
  Scalar one = field().one();
  for (const auto& [t, v] : o.table_) {
    auto it = table_.find(t);
    if (it == table_.end()) {
      table_.emplace(t, v);
    } else {
      add_into(it->second, v, one);
      if (it->second.empty()) table_.erase(it);
    }
  }
  return *this;
}

Cochain& Cochain::operator-=(const Cochain& o) { return *this += -o; }

Cochain& Cochain::operator*=(const Scalar& s) {
  if (s.is_zero()) {
    table_.clear();
    return *this;
  }
  for (auto& [t, v] : table_)
    for (auto& [c, x] : v) x *= s;
  return *this;
}

Cochain Cochain::operator-() const {
  Cochain r = *this;
  for (auto& [t, v] : r.table_)
    for (auto& [c, x] : v) x = -x;
  return r;
}

bool operator==(const Cochain& a, const Cochain& b) {
  return a.alg_ == b.alg_ && a.arity_ == b.arity_ && a.end_degree_ == b.end_degree_ &&
         a.table_ == b.table_;
}

// ---------------------------------------------------------------------------

Cochain zero_cochain(const AlgebraPtr& a, int p, int q) { return Cochain(a, p, 1 - p - q); }

Cochain identity_cochain(const AlgebraPtr& a) {
  Cochain id(a, 1, 0);
  for (int i = 0; i < a->dim(); ++i) id.add({i}, i, a->field().one());
  return id;
}

Cochain linear_cochain(const AlgebraPtr& a, int end_degree, const std::map<int, Vec>& images) {
  Cochain c(a, 1, end_degree);
  for (const auto& [i, v] : images) c.add({i}, v);
  return c;
}

const Cochain& m2_of(const AlgebraPtr& a) {
  static std::mutex mu;
  static std::unordered_map<const GradedAlgebra*, std::pair<AlgebraPtr, Cochain>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(a.get());
  if (it != cache.end()) return it->second.second;
  Cochain m2 = shifted_m2(a);
  return cache.emplace(a.get(), std::make_pair(a, std::move(m2))).first->second.second;
}

Cochain compose(const Cochain& f, int i, const Cochain& g) {
  if (f.algebra() != g.algebra()) throw ConfigError("cochains over different algebras");
  if (i < 1 || i > f.arity()) throw DomainError("composition slot out of range");
  Cochain out(f.algebra(), f.arity() + g.arity() - 1, f.end_degree() + g.end_degree());
  out.mutable_table() = kernels::compose_table(f, i, g);
  return out;
}

Cochain brace(const Cochain& f, const std::vector<Cochain>& args) {
  const int n = static_cast<int>(args.size());
  int arity = f.arity(), deg = f.end_degree();
  for (const auto& x : args) {
    if (x.algebra() != f.algebra()) throw ConfigError("cochains over different algebras");
    arity += x.arity();
    deg += x.end_degree();
  }
  arity -= n;
  if (n == 0) return f;
  Cochain out(f.algebra(), arity, deg);
  if (n > f.arity() || f.is_zero()) return out;
  for (const auto& x : args)
    if (x.is_zero()) return out;
  // Insertion points i_1 < ... < i_n; slot i_k has moved by the arities
  // already inserted to its left.
  std::vector<int> idx(n);
  for (int k = 0; k < n; ++k) idx[k] = k + 1;
  while (true) {
    Cochain cur = f;
    int offset = 0;
    for (int k = 0; k < n && !cur.is_zero(); ++k) {
      cur = compose(cur, idx[k] + offset, args[k]);
      offset += args[k].arity() - 1;
    }
    if (!cur.is_zero()) out += cur;
    int k = n - 1;
    while (k >= 0 && idx[k] == f.arity() - (n - 1 - k)) --k;
    if (k < 0) break;
    ++idx[k];
    for (int j = k + 1; j < n; ++j) idx[j] = idx[j - 1] + 1;
  }
  return out;
}

Cochain bracket(const Cochain& x, const Cochain& y) {
  Cochain a = brace(x, {y});
  Cochain b = brace(y, {x});
  if ((x.end_degree() * y.end_degree()) % 2 == 0) return a - b;
  return a + b;
}

Cochain cup(const Cochain& x, const Cochain& y) {
  Cochain r = brace(m2_of(x.algebra()), {x, y});
  return x.end_degree() % 2 == 0 ? r : -r;
}

Cochain sq(const Cochain& x) {
  if (x.end_degree() % 2 == 0 && x.field().characteristic() != 2)
    throw DomainError("square needs odd End-degree or characteristic 2");
  return brace(x, {x});
}

Cochain hoch_d(const Cochain& f) { return bracket(m2_of(f.algebra()), f); }

Cochain euler_delta(const AlgebraPtr& a) {
  Cochain d(a, 1, 0);
  for (int i = 0; i < a->dim(); ++i) d.add({i}, i, a->field().from_int(1 - a->sdegree(i)));
  return d;
}

Cochain euler_beta(const AlgebraPtr& a) {
  Cochain b(a, 1, 0);
  for (int i = 0; i < a->dim(); ++i) {
    long long n = a->degree(i);
    // n(n-1)/2 is an integer, so this is meaningful in every characteristic.
    b.add({i}, i, a->field().from_int(n * (n - 1) / 2));
  }
  return b;
}

std::string to_string(Complex c) {
  switch (c) {
    case Complex::Full: return "full";
    case Complex::Normalized: return "normalized";
    case Complex::Relative: return "relative";
  }
  return "full";
}

Complex parse_complex(const std::string& s) {
  if (s == "full") return Complex::Full;
  if (s == "normalized") return Complex::Normalized;
  if (s == "relative") return Complex::Relative;
  throw ConfigError("unknown complex '" + s + "'");
}

namespace {

void relative_tuples(const GradedAlgebra& a, int p, Tuple& cur, std::vector<Tuple>& out) {
  if (static_cast<int>(cur.size()) == p) {
    out.push_back(cur);
    return;
  }
  for (int i = 0; i < a.dim(); ++i) {
    if (a.separable(i)) continue;
    if (!cur.empty() && a.target(cur.back()) != a.source(i)) continue;
    cur.push_back(i);
    relative_tuples(a, p, cur, out);
    cur.pop_back();
  }
}

}  // namespace

std::vector<Tuple> all_tuples(const GradedAlgebra& a, int p, Complex kind) {
  std::vector<Tuple> out;
  if (p == 0) {
    out.push_back({});
    return out;
  }
  if (kind == Complex::Relative) {
    if (!a.has_vertices()) throw ConfigError("relative cochains need vertex idempotents");
    Tuple cur;
    relative_tuples(a, p, cur, out);
    return out;
  }
  std::vector<int> letters;
  for (int i = 0; i < a.dim(); ++i)
    if (kind == Complex::Full || i != a.unit()) letters.push_back(i);
  if (letters.empty()) return out;
  std::vector<std::size_t> pos(p, 0);
  while (true) {
    Tuple t(p);
    for (int j = 0; j < p; ++j) t[j] = letters[pos[j]];
    out.push_back(std::move(t));
    int j = p - 1;
    while (j >= 0 && pos[j] + 1 == letters.size()) pos[j--] = 0;
    if (j < 0) break;
    ++pos[j];
  }
  return out;
}

CochainSpace::CochainSpace(AlgebraPtr a, int p, int q, Complex kind)
    : alg_(std::move(a)), p_(p), q_(q), kind_(kind) {
  const int d = end_degree();
  const Scalar one = alg_->field().one();
  for (const Tuple& t : all_tuples(*alg_, p, kind)) {
    int want = d;
    for (int b : t) want += alg_->sdegree(b);
    auto push = [&](int lead, Vec value) {
      index_.emplace(std::make_pair(t, lead), basis_.size());
      basis_.push_back({t, lead, std::move(value)});
    };
    if (kind != Complex::Relative) {
      for (int o = 0; o < alg_->dim(); ++o)
        if (alg_->sdegree(o) == want) push(o, Vec{{o, one}});
      continue;
    }
    // values in e_s A e_t; arity 0 takes the centralizer of the vertices
    const int s = t.empty() ? -1 : alg_->source(t.front());
    const int e = t.empty() ? -1 : alg_->target(t.back());
    std::vector<std::pair<int, Vec>> outs;
    for (int o = 0; o < alg_->dim(); ++o)
      if (!alg_->separable(o) && alg_->sdegree(o) == want &&
          (t.empty() ? alg_->source(o) == alg_->target(o) : alg_->source(o) == s && alg_->target(o) == e))
        outs.emplace_back(o, Vec{{o, one}});
    if (want == 1)
      for (int v = 0; v < alg_->vertex_count(); ++v)
        if (t.empty() || (v == s && v == e))
          outs.emplace_back(v == 0 ? alg_->unit() : alg_->vertex_basis()[v - 1], alg_->vertex_idempotent(v));
    std::sort(outs.begin(), outs.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
    for (auto& [lead, value] : outs) push(lead, std::move(value));
  }
}

Cochain CochainSpace::basis_cochain(std::size_t i) const {
  Cochain c(alg_, p_, end_degree());
  c.add(basis_[i].tuple, basis_[i].value);
  return c;
}

Cochain CochainSpace::from_coordinates(const SparseVector& v) const {
  Cochain c(alg_, p_, end_degree());
  for (const auto& [i, s] : v) c.add(basis_[i].tuple, basis_[i].value, s);
  return c;
}

std::optional<SparseVector> CochainSpace::try_coordinates(const Cochain& c) const {
  if (c.algebra() != alg_) throw ConfigError("cochain over a different algebra");
  if (c.arity() != p_ || c.end_degree() != end_degree()) return std::nullopt;
  std::map<std::size_t, Scalar> m;
  for (const auto& [t, v] : c.table()) {
    Vec rest = v;
    // multi-term values first: their leads are touched by nothing else
    for (int pass = 0; pass < 2; ++pass)
      for (auto it = index_.lower_bound({t, INT_MIN}); it != index_.end() && it->first.first == t; ++it) {
        const Element& el = basis_[it->second];
        if ((el.value.size() > 1) != (pass == 0)) continue;
        auto f = rest.find(el.lead);
        if (f == rest.end() || f->second.is_zero()) continue;
        const Scalar c = f->second;
        m[it->second] = c;
        add_into(rest, el.value, -c);
      }
    if (!vec_is_zero(rest)) return std::nullopt;
  }
  return make_vector(std::move(m));
}

SparseVector CochainSpace::coordinates(const Cochain& c) const {
  if (c.arity() != p_ || c.end_degree() != end_degree())
    throw DomainError("cochain is not in this bidegree");
  auto v = try_coordinates(c);
  if (!v) throw DomainError("cochain has an entry outside the space");
  return *v;
}

std::optional<std::size_t> CochainSpace::index_of(const Tuple& t, int lead) const {
  auto it = index_.find({t, lead});
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

Cochain random_cochain(const AlgebraPtr& a, int arity, int end_degree, std::mt19937_64& rng,
                       const RandomCochainOptions& opts) {
  Cochain c(a, arity, end_degree);
  const Field& f = a->field();
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  std::uniform_int_distribution<int> num(-opts.coefficient_range, opts.coefficient_range);
  std::uniform_int_distribution<int> den(1, 3);
  for (const Tuple& t : all_tuples(*a, arity, opts.normalized ? Complex::Normalized : Complex::Full)) {
    const int want = c.output_sdegree(t);
    for (int o = 0; o < a->dim(); ++o) {
      if (a->sdegree(o) != want || coin(rng) >= opts.density) continue;
      Scalar s;
      if (f.is_rational()) {
        s = f.from_rational(mpq_class(num(rng), den(rng)));
      } else {
        std::uniform_int_distribution<long long> r(0, f.characteristic() - 1);
        s = f.from_int(r(rng));
      }
      c.add(t, o, s);
    }
  }
  return c;
}

}  // namespace hoch

#include "hoch/laurent.hpp"

#include <algorithm>
#include <mutex>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include "hoch/errors.hpp"

namespace hoch {

namespace {

long long floor_mod(long long a, long long m) { return ((a % m) + m) % m; }

Scalar parity_sign(const Field& f, long long e) { return f.from_int(e % 2 == 0 ? 1 : -1); }

void drop_zeros(Poly& p) {
  for (auto it = p.begin(); it != p.end();)
    it = it->second.is_zero() ? p.erase(it) : std::next(it);
}

Mono mono_add(const Mono& a, const Mono& b) {
  Mono m{};
  for (int v = 0; v < kMaxPolyVars; ++v) {
    int e = a[v] + b[v];
    if (e > 255) throw UnsupportedError("polynomial degree overflow");
    m[v] = static_cast<std::uint8_t>(e);
  }
  return m;
}

Vec apply_map(const std::vector<Vec>& m, const Vec& v) {
  Vec out;
  for (const auto& [b, c] : v) add_into(out, m[b], c);
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------

Poly poly_constant(const Scalar& c) {
  Poly p;
  if (!c.is_zero()) p.emplace(Mono{}, c);
  return p;
}

Poly poly_linear(int var, const Scalar& c, const Scalar& d) {
  Poly p = poly_constant(d);
  if (!c.is_zero()) {
    Mono m{};
    m[var] = 1;
    p.emplace(m, c);
  }
  return p;
}

void poly_add(Poly& acc, const Poly& p, const Scalar& coef) {
  if (coef.is_zero()) return;
  for (const auto& [m, c] : p) {
    auto it = acc.find(m);
    if (it == acc.end()) {
      Scalar t = c * coef;
      if (!t.is_zero()) acc.emplace(m, std::move(t));
    } else {
      it->second += c * coef;
      if (it->second.is_zero()) acc.erase(it);
    }
  }
}

Poly poly_mul(const Poly& a, const Poly& b) {
  Poly out;
  for (const auto& [ma, ca] : a)
    for (const auto& [mb, cb] : b) {
      auto [it, fresh] = out.try_emplace(mono_add(ma, mb), ca * cb);
      if (!fresh) it->second += ca * cb;
    }
  drop_zeros(out);
  return out;
}

Scalar poly_eval(const Poly& p, const std::vector<long long>& k, const Field& f) {
  Scalar acc = f.zero();
  for (const auto& [m, c] : p) {
    Scalar t = c;
    for (int v = 0; v < kMaxPolyVars; ++v)
      for (int e = 0; e < m[v]; ++e) t *= f.from_int(k.at(v));
    acc += t;
  }
  return acc;
}

int poly_degree(const Poly& p) {
  int d = 0;
  for (const auto& [m, c] : p)
    for (auto e : m) d = std::max<int>(d, e);
  return d;
}

int poly_total_degree(const Poly& p) {
  int d = 0;
  for (const auto& [m, c] : p) d = std::max(d, std::accumulate(m.begin(), m.end(), 0));
  return d;
}

// ---------------------------------------------------------------------------

TwistedLaurent::TwistedLaurent(AlgebraPtr base, std::vector<Vec> sigma, int sigma_order, int weight,
                               std::vector<int> grading)
    : base_(std::move(base)), order_(sigma_order), weight_(weight), grading_(std::move(grading)) {
  if (!base_) throw ConfigError("missing base algebra");
  if (order_ <= 0) throw UnsupportedError("sigma of infinite order cannot be split by residues");
  if (weight_ == 0) throw ConfigError("x must have nonzero degree");
  auto rep = validate_algebra(*base_);
  if (!rep.ok()) throw ValidationError("base algebra invalid: " + rep.violations.front().kind);
  const int n = base_->dim();
  if (static_cast<int>(sigma.size()) != n) throw ConfigError("sigma must give an image for every basis element");
  for (int b = 0; b < n; ++b)
    for (const auto& [o, c] : sigma[b]) {
      if (o < 0 || o >= n) throw ConfigError("sigma image out of range");
      if (!c.is_zero() && base_->degree(o) != base_->degree(b)) throw ConfigError("sigma must preserve degrees");
    }
  const Scalar one = field().one();
  auto basis_vec = [&](int b) { return Vec{{b, one}}; };
  if (sigma[base_->unit()] != basis_vec(base_->unit())) throw ConfigError("sigma must fix the unit");
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (apply_map(sigma, base_->product(a, b)) != base_->multiply(sigma[a], sigma[b]))
        throw ConfigError("sigma is not multiplicative at (" + base_->name(a) + "," + base_->name(b) + ")");
  modulus_ = std::lcm(2, order_);
  powers_.assign(modulus_, {});
  for (int b = 0; b < n; ++b) powers_[0].push_back(basis_vec(b));
  for (int r = 1; r < modulus_; ++r)
    for (int b = 0; b < n; ++b) powers_[r].push_back(apply_map(sigma, powers_[r - 1][b]));
  for (int b = 0; b < n; ++b)
    if (apply_map(sigma, powers_[(order_ - 1) % modulus_][b]) != basis_vec(b))
      throw ConfigError("sigma^order is not the identity");
  if (!grading_.empty()) {
    if (static_cast<int>(grading_.size()) != n) throw ConfigError("grading needs one value per basis element");
    if (grading_[base_->unit()] != 0) throw ConfigError("grading of the unit must be 0");
    for (int a = 0; a < n; ++a) {
      for (const auto& [o, c] : sigma[a])
        if (!c.is_zero() && grading_[o] != grading_[a]) throw ConfigError("sigma does not respect the grading");
      for (int b = 0; b < n; ++b)
        for (const auto& [o, c] : base_->product(a, b))
          if (!c.is_zero() && grading_[o] != grading_[a] + grading_[b])
            throw ConfigError("products do not respect the grading");
    }
  }
}

LaurentPtr anticommuting_laurent(Field f) {
  auto b = algebras::dual_numbers(f);
  const int eps = b->index("eps");
  std::vector<Vec> sigma(2);
  sigma[b->unit()] = Vec{{b->unit(), f.one()}};
  sigma[eps] = Vec{{eps, f.from_int(-1)}};
  if (f.characteristic() == 2) sigma[eps] = Vec{{eps, f.one()}};
  const int order = f.characteristic() == 2 ? 1 : 2;
  std::vector<int> grading(2, 0);
  grading[eps] = 1;
  return std::make_shared<TwistedLaurent>(b, std::move(sigma), order, 1, std::move(grading));
}

// ---------------------------------------------------------------------------

PolyCochain::PolyCochain(LaurentPtr a, int arity, int end_degree)
    : alg_(std::move(a)), arity_(arity), end_degree_(end_degree) {
  if (!alg_) throw ConfigError("missing algebra");
}

std::optional<long long> PolyCochain::exponent_offset(const PolyKey& k, int out) const {
  const GradedAlgebra& b = *alg_->base();
  long long num = end_degree_ - b.degree(out) - 1;
  for (int x : k.basis) num += b.degree(x) + 1;
  if (num % alg_->weight() != 0) return std::nullopt;
  return num / alg_->weight();
}

void PolyCochain::add(const PolyKey& k, int out, const Poly& p) { add(k, out, p, field().one()); }

void PolyCochain::add(const PolyKey& k, int out, const Poly& p, const Scalar& coef) {
  if (static_cast<int>(k.residues.size()) != arity_ || static_cast<int>(k.basis.size()) != arity_)
    throw DomainError("key length differs from the arity");
  if (arity_ > kMaxPolyVars) throw UnsupportedError("arity exceeds the polynomial variable limit");
  for (int r : k.residues)
    if (r < 0 || r >= alg_->modulus()) throw DomainError("residue out of range");
  for (int b : k.basis)
    if (b < 0 || b >= alg_->dim()) throw DomainError("basis index out of range");
  if (out < 0 || out >= alg_->dim()) throw DomainError("output index out of range");
  if (!exponent_offset(k, out)) throw DomainError("output has no homogeneous exponent");
  for (const auto& [m, c] : p)
    for (int v = arity_; v < kMaxPolyVars; ++v)
      if (m[v]) throw DomainError("polynomial uses a variable beyond the arity");
  if (coef.is_zero() || p.empty()) return;
  auto& pv = table_[k];
  poly_add(pv[out], p, coef);
  if (pv[out].empty()) pv.erase(out);
  if (pv.empty()) table_.erase(k);
}

int PolyCochain::degree() const {
  int d = 0;
  for (const auto& [k, pv] : table_)
    for (const auto& [o, p] : pv) d = std::max(d, poly_degree(p));
  return d;
}

LaurentVec PolyCochain::eval(const std::vector<std::pair<int, long long>>& args) const {
  if (static_cast<int>(args.size()) != arity_) throw DomainError("wrong number of arguments");
  const int r = alg_->modulus();
  PolyKey key;
  std::vector<long long> k(kMaxPolyVars, 0);
  long long total = 0;
  for (int j = 0; j < arity_; ++j) {
    const long long rho = floor_mod(args[j].second, r);
    key.residues.push_back(static_cast<int>(rho));
    key.basis.push_back(args[j].first);
    k[j] = (args[j].second - rho) / r;
    total += args[j].second;
  }
  LaurentVec out;
  auto it = table_.find(key);
  if (it == table_.end()) return out;
  for (const auto& [o, p] : it->second) {
    Scalar v = poly_eval(p, k, field());
    if (!v.is_zero()) out[{o, total + *exponent_offset(key, o)}] = v;
  }
  return out;
}

void PolyCochain::check_compatible(const PolyCochain& o) const {
  if (alg_ != o.alg_) throw ConfigError("cochains over different algebras");
  if (arity_ != o.arity_ || end_degree_ != o.end_degree_) throw DomainError("cochains of different bidegrees");
}

PolyCochain& PolyCochain::operator+=(const PolyCochain& o) {
  check_compatible(o);
  for (const auto& [k, pv] : o.table_) {
    auto& mine = table_[k];
    for (const auto& [out, p] : pv) {
      poly_add(mine[out], p, field().one());
      if (mine[out].empty()) mine.erase(out);
    }
    if (mine.empty()) table_.erase(k);
  }
  return *this;
}

PolyCochain& PolyCochain::operator-=(const PolyCochain& o) { return *this += -o; }

PolyCochain& PolyCochain::operator*=(const Scalar& s) {
  if (s.is_zero()) {
    table_.clear();
    return *this;
  }
  for (auto& [k, pv] : table_)
    for (auto& [o, p] : pv)
      for (auto& [m, c] : p) c *= s;
  return *this;
}

PolyCochain PolyCochain::operator-() const {
  PolyCochain r = *this;
  for (auto& [k, pv] : r.table_)
    for (auto& [o, p] : pv)
      for (auto& [m, c] : p) c = -c;
  return r;
}

bool operator==(const PolyCochain& a, const PolyCochain& b) {
  return a.alg_ == b.alg_ && a.arity_ == b.arity_ && a.end_degree_ == b.end_degree_ && a.table_ == b.table_;
}

// ---------------------------------------------------------------------------

std::vector<PolyKey> all_keys(const TwistedLaurent& a, int arity) {
  std::vector<PolyKey> out;
  if (arity < 0) return out;
  const int r = a.modulus(), n = a.dim();
  PolyKey k;
  k.residues.assign(arity, 0);
  k.basis.assign(arity, 0);
  while (true) {
    out.push_back(k);
    int j = arity - 1;
    // residues vary slowest, matching the key order
    for (; j >= 0; --j) {
      if (++k.basis[j] < n) break;
      k.basis[j] = 0;
    }
    if (j >= 0) continue;
    for (j = arity - 1; j >= 0; --j) {
      if (++k.residues[j] < r) break;
      k.residues[j] = 0;
    }
    if (j < 0) break;
  }
  return out;
}

const PolyCochain& m2_of(const LaurentPtr& a) {
  static std::mutex mu;
  static std::unordered_map<const TwistedLaurent*, std::pair<LaurentPtr, PolyCochain>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(a.get());
  if (it != cache.end()) return it->second.second;
  const GradedAlgebra& b = *a->base();
  const Field& f = a->field();
  PolyCochain m(a, 2, -1);
  for (const PolyKey& k : all_keys(*a, 2)) {
    const int b1 = k.basis[0], b2 = k.basis[1], rho = k.residues[0];
    Vec v = b.multiply(Vec{{b1, f.one()}}, a->sigma_power(b2, rho));
    const Scalar s = parity_sign(f, b.degree(b1) + static_cast<long long>(rho) * a->weight());
    for (const auto& [o, c] : v) m.add(k, o, poly_constant(c * s));
  }
  return cache.emplace(a.get(), std::make_pair(a, std::move(m))).first->second.second;
}

namespace {

// P with variable slot replaced by k_slot + ... + k_{slot+q-1} + shift and
// the later variables moved up by q - 1.
Poly substitute(const Poly& p, int slot, int q, long long shift, const Field& f) {
  Poly lin = poly_constant(f.from_int(shift));
  for (int t = 0; t < q; ++t) poly_add(lin, poly_linear(slot + t, f.one(), f.zero()), f.one());
  std::vector<Poly> powers{poly_constant(f.one())};
  Poly out;
  for (const auto& [m, c] : p) {
    Mono rest{};
    for (int v = 0; v < slot; ++v) rest[v] = m[v];
    for (int v = slot + 1; v < kMaxPolyVars; ++v)
      if (m[v]) {
        if (v + q - 1 >= kMaxPolyVars) throw UnsupportedError("arity exceeds the polynomial variable limit");
        rest[v + q - 1] = m[v];
      }
    while (static_cast<int>(powers.size()) <= m[slot]) powers.push_back(poly_mul(powers.back(), lin));
    for (const auto& [lm, lc] : powers[m[slot]]) {
      auto [it, fresh] = out.try_emplace(mono_add(rest, lm), c * lc);
      if (!fresh) it->second += c * lc;
    }
  }
  drop_zeros(out);
  return out;
}

Poly shifted(const Poly& p, int by) {
  if (by == 0) return p;
  Poly out;
  for (const auto& [m, c] : p) {
    Mono s{};
    for (int v = 0; v < kMaxPolyVars; ++v)
      if (m[v]) {
        if (v + by >= kMaxPolyVars) throw UnsupportedError("arity exceeds the polynomial variable limit");
        s[v + by] = m[v];
      }
    out.emplace(s, c);
  }
  return out;
}

struct GEntry {
  const PolyKey* key;
  Poly poly;  // in the variables of the composite
  long long shift;
};

}  // namespace

PolyCochain compose(const PolyCochain& f, int i, const PolyCochain& g) {
  if (f.algebra() != g.algebra()) throw ConfigError("cochains over different algebras");
  if (i < 1 || i > f.arity()) throw DomainError("composition slot out of range");
  const int p = f.arity(), q = g.arity(), n = p + q - 1;
  PolyCochain out(f.algebra(), n, f.end_degree() + g.end_degree());
  if (f.is_zero() || g.is_zero()) return out;
  if (n > kMaxPolyVars) throw UnsupportedError("arity exceeds the polynomial variable limit");
  const TwistedLaurent& a = *f.algebra();
  const GradedAlgebra& b = *a.base();
  const Field& fld = f.field();
  const int r = a.modulus();

  std::map<std::pair<int, int>, std::vector<GEntry>> slots;
  for (const auto& [key, pv] : g.table()) {
    long long rsum = 0;
    for (int x : key.residues) rsum += x;
    for (const auto& [o, poly] : pv) {
      const long long s = rsum + *g.exponent_offset(key, o);
      const int rho = static_cast<int>(floor_mod(s, r));
      slots[{rho, o}].push_back({&key, shifted(poly, i - 1), (s - rho) / r});
    }
  }

  PolyTable& table = out.mutable_table();
  for (const auto& [fkey, fpv] : f.table()) {
    auto it = slots.find({fkey.residues[i - 1], fkey.basis[i - 1]});
    if (it == slots.end()) continue;
    long long prefix = 0;
    for (int j = 0; j < i - 1; ++j)
      prefix += b.degree(fkey.basis[j]) + static_cast<long long>(fkey.residues[j]) * a.weight() + 1;
    const Scalar sign = parity_sign(fld, static_cast<long long>(g.end_degree()) * prefix);
    for (const GEntry& ge : it->second) {
      PolyKey nk;
      nk.residues.assign(fkey.residues.begin(), fkey.residues.begin() + (i - 1));
      nk.basis.assign(fkey.basis.begin(), fkey.basis.begin() + (i - 1));
      nk.residues.insert(nk.residues.end(), ge.key->residues.begin(), ge.key->residues.end());
      nk.basis.insert(nk.basis.end(), ge.key->basis.begin(), ge.key->basis.end());
      nk.residues.insert(nk.residues.end(), fkey.residues.begin() + i, fkey.residues.end());
      nk.basis.insert(nk.basis.end(), fkey.basis.begin() + i, fkey.basis.end());
      auto& dest = table[nk];
      for (const auto& [of, fp] : fpv) {
        Poly prod = poly_mul(substitute(fp, i - 1, q, ge.shift, fld), ge.poly);
        poly_add(dest[of], prod, sign);
        if (dest[of].empty()) dest.erase(of);
      }
      if (dest.empty()) table.erase(nk);
    }
  }
  return out;
}

PolyCochain brace(const PolyCochain& f, const std::vector<PolyCochain>& args) {
  const int n = static_cast<int>(args.size());
  int arity = f.arity(), deg = f.end_degree();
  for (const auto& x : args) {
    if (x.algebra() != f.algebra()) throw ConfigError("cochains over different algebras");
    arity += x.arity();
    deg += x.end_degree();
  }
  arity -= n;
  if (n == 0) return f;
  PolyCochain out(f.algebra(), arity, deg);
  if (n > f.arity() || f.is_zero()) return out;
  for (const auto& x : args)
    if (x.is_zero()) return out;
  std::vector<int> idx(n);
  for (int k = 0; k < n; ++k) idx[k] = k + 1;
  while (true) {
    PolyCochain cur = f;
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

PolyCochain bracket(const PolyCochain& x, const PolyCochain& y) {
  PolyCochain a = brace(x, {y});
  PolyCochain b = brace(y, {x});
  if ((x.end_degree() * y.end_degree()) % 2 == 0) return a - b;
  return a + b;
}

PolyCochain cup(const PolyCochain& x, const PolyCochain& y) {
  PolyCochain r = brace(m2_of(x.algebra()), {x, y});
  return x.end_degree() % 2 == 0 ? r : -r;
}

PolyCochain sq(const PolyCochain& x) {
  if (x.end_degree() % 2 == 0 && x.field().characteristic() != 2)
    throw DomainError("square needs odd End-degree or characteristic 2");
  return brace(x, {x});
}

PolyCochain hoch_d(const PolyCochain& f) { return bracket(m2_of(f.algebra()), f); }

PolyCochain euler_delta(const LaurentPtr& a) {
  const Field& f = a->field();
  PolyCochain d(a, 1, 0);
  for (const PolyKey& k : all_keys(*a, 1)) {
    const int b = k.basis[0];
    // -|b x^n| with n = r k + rho
    d.add(k, b,
          poly_linear(0, f.from_int(-static_cast<long long>(a->modulus()) * a->weight()),
                      f.from_int(-a->degree(b, k.residues[0]))));
  }
  return d;
}

PolyCochain euler_beta(const LaurentPtr& a) {
  const Field& f = a->field();
  PolyCochain out(a, 1, 0);
  const long long c1 = static_cast<long long>(a->modulus()) * a->weight();  // even
  for (const PolyKey& k : all_keys(*a, 1)) {
    const int b = k.basis[0];
    const long long c0 = a->degree(b, k.residues[0]);
    // binomial(c0 + c1 k, 2) with integer coefficients
    Poly p = poly_constant(f.from_int(c0 * (c0 - 1) / 2));
    poly_add(p, poly_linear(0, f.from_int(c1 / 2 * (2 * c0 - 1)), f.zero()), f.one());
    Mono sq{};
    sq[0] = 2;
    poly_add(p, Poly{{sq, f.from_int(c1 / 2 * c1)}}, f.one());
    out.add(k, b, p);
  }
  return out;
}

PolyCochain element_cochain(const LaurentPtr& a, int b, long long n) {
  PolyCochain c(a, 0, static_cast<int>(a->degree(b, n) + 1));
  c.add(PolyKey{}, b, poly_constant(a->field().one()));
  return c;
}

PolyCochain random_poly_cochain(const LaurentPtr& a, int arity, int end_degree, int max_degree,
                                std::mt19937_64& rng, double density) {
  PolyCochain c(a, arity, end_degree);
  const Field& f = a->field();
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  std::uniform_int_distribution<int> num(-7, 7), den(1, 3);
  auto scalar = [&]() {
    if (f.is_rational()) return f.from_rational(mpq_class(num(rng), den(rng)));
    std::uniform_int_distribution<long long> r(0, f.characteristic() - 1);
    return f.from_int(r(rng));
  };
  // monomials with every exponent <= max_degree
  std::vector<Mono> monos{Mono{}};
  for (int v = 0; v < arity; ++v) {
    std::vector<Mono> next;
    for (const Mono& m : monos)
      for (int e = 0; e <= max_degree; ++e) {
        Mono t = m;
        t[v] = static_cast<std::uint8_t>(e);
        next.push_back(t);
      }
    monos = std::move(next);
  }
  for (const PolyKey& k : all_keys(*a, arity))
    for (int o = 0; o < a->dim(); ++o) {
      if (!c.exponent_offset(k, o) || coin(rng) >= density) continue;
      Poly p;
      for (const Mono& m : monos)
        if (coin(rng) < 0.5) poly_add(p, Poly{{m, f.one()}}, scalar());
      c.add(k, o, p);
    }
  return c;
}

PropsReport run_poly_identity_suite(const LaurentPtr& a, int trials, std::uint64_t seed, int max_arity,
                                    int max_degree) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> arity(0, max_arity), deg(-3, 3);
  forms::Sampler<PolyCochain> s;
  s.draw = [&](int parity, int min_arity, PolyCochain& out) {
    const int p = std::max(min_arity, arity(rng));
    for (int attempt = 0; attempt < 32; ++attempt) {
      const int d = deg(rng);
      if (parity >= 0 && floor_mod(d, 2) != parity) continue;
      out = random_poly_cochain(a, p, d, max_degree, rng);
      return true;
    }
    return false;
  };
  s.like = [&](const PolyCochain& x, PolyCochain& out) {
    out = random_poly_cochain(a, x.arity(), x.end_degree(), max_degree, rng);
  };
  s.describe = [](const PolyCochain& l, const PolyCochain& r) {
    std::ostringstream os;
    PolyCochain diff = l - r;
    os << "bidegree (" << l.bidegree().first << "," << l.bidegree().second << "), " << diff.size()
       << " differing keys";
    return os.str();
  };
  return forms::run_suite(s, a->field(), trials, rng);
}

// ---------------------------------------------------------------------------

namespace {

int component_weight(const TwistedLaurent& a, const PolyKey& k, int out) {
  int w = -a.grading(out);
  for (int b : k.basis) w += a.grading(b);
  return w;
}

struct RowKey {
  PolyKey key;
  int out;
  Mono mono;
  auto operator<=>(const RowKey&) const = default;
};

}  // namespace

WitnessSearch find_witness(const PolyCochain& lhs, const PolyCochain& rhs, int d_search) {
  if (lhs.algebra() != rhs.algebra()) throw ConfigError("cochains over different algebras");
  if (lhs.arity() != rhs.arity() || lhs.end_degree() != rhs.end_degree())
    throw DomainError("witness search needs sides of equal bidegree");
  if (!hoch_d(lhs).is_zero() || !hoch_d(rhs).is_zero()) throw DomainError("witness search needs cocycles");
  if (d_search < 0) throw DomainError("negative search degree");
  const LaurentPtr& a = lhs.algebra();
  const Field& f = a->field();
  const int p = lhs.arity() - 1, d = lhs.end_degree() + 1;
  WitnessSearch res;
  res.degree_bound = d_search;
  res.witness = PolyCochain(a, p, d);
  PolyCochain diff = lhs - rhs;
  if (diff.is_zero()) {
    res.found = true;
    return res;
  }
  if (p < 0) return res;

  std::vector<int> weights;
  for (const auto& [k, pv] : diff.table())
    for (const auto& [o, poly] : pv) weights.push_back(component_weight(*a, k, o));
  std::sort(weights.begin(), weights.end());
  weights.erase(std::unique(weights.begin(), weights.end()), weights.end());

  std::vector<Mono> monos;
  {
    std::vector<Mono> cur{Mono{}};
    std::vector<int> tot{0};
    for (int v = 0; v < p; ++v) {
      std::vector<Mono> next;
      std::vector<int> ntot;
      for (std::size_t j = 0; j < cur.size(); ++j)
        for (int e = 0; tot[j] + e <= d_search; ++e) {
          Mono m = cur[j];
          m[v] = static_cast<std::uint8_t>(e);
          next.push_back(m);
          ntot.push_back(tot[j] + e);
        }
      cur = std::move(next);
      tot = std::move(ntot);
    }
    monos = std::move(cur);
  }

  struct Unknown {
    PolyKey key;
    int out;
    Mono mono;
  };
  std::vector<Unknown> unknowns;
  const PolyCochain probe(a, p, d);
  for (const PolyKey& k : all_keys(*a, p))
    for (int o = 0; o < a->dim(); ++o) {
      if (!probe.exponent_offset(k, o)) continue;
      if (a->graded() && !std::binary_search(weights.begin(), weights.end(), component_weight(*a, k, o)))
        continue;
      for (const Mono& m : monos) unknowns.push_back({k, o, m});
    }
  res.unknowns = unknowns.size();

  (void)m2_of(a);  // built once, outside the parallel region
  std::vector<PolyCochain> images(unknowns.size());
  const long long count = static_cast<long long>(unknowns.size());
#pragma omp parallel for schedule(dynamic, 16)
  for (long long j = 0; j < count; ++j) {
    PolyCochain b(a, p, d);
    b.add(unknowns[j].key, unknowns[j].out, Poly{{unknowns[j].mono, f.one()}});
    images[j] = hoch_d(b);
  }

  std::map<RowKey, std::size_t> rows;
  auto row_of = [&](const PolyKey& k, int o, const Mono& m) {
    return rows.try_emplace(RowKey{k, o, m}, rows.size()).first->second;
  };
  std::vector<SparseVector> cols;
  cols.reserve(images.size());
  for (const auto& img : images) {
    std::map<std::size_t, Scalar> col;
    for (const auto& [k, pv] : img.table())
      for (const auto& [o, poly] : pv)
        for (const auto& [m, c] : poly) col[row_of(k, o, m)] = c;
    cols.push_back(make_vector(std::move(col)));
  }
  std::map<std::size_t, Scalar> target;
  for (const auto& [k, pv] : diff.table())
    for (const auto& [o, poly] : pv)
      for (const auto& [m, c] : poly) target[row_of(k, o, m)] = c;
  res.equations = rows.size();
  SparseMatrix mat = SparseMatrix::from_columns(cols, rows.size(), f);
  auto x = solve(mat, make_vector(std::move(target)));
  if (!x) return res;
  for (const auto& [j, c] : *x)
    res.witness.add(unknowns[j].key, unknowns[j].out, Poly{{unknowns[j].mono, f.one()}}, c);
  if (hoch_d(res.witness) != diff) throw std::logic_error("witness does not reproduce the difference");
  res.found = true;
  return res;
}

}  // namespace hoch

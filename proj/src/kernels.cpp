#include "hoch/kernels.hpp"

#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "hoch/errors.hpp"

namespace hoch {

namespace kernels {

void set_threads(int n) {
#ifdef _OPENMP
  if (n > 0) omp_set_num_threads(n);
#else
  (void)n;
#endif
}

int max_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

namespace {

struct FEntry {
  const Tuple* t;
  const Vec* v;
  bool odd_prefix;  // parity of the suspended degrees before the slot
};

// Small compositions are not worth a parallel region.
constexpr std::size_t kParallelThreshold = 64;

void compose_one(const Tuple& tg, const Vec& vg, const std::vector<std::vector<FEntry>>& bucket,
                 int i, bool odd_g, Table& out) {
  for (const auto& [c, lam] : vg) {
    for (const FEntry& fe : bucket[c]) {
      const Tuple& tf = *fe.t;
      Tuple t;
      t.reserve(tf.size() + tg.size() - 1);
      t.insert(t.end(), tf.begin(), tf.begin() + (i - 1));
      t.insert(t.end(), tg.begin(), tg.end());
      t.insert(t.end(), tf.begin() + i, tf.end());
      Scalar coef = (odd_g && fe.odd_prefix) ? -lam : lam;
      Vec& acc = out[t];
      add_into(acc, *fe.v, coef);
      if (acc.empty()) out.erase(t);
    }
  }
}

}  // namespace

Table compose_table(const Cochain& f, int i, const Cochain& g) {
  const GradedAlgebra& a = *f.algebra();
  std::vector<std::vector<FEntry>> bucket(a.dim());
  for (const auto& [tf, vf] : f.table()) {
    int par = 0;
    for (int j = 0; j < i - 1; ++j) par += a.sdegree(tf[j]);
    bucket[tf[i - 1]].push_back({&tf, &vf, (par & 1) != 0});
  }
  std::vector<std::pair<const Tuple*, const Vec*>> gs;
  gs.reserve(g.size());
  for (const auto& [tg, vg] : g.table()) gs.emplace_back(&tg, &vg);
  const bool odd_g = (g.end_degree() & 1) != 0;
  const std::size_t n = gs.size();

  if (n < kParallelThreshold || max_threads() == 1) {
    Table out;
    for (const auto& [tg, vg] : gs) compose_one(*tg, *vg, bucket, i, odd_g, out);
    return out;
  }

  std::vector<Table> parts(n);
#pragma omp parallel for schedule(dynamic, 8)
  for (std::size_t k = 0; k < n; ++k) compose_one(*gs[k].first, *gs[k].second, bucket, i, odd_g, parts[k]);
  Table out;
  for (auto& part : parts) out.merge(part);
  return out;
}

}  // namespace kernels

namespace reference {

namespace {

std::vector<Tuple> tuples_of_arity(const GradedAlgebra& a, int p) {
  return all_tuples(a, p, Complex::Full);
}

int sdeg_sum(const GradedAlgebra& a, const Tuple& t, std::size_t from, std::size_t to) {
  int s = 0;
  for (std::size_t j = from; j < to; ++j) s += a.sdegree(t[j]);
  return s;
}

}  // namespace

Cochain compose_direct(const Cochain& f, int i, const Cochain& g) {
  if (f.algebra() != g.algebra()) throw ConfigError("cochains over different algebras");
  if (i < 1 || i > f.arity()) throw DomainError("composition slot out of range");
  const GradedAlgebra& a = *f.algebra();
  const int pg = g.arity();
  Cochain out(f.algebra(), f.arity() + pg - 1, f.end_degree() + g.end_degree());
  for (const Tuple& t : tuples_of_arity(a, out.arity())) {
    Tuple inner(t.begin() + (i - 1), t.begin() + (i - 1 + pg));
    Vec gv = g.eval(inner);
    if (gv.empty()) continue;
    int sign_exp = g.end_degree() * sdeg_sum(a, t, 0, i - 1);
    Vec acc;
    for (const auto& [c, lam] : gv) {
      Tuple outer(t.begin(), t.begin() + (i - 1));
      outer.push_back(c);
      outer.insert(outer.end(), t.begin() + (i - 1 + pg), t.end());
      add_into(acc, f.eval(outer), (sign_exp & 1) ? -lam : lam);
    }
    if (!acc.empty()) out.add(t, acc);
  }
  return out;
}

Cochain brace_direct(const Cochain& f, const std::vector<Cochain>& args) {
  const int n = static_cast<int>(args.size());
  int arity = f.arity(), deg = f.end_degree();
  for (const auto& x : args) {
    arity += x.arity();
    deg += x.end_degree();
  }
  arity -= n;
  Cochain out(f.algebra(), arity, deg);
  if (n == 0) return f;
  if (n > f.arity()) return out;
  std::vector<int> idx(n);
  for (int k = 0; k < n; ++k) idx[k] = k + 1;
  while (true) {
    Cochain cur = f;
    int offset = 0;
    for (int k = 0; k < n; ++k) {
      cur = compose_direct(cur, idx[k] + offset, args[k]);
      offset += args[k].arity() - 1;
    }
    out += cur;
    int k = n - 1;
    while (k >= 0 && idx[k] == f.arity() - (n - 1 - k)) --k;
    if (k < 0) break;
    ++idx[k];
    for (int j = k + 1; j < n; ++j) idx[j] = idx[j - 1] + 1;
  }
  return out;
}

Cochain hoch_d_direct(const Cochain& f) {
  const Cochain& m2 = m2_of(f.algebra());
  Cochain out = compose_direct(m2, 1, f) + compose_direct(m2, 2, f);
  Cochain inner(f.algebra(), f.arity() + 1, f.end_degree() - 1);
  for (int i = 1; i <= f.arity(); ++i) inner += compose_direct(f, i, m2);
  if (f.end_degree() % 2 == 0) out -= inner;
  else out += inner;
  return out;
}

}  // namespace reference

}  // namespace hoch

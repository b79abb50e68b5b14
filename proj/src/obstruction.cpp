#include "hoch/obstruction.hpp"

#include <algorithm>
#include <stdexcept>

#include "hoch/errors.hpp"

namespace hoch {

namespace {

void require_valid(const AInfStructure& s) {
  AInfReport rep = is_valid(s);
  if (rep.ok()) return;
  std::string msg = "invalid A_" + std::to_string(s.k()) + " structure";
  if (!rep.violations.empty()) msg += ": SI(" + std::to_string(rep.violations.front().n) + ") != 0";
  throw ValidationError(msg);
}

SparseVector add_scaled(SparseVector a, const Scalar& c, const SparseVector& b) {
  if (!c.is_zero()) axpy(a, c, b);
  return a;
}

// Dense mod-p copy of the page-3 data for enumeration.
struct DenseForm {
  std::uint64_t p;
  std::size_t n, m;
  std::vector<std::uint64_t> target, linear, square, cross;  // row-major, width m

  DenseForm(const Page3Data& d, std::size_t m_, std::uint64_t p_) : p(p_), n(d.linear.size()), m(m_) {
    auto fill = [&](std::vector<std::uint64_t>& out, const SparseVector& v) {
      std::size_t base = out.size();
      out.resize(base + m, 0);
      for (const auto& [i, s] : v) out[base + i] = s.residue();
    };
    fill(target, d.target);
    for (std::size_t i = 0; i < n; ++i) {
      fill(linear, d.linear[i]);
      fill(square, d.square[i]);
      for (std::size_t j = i + 1; j < n; ++j) fill(cross, d.cross[i][j - i - 1]);
    }
  }

  bool vanishes_at(std::uint64_t idx, std::vector<std::uint64_t>& y, std::vector<std::uint64_t>& acc) const {
    for (std::size_t i = 0; i < n; ++i, idx /= p) y[i] = idx % p;
    acc.assign(target.begin(), target.end());
    std::size_t c = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const std::uint64_t yi = y[i];
      if (yi) {
        const std::uint64_t y2 = yi * yi % p;
        for (std::size_t r = 0; r < m; ++r) acc[r] += yi * linear[i * m + r] + y2 * square[i * m + r];
      }
      for (std::size_t j = i + 1; j < n; ++j, ++c) {
        const std::uint64_t w = yi * y[j] % p;
        if (!w) continue;
        for (std::size_t r = 0; r < m; ++r) acc[r] += w * cross[c * m + r];
      }
      for (std::size_t r = 0; r < m; ++r) acc[r] %= p;
    }
    for (std::size_t r = 0; r < m; ++r)
      if (acc[r] % p) return false;
    return true;
  }
};

// Smallest candidate index at which the form vanishes, or total if none.
std::uint64_t enumerate_first(const DenseForm& form, std::uint64_t total) {
  const std::uint64_t block = 1 << 14;
  for (std::uint64_t lo = 0; lo < total; lo += block) {
    const std::uint64_t hi = std::min(total, lo + block);
    std::uint64_t best = total;
#pragma omp parallel
    {
      std::vector<std::uint64_t> y(form.n), acc(form.m);
#pragma omp for reduction(min : best) schedule(static)
      for (std::uint64_t idx = lo; idx < hi; ++idx)
        if (idx < best && form.vanishes_at(idx, y, acc)) best = std::min(best, idx);
    }
    if (best < total) return best;
  }
  return total;
}

std::uint64_t candidate_count(std::uint64_t p, std::size_t n, std::size_t limit) {
  std::uint64_t c = 1;
  for (std::size_t i = 0; i < n; ++i) {
    c *= p;
    if (c > limit) return limit + 1;
  }
  return c;
}

SparseVector digits(std::uint64_t idx, std::uint64_t p, std::size_t n, const Field& f) {
  SparseVector y;
  for (std::size_t i = 0; i < n; ++i, idx /= p)
    if (idx % p) y.emplace_back(i, f.from_int(static_cast<long long>(idx % p)));
  return y;
}

}  // namespace

std::string to_string(Page3Status s) {
  switch (s) {
    case Page3Status::Vanishes: return "vanishes";
    case Page3Status::Nonzero: return "nonzero";
    case Page3Status::Undecided: return "undecided";
  }
  return "undecided";
}

Cochain obstruction_cocycle(const AInfStructure& s) {
  require_valid(s);
  return stasheff_residual(s, s.k() + 1);
}

CohomClass theta_page2(const AInfStructure& s, Cohomology& h) {
  if (s.k() < 3) throw DomainError("page-2 obstruction needs k >= 3");
  return h.class_of(obstruction_cocycle(s));
}

SparseVector page3_value(const Page3Data& d, const SparseVector& y, const Field& f) {
  std::vector<Scalar> dense(d.linear.size(), f.zero());
  for (const auto& [i, s] : y) dense.at(i) = s;
  SparseVector out = d.target;
  for (std::size_t i = 0; i < dense.size(); ++i) {
    if (dense[i].is_zero()) continue;
    out = add_scaled(out, dense[i], d.linear[i]);
    if (d.k != 4) continue;
    out = add_scaled(out, dense[i] * dense[i], d.square[i]);
    for (std::size_t j = i + 1; j < dense.size(); ++j)
      out = add_scaled(out, dense[i] * dense[j], d.cross[i][j - i - 1]);
  }
  return out;
}

bool check_page3_nonzero(const Page3Data& d, const Field& f) {
  if (d.method == "linear") {
    if (d.functional.empty() || dot(d.functional, d.target).is_zero()) return false;
    for (const auto& l : d.linear)
      if (!dot(d.functional, l).is_zero()) return false;
    return true;
  }
  if (d.method != "enumeration" || f.characteristic() == 0) return false;
  const std::uint64_t p = f.characteristic();
  const std::size_t n = d.linear.size();
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < n; ++i) total *= p;
  if (total != d.candidates) return false;
  for (std::uint64_t idx = 0; idx < total; ++idx)
    if (is_zero(page3_value(d, digits(idx, p, n, f), f))) return false;
  return true;
}

Page3Result theta_page3_check(const AInfStructure& s, Cohomology& h, const Page3Options& opt) {
  if (s.k() < 4) throw DomainError("page-3 obstruction needs k >= 4");
  const int k = s.k();
  const Field& f = s.algebra()->field();
  Cochain si = obstruction_cocycle(s);
  const Cochain& m3 = s.m(3);

  Page3Result res;
  Page3Data& d = res.data;
  d.k = k;
  d.target = h.class_of(si).coordinates;
  const HHSpace& src = h.space(k - 1, 3 - k);
  const std::size_t n = src.dim;
  const std::size_t m = h.space(k + 1, 2 - k).dim;
  for (std::size_t i = 0; i < n; ++i) d.linear.push_back(h.class_of(bracket(m3, src.hh_basis[i])).coordinates);
  if (k == 4) {
    d.cross.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      d.square.push_back(h.class_of(sq(src.hh_basis[i])).coordinates);
      for (std::size_t j = i + 1; j < n; ++j)
        d.cross[i].push_back(h.class_of(bracket(src.hh_basis[i], src.hh_basis[j])).coordinates);
    }
  }

  std::optional<SparseVector> y;
  if (is_zero(d.target)) {
    d.method = "linear";
    y = SparseVector{};
  } else if (k >= 5) {
    d.method = "linear";
    SparseMatrix lin = SparseMatrix::from_columns(d.linear, m, f);
    SparseVector rhs = scaled(d.target, f.from_int(-1));
    y = solve(lin, rhs);
    if (!y) d.functional = scaled(*inconsistency_certificate(lin, rhs), f.from_int(-1));
  } else if (f.characteristic() != 0 &&
             candidate_count(f.characteristic(), n, opt.enumeration_limit) <= opt.enumeration_limit) {
    d.method = "enumeration";
    const std::uint64_t p = f.characteristic();
    const std::uint64_t total = candidate_count(p, n, opt.enumeration_limit);
    DenseForm form(d, m, p);
    const std::uint64_t first = enumerate_first(form, total);
    d.candidates = first < total ? first + 1 : total;
    if (first < total) y = digits(first, p, n, f);
  } else {
    // The candidates 0, a solution of the linear part, and those shifted by
    // kernel generators of the linear part.
    d.method = "candidates";
    SparseMatrix lin = SparseMatrix::from_columns(d.linear, m, f);
    std::vector<SparseVector> cands{SparseVector{}};
    auto y0 = solve(lin, scaled(d.target, f.from_int(-1)));
    if (y0) cands.push_back(*y0);
    for (const auto& kv : kernel_basis(lin)) {
      cands.push_back(kv);
      if (y0) {
        SparseVector w = *y0;
        axpy(w, f.one(), kv);
        cands.push_back(w);
      }
    }
    for (const auto& c : cands) {
      ++d.candidates;
      if (is_zero(page3_value(d, c, f))) {
        y = c;
        break;
      }
    }
    if (!y) {
      res.status = Page3Status::Undecided;
      res.reason = "quadratic step over " + f.name() + ": none of " + std::to_string(d.candidates) +
                   " candidates works and exhaustive search is not available";
      return res;
    }
  }

  if (!y) {
    res.status = Page3Status::Nonzero;
    res.reason = d.method == "linear" ? "class is outside the image of [{m3},-]"
                                      : "no class in HH^{3,-1} cancels the obstruction";
    return res;
  }
  res.status = Page3Status::Vanishes;
  res.coordinates = *y;
  Cochain b = h.representative(k - 1, 3 - k, *y);
  Cochain rhs = -si - bracket(m3, b);
  if (k == 4) rhs -= sq(b);
  auto top = h.coboundary_witness(rhs);
  if (!top) throw std::logic_error("page-3 witness search lost a coboundary");
  res.b_prev = b;
  res.b_top = *top;
  return res;
}

ObstructionReport obstruct(const AInfStructure& s, Cohomology& h, int l, const Page3Options& opt) {
  const int k = s.k();
  ObstructionReport rep;
  rep.k = k;
  rep.l = l;
  rep.cocycle = obstruction_cocycle(s);
  rep.cochain_vanishes = rep.cocycle.is_zero();
  if (l >= k || k < 3) return rep;
  rep.page2_class = h.class_of(rep.cocycle);
  if (rep.page2_class->is_zero()) {
    rep.page2_witness = h.coboundary_witness(-rep.cocycle);
    if (!rep.page2_witness) throw std::logic_error("zero class without a coboundary witness");
    return rep;
  }
  rep.page2_certificate = h.non_coboundary_certificate(rep.cocycle);
  if (l <= k - 2 && k >= 4) rep.page3 = theta_page3_check(s, h, opt);
  return rep;
}

ExtendResult extend_once(const AInfStructure& s, int l, Cohomology& h, const Page3Options& opt) {
  const int k = s.k();
  if (l > k || l < k - 2 || l < 2 || (l == k - 2 && k < 4))
    throw UnsupportedError("extension depth l = " + std::to_string(l) + " is not supported for k = " +
                           std::to_string(k) + " (implemented: k, k-1, k-2 with k >= 4)");
  if (h.algebra() != s.algebra()) throw ConfigError("cohomology of a different algebra");
  ExtendResult out;
  out.l = l;
  out.report = obstruct(s, h, l, opt);
  const ObstructionReport& r = out.report;
  std::optional<AInfStructure> next;
  if (r.cochain_vanishes) {
    next = s.extended(k + 1);
  } else if (r.page2_witness) {
    next = perturb(s, k, *r.page2_witness).extended(k + 1);
  } else if (r.page3 && r.page3->status == Page3Status::Vanishes) {
    AInfStructure t = perturb(s, k - 1, *r.page3->b_prev);
    next = perturb(t, k, *r.page3->b_top).extended(k + 1);
  }
  if (!next) return out;
  if (!is_valid(*next).ok()) throw std::logic_error("extension failed to re-validate");
  out.ok = true;
  out.structure = std::move(next);
  return out;
}

ExtendTrace extend_to(const AInfStructure& s, int K, Cohomology& h, const Page3Options& opt) {
  ExtendTrace t{false, {}, s, std::nullopt};
  require_valid(s);
  while (t.last.k() < K) {
    const int k = t.last.k();
    const int deepest = k >= 4 ? k - 2 : std::max(2, k - 1);
    std::optional<ExtendResult> res;
    for (int l = k; l >= deepest; --l) {
      res = extend_once(t.last, l, h, opt);
      if (res->ok) break;
    }
    t.steps.push_back({k, res->l, res->ok});
    if (!res->ok) {
      t.failure = std::move(res->report);
      return t;
    }
    t.last = std::move(*res->structure);
  }
  t.ok = true;
  return t;
}

}  // namespace hoch

#include "hoch/ainf.hpp"

#include "hoch/errors.hpp"

namespace hoch {

namespace {

void check_map(const AlgebraPtr& a, int n, const Cochain& c) {
  if (c.algebra() != a) throw ConfigError("m" + std::to_string(n) + " is over a different algebra");
  if (c.arity() != n || c.end_degree() != -1)
    throw DomainError("m" + std::to_string(n) + " must have bidegree (" + std::to_string(n) + "," +
                      std::to_string(2 - n) + ")");
}

}  // namespace

AInfStructure::AInfStructure(AlgebraPtr a, int k) : alg_(std::move(a)) {
  if (k < 2) throw DomainError("A_k structures need k >= 2");
  maps_.push_back(m2_of(alg_));
  for (int n = 3; n <= k; ++n) maps_.push_back(zero_cochain(alg_, n, 2 - n));
}

AInfStructure::AInfStructure(AlgebraPtr a, std::vector<Cochain> higher) : alg_(std::move(a)) {
  maps_.push_back(m2_of(alg_));
  for (std::size_t i = 0; i < higher.size(); ++i) {
    check_map(alg_, static_cast<int>(i) + 3, higher[i]);
    maps_.push_back(std::move(higher[i]));
  }
}

const Cochain& AInfStructure::m(int n) const {
  if (n < 2 || n > k()) throw DomainError("no map m" + std::to_string(n) + " in an A_" + std::to_string(k()) + " structure");
  return maps_[n - 2];
}

AInfStructure AInfStructure::truncated(int n) const {
  if (n < 2 || n > k()) throw DomainError("cannot truncate to A_" + std::to_string(n));
  AInfStructure r = *this;
  r.maps_.resize(n - 1);
  return r;
}

AInfStructure AInfStructure::extended(int n) const {
  AInfStructure r = *this;
  for (int j = k() + 1; j <= n; ++j) r.maps_.push_back(zero_cochain(alg_, j, 2 - j));
  return r;
}

Cochain stasheff_residual(const AInfStructure& s, int n) {
  if (n < 2) throw DomainError("SI(n) needs n >= 2");
  if (n > s.k() + 1) throw DomainError("SI(" + std::to_string(n) + ") needs m" + std::to_string(n - 1));
  Cochain r = zero_cochain(s.algebra(), n, 3 - n);
  for (int p = 2; p <= n - 1; ++p) {
    const int q = n + 1 - p;
    if (s.m(p).is_zero() || s.m(q).is_zero()) continue;
    r += brace(s.m(p), {s.m(q)});
  }
  return r;
}

AInfReport is_valid(const AInfStructure& s) {
  AInfReport rep;
  rep.m2_ok = validate_algebra(*s.algebra()).ok() && s.m(2) == m2_of(s.algebra());
  for (int n = 3; n <= s.k(); ++n) {
    Cochain si = stasheff_residual(s, n);
    if (si.is_zero()) continue;
    const auto& [t, v] = *si.table().begin();
    rep.violations.push_back({n, t, v});
  }
  return rep;
}

CohomClass universal_massey(const AInfStructure& s, Cohomology& h) {
  if (s.k() < 4) throw DomainError("the universal Massey product needs an A_4 structure");
  if (h.algebra() != s.algebra()) throw ConfigError("cohomology of a different algebra");
  if (!is_valid(s).ok()) throw ValidationError("universal Massey product of an invalid structure");
  return h.class_of(s.m(3));
}

AInfStructure perturb(const AInfStructure& s, int j, const Cochain& b) {
  if (j < 3 || j > s.k()) throw DomainError("can only perturb m3..m" + std::to_string(s.k()));
  check_map(s.algebra(), j, b);
  AInfStructure r = s;
  r.maps_[j - 2] += b;
  return r;
}

}  // namespace hoch

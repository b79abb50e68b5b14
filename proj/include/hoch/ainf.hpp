#pragma once

// Minimal A_k structures m_2..m_k on a graded algebra and their Stasheff
// residuals.

#include <string>
#include <vector>

#include "hoch/cohomology.hpp"

namespace hoch {

class AInfStructure {
 public:
  // m_2 is the shifted multiplication, the higher maps are zero.
  AInfStructure(AlgebraPtr a, int k);
  // higher[i] is m_{i+3}. Throws DomainError on a bidegree mismatch.
  AInfStructure(AlgebraPtr a, std::vector<Cochain> higher);

  const AlgebraPtr& algebra() const { return alg_; }
  int k() const { return static_cast<int>(maps_.size()) + 1; }
  // 2 <= n <= k, else DomainError.
  const Cochain& m(int n) const;
  // Same structure with maps above n dropped, or zero maps added up to n.
  AInfStructure truncated(int n) const;
  AInfStructure extended(int n) const;

 private:
  friend AInfStructure perturb(const AInfStructure& s, int j, const Cochain& b);
  AlgebraPtr alg_;
  std::vector<Cochain> maps_;  // maps_[0] = m_2
};

// SI(n) = sum over p + q = n + 1, p, q >= 2 of m_p{m_q}; bidegree (n, 3 - n).
// Needs n <= k + 1.
Cochain stasheff_residual(const AInfStructure& s, int n);

struct StasheffViolation {
  int n = 0;
  Tuple witness;  // a tuple where SI(n) is nonzero
  Vec value;
};

struct AInfReport {
  bool m2_ok = true;  // m_2 is the multiplication of a valid algebra
  std::vector<StasheffViolation> violations;
  bool ok() const { return m2_ok && violations.empty(); }
};

AInfReport is_valid(const AInfStructure& s);

// {m3} in HH^{3,-1}. DomainError if k < 4, ValidationError if s is invalid.
CohomClass universal_massey(const AInfStructure& s, Cohomology& h);

// m_j + b. Needs 3 <= j <= k and b of bidegree (j, 2 - j). Not re-validated.
AInfStructure perturb(const AInfStructure& s, int j, const Cochain& b);

}  // namespace hoch

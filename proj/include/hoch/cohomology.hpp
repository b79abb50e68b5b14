#pragma once

// Hochschild cohomology of a finite-dimensional graded algebra, one bidegree
// at a time, with classes and the induced operations.

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "hoch/cochain.hpp"

namespace hoch {

// Matrix of the differential C^{p,q} -> C^{p+1,q}: rows are target
// coordinates, columns source coordinates. Columns are assembled in parallel.
SparseMatrix differential_matrix(const CochainSpace& src, const CochainSpace& tgt);

namespace reference {
// Same matrix, one column at a time by direct evaluation.
SparseMatrix differential_matrix_serial(const CochainSpace& src, const CochainSpace& tgt);
}  // namespace reference

// Range of q for which arity-p cochains can be nonzero (empty if lo > hi).
std::pair<int, int> q_support(const GradedAlgebra& a, int p);

// Expresses vectors in terms of a fixed independent family.
class Decomposer {
 public:
  Decomposer(std::size_t ambient_dim, const std::vector<SparseVector>& generators);
  // Coefficients on the generators, or nullopt if v is outside their span.
  std::optional<SparseVector> coefficients(const SparseVector& v) const;
  std::size_t size() const { return n_; }

 private:
  std::size_t dim_, n_;
  EchelonBasis ech_;
};

struct HHSpace {
  int p = 0, q = 0;
  Complex kind = Complex::Normalized;
  std::shared_ptr<const CochainSpace> cochains;
  std::vector<SparseVector> cocycles;      // kernel basis in cochain coordinates
  std::vector<SparseVector> coboundaries;  // echelon basis of the image
  std::vector<SparseVector> reps;          // coordinates of the representatives
  std::vector<Cochain> hh_basis;
  std::size_t dim = 0;
  std::size_t cochain_dim() const { return cochains->dim(); }
};

struct CohomClass {
  int p = 0, q = 0;
  Cochain representative;
  SparseVector coordinates;
  bool is_zero() const { return coordinates.empty(); }
};

// A functional on the cochains of bidegree (p, q) of one complex that kills
// every coboundary but not the cocycle it certifies.
struct CoboundaryCertificate {
  Complex kind = Complex::Full;
  int p = 0, q = 0;
  SparseVector functional;
};

enum class CupVerdict { Bijective, InjectiveOnly, SurjectiveOnly, Neither };
std::string to_string(CupVerdict v);

struct CupWindowCell {
  int p = 0, q = 0;
  std::size_t source_dim = 0, target_dim = 0, rank = 0;
  CupVerdict verdict = CupVerdict::Bijective;
};

struct CupWindowReport {
  std::vector<CupWindowCell> cells;
  bool all_bijective() const {
    for (const auto& c : cells)
      if (c.verdict != CupVerdict::Bijective) return false;
    return true;
  }
};

// Caches HH spaces of one algebra. Safe to share between threads. Cocycles
// outside the chosen complex are classified through the full complex.
class Cohomology {
 public:
  explicit Cohomology(AlgebraPtr a, Complex kind = Complex::Normalized);

  const AlgebraPtr& algebra() const { return alg_; }
  Complex kind() const { return kind_; }

  const HHSpace& space(int p, int q);
  const CochainSpace& cochains(int p, int q, Complex kind);
  const CochainSpace& cochains(int p, int q) { return cochains(p, q, kind_); }
  const SparseMatrix& differential(int p, int q, Complex kind);
  const SparseMatrix& differential(int p, int q) { return differential(p, q, kind_); }

  // Throws DomainError if z is not a cocycle.
  CohomClass class_of(const Cochain& z);
  CohomClass make_class(int p, int q, const SparseVector& coordinates);
  Cochain representative(int p, int q, const SparseVector& coordinates);
  // A cochain b with hoch_d(b) = z, or nullopt. Throws DomainError if z is
  // not a cocycle.
  std::optional<Cochain> coboundary_witness(const Cochain& z);
  bool is_cocycle(const Cochain& z) const { return hoch_d(z).is_zero(); }
  // Proof that z is not a coboundary, or nullopt if it is one.
  std::optional<CoboundaryCertificate> non_coboundary_certificate(const Cochain& z);
  // Rechecks a certificate against z, rebuilding the differential column by
  // column from hoch_d.
  bool check_certificate(const CoboundaryCertificate& c, const Cochain& z);

  // Matrices in the hh bases; columns index the source space.
  SparseMatrix induced_bracket(const CohomClass& z, int p, int q);
  SparseMatrix induced_cup(const CohomClass& z, int p, int q);
  // Throws DomainError for even End-degree outside characteristic 2.
  CohomClass induced_sq(const CohomClass& z);
  CohomClass bracket_class(const CohomClass& x, const CohomClass& y);
  CohomClass cup_class(const CohomClass& x, const CohomClass& y);

  // z cup - : HH^{p,q} -> HH^{p+3,q-1} for z in HH^{3,-1}.
  CupWindowReport cup_bijectivity_window(const CohomClass& z, std::pair<int, int> p_range,
                                         std::pair<int, int> q_range);

 private:
  struct FullData {
    std::unique_ptr<Decomposer> dec;  // generators: reps, then full coboundaries
    std::size_t nreps = 0;
  };
  const FullData& full_data(int p, int q);
  std::vector<SparseVector> image_basis(int p, int q, Complex kind);

  AlgebraPtr alg_;
  Complex kind_;
  std::recursive_mutex mu_;
  std::map<std::tuple<int, int, Complex>, std::shared_ptr<const CochainSpace>> spaces_;
  std::map<std::tuple<int, int, Complex>, SparseMatrix> diffs_;
  std::map<std::pair<int, int>, std::unique_ptr<HHSpace>> hh_;
  std::map<std::pair<int, int>, std::unique_ptr<Decomposer>> hh_dec_;
  std::map<std::pair<int, int>, FullData> full_;
};

}  // namespace hoch

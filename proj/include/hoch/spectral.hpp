#pragma once

// Pages E1, E2, E3 of the truncated spectral sequence of an A_k structure,
// computed from Hochschild data, and the collapse checker.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hoch/ainf.hpp"

namespace hoch {

enum class CellKind { VectorSpace, CocycleSpace, Predicate, Undefined };
std::string to_string(CellKind k);

struct PageCell {
  int r = 0, s = 0, t = 0;
  CellKind kind = CellKind::Undefined;
  std::size_t dim = 0;
  std::string note;  // what the cell is, or why it is not available
};

// A second-page differential in the bases of the cohomology spaces; on
// E2^{0t} the source basis is the cocycle basis of Z^{2,-t}.
struct D2Map {
  int s = 0, t = 0;
  bool quadratic = false;  // only at (0,1)
  SparseMatrix linear;     // columns: source basis
  // quadratic part at (0,1): d(x) = linear x + sum x_i^2 square_i + sum_{i<j} x_i x_j cross_ij
  std::vector<SparseVector> square;
  std::vector<std::vector<SparseVector>> cross;  // cross[i][j - i - 1]
  std::size_t source_dim() const { return linear.cols(); }
  std::size_t target_dim() const { return linear.rows(); }
  SparseVector apply(const SparseVector& x) const;
  // d(x + y) - d(x) - d(y)
  SparseVector additivity_defect(const SparseVector& x, const SparseVector& y) const;
};

struct PageReport {
  int r = 0;
  std::pair<int, int> s_range, t_range;
  std::vector<PageCell> cells;  // ordered by (s, t)
  struct Differential {
    int s = 0, t = 0;
    SparseMatrix matrix;
  };
  std::vector<Differential> differentials;
};

struct CollapseReport {
  bool sq_vanishes = false;
  CupWindowReport cup;
  bool cup_bijective = false;
  bool e3_checked = false;
  bool e3_vanishes = false;
  std::vector<PageCell> e3_cells;  // the cells with s >= 2 that were computed
  bool ok() const { return sq_vanishes && cup_bijective && e3_checked && e3_vanishes; }
};

class SpectralSequence {
 public:
  // E1 and E2 only.
  explicit SpectralSequence(Cohomology& h);
  // Also d2 and E3; needs a valid structure with k >= 5.
  SpectralSequence(Cohomology& h, AInfStructure phi);

  Cohomology& cohomology() { return h_; }

  // E1^{st} = C^{s+2,-t}.
  PageCell e1_term(int s, int t);
  // (-1)^{t-s} times the Hochschild differential; s >= 1, or t > s >= 0.
  SparseMatrix d1_matrix(int s, int t);

  PageCell e2_term(int s, int t);
  // E2^{00}: m of bidegree (2,0) is a shifted multiplication iff m{m} = 0.
  static bool e2_00_contains(const Cochain& m);

  // UnsupportedError at (1,1), UndefinedCell outside the known ranges.
  D2Map d2_map(int s, int t);
  PageCell e3_term(int s, int t);

  // r in {1, 2, 3}.
  PageReport page(int r, std::pair<int, int> s_range, std::pair<int, int> t_range);

  // Sq({m3}) = 0, bijectivity of {m3} cup - on HH^{p,q} for p >= 2 in the
  // window, and E3^{st} = 0 for s >= 2 in the window.
  CollapseReport collapse_check(std::pair<int, int> s_range, std::pair<int, int> t_range);

 private:
  const AInfStructure& phi() const;
  const CohomClass& massey();
  SparseMatrix bracket_matrix(const std::vector<Cochain>& source, int tp, int tq, int sign);
  std::vector<Cochain> cocycle_basis(int p, int q);
  // E3 at (2,2): span of the values of the incoming quadratic map.
  std::vector<SparseVector> incoming_22();

  Cohomology& h_;
  std::optional<AInfStructure> phi_;
  std::optional<CohomClass> massey_;
};

// Text grid with one row per t (descending) and one column per s.
std::string grid_summary(const PageReport& rep);

}  // namespace hoch

#pragma once

// Finite-dimensional graded associative algebras given by a basis and
// structure constants.

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "hoch/exactla.hpp"

namespace hoch {

// Output vectors of algebra products and cochains: basis index -> coefficient.
using Vec = std::map<int, Scalar>;

void add_into(Vec& acc, const Vec& v, const Scalar& coef);
bool vec_is_zero(const Vec& v);

struct BasisElement {
  std::string name;
  int degree = 0;
};

class GradedAlgebra {
 public:
  // Omitted products are zero except those involving the unit, which are
  // filled in. Throws ConfigError on duplicate names or unknown names.
  GradedAlgebra(Field field, std::vector<BasisElement> basis, const std::string& unit,
                const std::map<std::pair<std::string, std::string>, std::map<std::string, Scalar>>&
                    products);

  const Field& field() const { return field_; }
  int dim() const { return static_cast<int>(basis_.size()); }
  const std::vector<BasisElement>& basis() const { return basis_; }
  const std::string& name(int i) const { return basis_[i].name; }
  int degree(int i) const { return basis_[i].degree; }
  // Degree on the suspension.
  int sdegree(int i) const { return basis_[i].degree + 1; }
  int unit() const { return unit_; }
  int index(const std::string& name) const;  // throws ConfigError

  const Vec& product(int a, int b) const { return products_[a * dim() + b]; }
  Vec multiply(const Vec& x, const Vec& y) const;

  int min_degree() const;
  int max_degree() const;

  // Declares a complete family of orthogonal idempotents: the listed basis
  // elements plus vertex 0 = 1 minus their sum. Every other non-unit basis
  // element b must satisfy e_i b e_j = b for exactly one pair (i, j).
  // Throws ConfigError otherwise.
  void set_vertices(const std::vector<std::string>& idempotents);
  bool has_vertices() const { return has_vertices_; }
  int vertex_count() const { return static_cast<int>(idempotents_.size()) + 1; }
  const std::vector<int>& vertex_basis() const { return idempotents_; }
  // The unit and the declared idempotents span the separable part.
  bool separable(int i) const;
  int source(int i) const { return source_[i]; }  // -1 on the separable part
  int target(int i) const { return target_[i]; }
  Vec vertex_idempotent(int v) const;

 private:
  Field field_;
  std::vector<BasisElement> basis_;
  std::map<std::string, int> index_;
  int unit_ = 0;
  std::vector<Vec> products_;
  bool has_vertices_ = false;
  std::vector<int> idempotents_;
  std::vector<int> source_, target_;
};

using AlgebraPtr = std::shared_ptr<const GradedAlgebra>;

struct Violation {
  std::string kind;  // "degree", "unit", "associativity"
  std::vector<std::string> witness;
  std::string detail;
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
};

ValidationReport validate_algebra(const GradedAlgebra& a);

class Cochain;
// Shifted multiplication m2(sx, sy) = (-1)^{|x|} s(xy). Throws ValidationError
// unless the algebra is valid; with require_associative = false only degree
// additivity is required.
Cochain shifted_m2(const AlgebraPtr& a, bool require_associative = true);

// Small named algebras used by tests, fixtures and the CLI.
namespace algebras {
AlgebraPtr ground(Field f);                         // k in degree 0
AlgebraPtr dual_numbers(Field f, int eps_degree = 0);  // k[eps]/(eps^2)
AlgebraPtr exterior(Field f, int u_degree = 1);     // Lambda(u)
AlgebraPtr truncated_polynomial(Field f, int n, int x_degree,
                                const std::string& var = "x");  // k[x]/(x^n)
// k<e, x>/(e^2, x e - twist e x, x^n), |e| = 0; basis 1, x, x2, ..., e, ex, ...
AlgebraPtr dual_extension(Field f, int n, int x_degree, int twist);
// Path algebra of the oriented n-cycle modulo paths of length two, with
// vertex idempotents declared; basis 1, e2..en, a1..an.
AlgebraPtr cyclic_quiver(Field f, const std::vector<int>& arrow_degrees);
}  // namespace algebras

}  // namespace hoch

#pragma once

// Hochschild cochains: homogeneous multilinear maps on the suspension of a
// graded algebra, with braces, cup product, bracket, square and differential.

#include <map>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "hoch/algebra.hpp"

namespace hoch {

using Tuple = std::vector<int>;
using Table = std::map<Tuple, Vec>;

// Formal arities below zero occur for vacuous braces such as x{y} with x and
// y of arity 0; such cochains are always zero.
class Cochain {
 public:
  Cochain() = default;
  Cochain(AlgebraPtr a, int arity, int end_degree);

  const AlgebraPtr& algebra() const { return alg_; }
  const Field& field() const { return alg_->field(); }
  int arity() const { return arity_; }
  int end_degree() const { return end_degree_; }
  // Hochschild bidegree (p, q) with q = 1 - p - d.
  std::pair<int, int> bidegree() const { return {arity_, 1 - arity_ - end_degree_}; }

  // Suspended degree of the output forced by homogeneity.
  int output_sdegree(const Tuple& t) const;

  // Throws DomainError on arity or homogeneity violations.
  void add(const Tuple& t, const Vec& v, const Scalar& coef);
  void add(const Tuple& t, const Vec& v);
  void add(const Tuple& t, int out, const Scalar& coef);

  const Table& table() const { return table_; }
  Vec eval(const Tuple& t) const;
  bool is_zero() const { return table_.empty(); }
  std::size_t size() const { return table_.size(); }
  // No stored tuple contains the unit.
  bool is_normalized() const;

  Cochain& operator+=(const Cochain& o);
  Cochain& operator-=(const Cochain& o);
  Cochain& operator*=(const Scalar& s);
  Cochain operator-() const;
  friend Cochain operator+(Cochain a, const Cochain& b) { return a += b; }
  friend Cochain operator-(Cochain a, const Cochain& b) { return a -= b; }
  friend Cochain operator*(const Scalar& s, Cochain a) { return a *= s; }
  friend Cochain operator*(Cochain a, const Scalar& s) { return a *= s; }
  friend bool operator==(const Cochain& a, const Cochain& b);
  friend bool operator!=(const Cochain& a, const Cochain& b) { return !(a == b); }

  // Direct access for kernels: the table must stay canonical.
  Table& mutable_table() { return table_; }

 private:
  void check_compatible(const Cochain& o) const;

  AlgebraPtr alg_;
  int arity_ = 0;
  int end_degree_ = 0;
  Table table_;
};

// Cochain of the given bidegree; End-degree is 1 - p - q.
Cochain zero_cochain(const AlgebraPtr& a, int p, int q);
Cochain identity_cochain(const AlgebraPtr& a);
// Arity-1 cochain s(a) -> s(L(a)) from a linear map given on basis indices.
Cochain linear_cochain(const AlgebraPtr& a, int end_degree, const std::map<int, Vec>& images);

// The shifted multiplication of a valid algebra, computed once per algebra.
const Cochain& m2_of(const AlgebraPtr& a);
inline const Cochain& multiplication(const Cochain& x) { return m2_of(x.algebra()); }

// f o_i g with 1 <= i <= arity(f) and the Koszul evaluation sign.
Cochain compose(const Cochain& f, int i, const Cochain& g);
Cochain brace(const Cochain& f, const std::vector<Cochain>& args);
Cochain bracket(const Cochain& x, const Cochain& y);
Cochain cup(const Cochain& x, const Cochain& y);
// Requires odd End-degree or characteristic 2.
Cochain sq(const Cochain& x);
Cochain hoch_d(const Cochain& f);

Cochain euler_delta(const AlgebraPtr& a);
// beta(sx) = |x|(|x|-1)/2 sx, so that delta cup delta + [m2, beta] = 0.
Cochain euler_beta(const AlgebraPtr& a);

// Which cochains a space holds: all of them, those vanishing when some
// argument is the unit, or those relative to the vertex idempotents (zero on
// the separable part, supported on composable tuples, values in e_s A e_t).
enum class Complex { Full, Normalized, Relative };
std::string to_string(Complex c);
Complex parse_complex(const std::string& s);  // throws ConfigError

// The p-tuples of basis indices a space of the given kind is supported on, in
// lexicographic order.
std::vector<Tuple> all_tuples(const GradedAlgebra& a, int p, Complex kind);

// The cochains of bidegree (p, q), with a basis ordered by tuple then by the
// output index that identifies each element. Outside the relative complex
// every basis element is elementary.
class CochainSpace {
 public:
  struct Element {
    Tuple tuple;
    int lead;  // coefficient 1 here; only single-term values may share it
    Vec value;
  };

  CochainSpace(AlgebraPtr a, int p, int q, Complex kind);

  const AlgebraPtr& algebra() const { return alg_; }
  int arity() const { return p_; }
  int q() const { return q_; }
  int end_degree() const { return 1 - p_ - q_; }
  Complex kind() const { return kind_; }
  std::size_t dim() const { return basis_.size(); }
  const std::vector<Element>& basis() const { return basis_; }

  Cochain basis_cochain(std::size_t i) const;
  Cochain from_coordinates(const SparseVector& v) const;
  // Throws DomainError if c is not in the space.
  SparseVector coordinates(const Cochain& c) const;
  std::optional<SparseVector> try_coordinates(const Cochain& c) const;
  std::optional<std::size_t> index_of(const Tuple& t, int lead) const;

 private:
  AlgebraPtr alg_;
  int p_, q_;
  Complex kind_;
  std::vector<Element> basis_;
  std::map<std::pair<Tuple, int>, std::size_t> index_;
};

struct RandomCochainOptions {
  double density = 0.6;
  bool normalized = false;
  int coefficient_range = 7;  // rationals drawn as n/d with |n| <= range, 1 <= d <= 3
};

Cochain random_cochain(const AlgebraPtr& a, int arity, int end_degree, std::mt19937_64& rng,
                       const RandomCochainOptions& opts = {});

}  // namespace hoch

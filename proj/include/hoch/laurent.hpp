#pragma once

// Twisted Laurent algebras B[x, x^-1; sigma] and their Hochschild cochains.
// A cochain is stored per residue class of the exponents of x modulo
// r = lcm(2, order of sigma); on each class its coefficients are polynomials
// in the quotient indices k_i, where n_i = r k_i + rho_i.

#include <array>
#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "hoch/algebra.hpp"
#include "hoch/identity_forms.hpp"

namespace hoch {

constexpr int kMaxPolyVars = 16;
using Mono = std::array<std::uint8_t, kMaxPolyVars>;
// Monomial exponents -> coefficient, no stored zeros.
using Poly = std::map<Mono, Scalar>;

Poly poly_constant(const Scalar& c);
// c k_var + d
Poly poly_linear(int var, const Scalar& c, const Scalar& d);
void poly_add(Poly& acc, const Poly& p, const Scalar& coef);
Poly poly_mul(const Poly& a, const Poly& b);
Scalar poly_eval(const Poly& p, const std::vector<long long>& k, const Field& f);
int poly_degree(const Poly& p);        // largest exponent of a single variable
int poly_total_degree(const Poly& p);

class TwistedLaurent {
 public:
  // sigma[b] is the image of basis element b. Throws ConfigError unless sigma
  // is a degree-preserving automorphism with sigma^order = 1, and
  // UnsupportedError for order <= 0 (infinite). The optional grading is an
  // extra basis grading respected by products and sigma; it only narrows
  // witness searches.
  TwistedLaurent(AlgebraPtr base, std::vector<Vec> sigma, int sigma_order, int weight = 1,
                 std::vector<int> grading = {});

  const AlgebraPtr& base() const { return base_; }
  const Field& field() const { return base_->field(); }
  int dim() const { return base_->dim(); }
  int weight() const { return weight_; }
  int sigma_order() const { return order_; }
  int modulus() const { return modulus_; }
  // sigma^rho(b) for 0 <= rho < modulus.
  const Vec& sigma_power(int b, int rho) const { return powers_[rho][b]; }
  // Degree of b x^n.
  long long degree(int b, long long n) const { return base_->degree(b) + n * weight_; }
  int grading(int b) const { return grading_.empty() ? 0 : grading_[b]; }
  bool graded() const { return !grading_.empty(); }

 private:
  AlgebraPtr base_;
  int order_, weight_, modulus_;
  std::vector<std::vector<Vec>> powers_;
  std::vector<int> grading_;
};

using LaurentPtr = std::shared_ptr<const TwistedLaurent>;

// k<eps, x^{+-1}>/(eps^2, x eps + eps x) with |x| = 1, |eps| = 0.
LaurentPtr anticommuting_laurent(Field f);

struct PolyKey {
  std::vector<int> residues;  // n_i mod r
  std::vector<int> basis;     // B-basis indices
  auto operator<=>(const PolyKey&) const = default;
};
using PolyVec = std::map<int, Poly>;  // output B-basis index -> coefficient
using PolyTable = std::map<PolyKey, PolyVec>;
// (B-basis index, exponent of x) -> coefficient
using LaurentVec = std::map<std::pair<int, long long>, Scalar>;

class PolyCochain {
 public:
  PolyCochain() = default;
  PolyCochain(LaurentPtr a, int arity, int end_degree);

  const LaurentPtr& algebra() const { return alg_; }
  const Field& field() const { return alg_->field(); }
  int arity() const { return arity_; }
  int end_degree() const { return end_degree_; }
  std::pair<int, int> bidegree() const { return {arity_, 1 - arity_ - end_degree_}; }

  // c such that the output exponent is n_1 + ... + n_p + c, or nullopt when
  // no output of this basis element is homogeneous.
  std::optional<long long> exponent_offset(const PolyKey& k, int out) const;

  // Throws DomainError on arity, residue or homogeneity violations.
  void add(const PolyKey& k, int out, const Poly& p, const Scalar& coef);
  void add(const PolyKey& k, int out, const Poly& p);

  const PolyTable& table() const { return table_; }
  PolyTable& mutable_table() { return table_; }
  bool is_zero() const { return table_.empty(); }
  std::size_t size() const { return table_.size(); }
  int degree() const;

  LaurentVec eval(const std::vector<std::pair<int, long long>>& args) const;

  PolyCochain& operator+=(const PolyCochain& o);
  PolyCochain& operator-=(const PolyCochain& o);
  PolyCochain& operator*=(const Scalar& s);
  PolyCochain operator-() const;
  friend PolyCochain operator+(PolyCochain a, const PolyCochain& b) { return a += b; }
  friend PolyCochain operator-(PolyCochain a, const PolyCochain& b) { return a -= b; }
  friend PolyCochain operator*(const Scalar& s, PolyCochain a) { return a *= s; }
  friend PolyCochain operator*(PolyCochain a, const Scalar& s) { return a *= s; }
  friend bool operator==(const PolyCochain& a, const PolyCochain& b);
  friend bool operator!=(const PolyCochain& a, const PolyCochain& b) { return !(a == b); }

 private:
  void check_compatible(const PolyCochain& o) const;

  LaurentPtr alg_;
  int arity_ = 0;
  int end_degree_ = 0;
  PolyTable table_;
};

// Every key of the given arity, in lexicographic order.
std::vector<PolyKey> all_keys(const TwistedLaurent& a, int arity);

const PolyCochain& m2_of(const LaurentPtr& a);
inline const PolyCochain& multiplication(const PolyCochain& x) { return m2_of(x.algebra()); }

PolyCochain compose(const PolyCochain& f, int i, const PolyCochain& g);
PolyCochain brace(const PolyCochain& f, const std::vector<PolyCochain>& args);
PolyCochain bracket(const PolyCochain& x, const PolyCochain& y);
PolyCochain cup(const PolyCochain& x, const PolyCochain& y);
PolyCochain sq(const PolyCochain& x);
PolyCochain hoch_d(const PolyCochain& f);

PolyCochain euler_delta(const LaurentPtr& a);
PolyCochain euler_beta(const LaurentPtr& a);
// The arity-0 cochain with value b x^n.
PolyCochain element_cochain(const LaurentPtr& a, int b, long long n);

PolyCochain random_poly_cochain(const LaurentPtr& a, int arity, int end_degree, int max_degree,
                                std::mt19937_64& rng, double density = 0.5);

PropsReport run_poly_identity_suite(const LaurentPtr& a, int trials, std::uint64_t seed, int max_arity = 2,
                                    int max_degree = 1);

struct WitnessSearch {
  bool found = false;
  PolyCochain witness;  // lhs - rhs = hoch_d(witness) when found
  int degree_bound = 0;
  std::size_t unknowns = 0;
  std::size_t equations = 0;
};

// Looks for b of total polynomial degree <= d_search with lhs - rhs = hoch_d(b).
// Finding one proves the classes agree; not finding one proves nothing.
// Throws DomainError on a bidegree mismatch or when a side is not a cocycle.
WitnessSearch find_witness(const PolyCochain& lhs, const PolyCochain& rhs, int d_search);

struct Section8Check {
  std::string id;  // "a" .. "h"
  std::string name;
  int instances = 0;
  int passed = 0;
  int inconclusive = 0;  // failures where no witness was found
  std::vector<std::string> failures;
  bool ok() const { return instances > 0 && passed == instances; }
};

struct Section8Report {
  int characteristic = 0;
  int d_search = 0;
  std::vector<Section8Check> checks;
  bool ok() const {
    for (const auto& c : checks)
      if (!c.ok()) return false;
    return true;
  }
  const Section8Check* find(const std::string& id) const;
};

struct Section8Options {
  std::uint64_t seed = 0;
  int samples = 8;  // sampled coefficient tuples in characteristic 2
};

// The generator-level identities of the anticommuting Laurent algebra.
// characteristic 0 means the rationals; others must be prime.
Section8Report section8_report(int characteristic, int d_search, const Section8Options& opt = {});

}  // namespace hoch

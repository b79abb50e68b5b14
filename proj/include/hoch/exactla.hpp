#pragma once

// Exact scalars over Q and F_p, and sparse linear algebra over them.

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <gmpxx.h>

namespace hoch {

class Scalar;

class Field {
 public:
  static Field rationals() { return Field(0); }
  // Throws ConfigError unless p is prime.
  static Field prime(std::uint32_t p);

  bool is_rational() const { return p_ == 0; }
  std::uint32_t characteristic() const { return p_; }

  Scalar zero() const;
  Scalar one() const;
  Scalar from_int(long long v) const;
  Scalar from_rational(const mpq_class& q) const;
  // Accepts "n", "-n", "n/d".
  Scalar parse(const std::string& text) const;

  std::string name() const;
  friend bool operator==(const Field& a, const Field& b) { return a.p_ == b.p_; }

 private:
  explicit Field(std::uint32_t p) : p_(p) {}
  std::uint32_t p_;
};

bool is_prime(std::uint64_t n);

// A field element. A default-constructed Scalar is an untyped zero which
// adopts the field of whatever it is combined with.
class Scalar {
 public:
  Scalar() = default;

  static Scalar mod(std::uint32_t p, long long v);
  static Scalar rational(mpq_class q);

  bool is_zero() const;
  bool is_one() const;
  bool typed() const { return p_ != kUntyped; }
  Field field() const;
  std::uint32_t modulus() const { return p_; }

  Scalar operator-() const;
  Scalar inverse() const;
  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar& operator*=(const Scalar& o);
  Scalar& operator/=(const Scalar& o) { return *this *= o.inverse(); }
  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }
  friend bool operator==(const Scalar& a, const Scalar& b);
  friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

  // Multiplication by an integer, without constructing a field element.
  Scalar scaled(long long k) const;

  // Residue in [0, p) for F_p; numerator/denominator for Q.
  std::uint64_t residue() const;
  const mpq_class& as_rational() const;

  std::string str() const;

 private:
  static constexpr std::uint32_t kUntyped = 0xffffffffu;
  void unify(const Scalar& o);

  std::uint32_t p_ = kUntyped;
  std::variant<std::uint64_t, mpq_class> v_{std::uint64_t{0}};
};

// Sorted by index, no stored zeros.
using SparseVector = std::vector<std::pair<std::size_t, Scalar>>;

SparseVector make_vector(std::map<std::size_t, Scalar> entries);
Scalar dot(const SparseVector& a, const SparseVector& b);
void axpy(SparseVector& y, const Scalar& a, const SparseVector& x);  // y += a x
SparseVector scaled(const SparseVector& v, const Scalar& a);
bool is_zero(const SparseVector& v);

class SparseMatrix {
 public:
  SparseMatrix() = default;
  SparseMatrix(std::size_t rows, std::size_t cols, std::optional<Field> field = std::nullopt);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  // Entries may be set in any order; zero entries are dropped.
  void set(std::size_t r, std::size_t c, const Scalar& v);
  void add(std::size_t r, std::size_t c, const Scalar& v);
  Scalar at(std::size_t r, std::size_t c) const;
  void set_row(std::size_t r, SparseVector v);
  const SparseVector& row(std::size_t r) const { return data_[r]; }

  static SparseMatrix from_rows(std::vector<SparseVector> rows, std::size_t cols,
                                std::optional<Field> field = std::nullopt);
  static SparseMatrix from_columns(const std::vector<SparseVector>& cols, std::size_t rows,
                                   std::optional<Field> field = std::nullopt);

  SparseMatrix transposed() const;
  SparseVector apply(const SparseVector& x) const;
  std::size_t nnz() const;
  // The declared field, else the field of the entries. Throws ConfigError on
  // mixed fields.
  std::optional<Field> field() const;

  friend bool operator==(const SparseMatrix& a, const SparseMatrix& b);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::optional<Field> field_;
  std::vector<SparseVector> data_;
};

struct RrefResult {
  std::size_t rank = 0;
  std::vector<std::size_t> pivots;
  SparseMatrix reduced;
};

RrefResult rref(const SparseMatrix& m);
std::size_t rank(const SparseMatrix& m);
std::vector<SparseVector> kernel_basis(const SparseMatrix& m);
// Particular solution with free variables zero, or nullopt if inconsistent.
std::optional<SparseVector> solve(const SparseMatrix& m, const SparseVector& b);
// A functional y with y^T m = 0 and y.b = 1, certifying that m x = b has no
// solution. Returns nullopt exactly when the system is consistent.
std::optional<SparseVector> inconsistency_certificate(const SparseMatrix& m,
                                                      const SparseVector& b);
std::vector<SparseVector> complement_basis(const std::vector<SparseVector>& subspace,
                                           std::size_t ambient_dim,
                                           Field field = Field::rationals());

// Incremental reduced echelon basis of a subspace. Rows are kept with a
// leading 1 and no other row has an entry in a pivot column.
class EchelonBasis {
 public:
  explicit EchelonBasis(std::size_t dim = 0) : dim_(dim) {}

  std::size_t dim() const { return dim_; }
  std::size_t size() const { return rows_.size(); }
  // Returns true if v was independent of the current span.
  bool insert(const SparseVector& v);
  SparseVector reduce(SparseVector v) const;
  bool contains(const SparseVector& v) const { return is_zero(reduce(v)); }
  // Rows sorted by pivot column.
  std::vector<SparseVector> rows() const;
  std::vector<std::size_t> pivots() const;

 private:
  void eliminate_into_others(std::size_t pivot);

  std::size_t dim_;
  std::map<std::size_t, SparseVector> rows_;  // pivot column -> row
};

}  // namespace hoch

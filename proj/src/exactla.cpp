#include "hoch/exactla.hpp"

#include <algorithm>
#include <cstdlib>

#include "hoch/errors.hpp"

namespace hoch {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

Field Field::prime(std::uint32_t p) {
  if (!is_prime(p)) throw ConfigError("field characteristic " + std::to_string(p) + " is not prime");
  if (p >= (1u << 31)) throw ConfigError("field characteristic too large");
  return Field(p);
}

Scalar Field::zero() const { return from_int(0); }
Scalar Field::one() const { return from_int(1); }

Scalar Field::from_int(long long v) const {
  if (p_ == 0) return Scalar::rational(mpq_class(static_cast<long>(v)));
  return Scalar::mod(p_, v);
}

Scalar Field::from_rational(const mpq_class& q) const {
  if (p_ == 0) return Scalar::rational(q);
  mpz_class num = q.get_num() % p_;
  mpz_class den = q.get_den() % p_;
  if (den == 0) throw DomainError("denominator divisible by the characteristic");
  return Scalar::mod(p_, num.get_si()) / Scalar::mod(p_, den.get_si());
}

Scalar Field::parse(const std::string& text) const {
  mpq_class q;
  if (q.set_str(text, 10) != 0) throw ConfigError("malformed scalar '" + text + "'");
  q.canonicalize();
  return from_rational(q);
}

std::string Field::name() const { return p_ == 0 ? "Q" : "F" + std::to_string(p_); }

Scalar Scalar::mod(std::uint32_t p, long long v) {
  Scalar s;
  s.p_ = p;
  long long r = v % static_cast<long long>(p);
  if (r < 0) r += p;
  s.v_ = static_cast<std::uint64_t>(r);
  return s;
}

Scalar Scalar::rational(mpq_class q) {
  Scalar s;
  s.p_ = 0;
  q.canonicalize();
  s.v_ = std::move(q);
  return s;
}

Field Scalar::field() const {
  if (p_ == kUntyped) throw ConfigError("untyped scalar has no field");
  return p_ == 0 ? Field::rationals() : Field::prime(p_);
}

bool Scalar::is_zero() const {
  if (p_ == kUntyped) return true;
  if (p_ == 0) return std::get<mpq_class>(v_) == 0;
  return std::get<std::uint64_t>(v_) == 0;
}

bool Scalar::is_one() const {
  if (p_ == kUntyped) return false;
  if (p_ == 0) return std::get<mpq_class>(v_) == 1;
  return std::get<std::uint64_t>(v_) == 1;
}

void Scalar::unify(const Scalar& o) {
  if (o.p_ == kUntyped || o.p_ == p_) return;
  if (p_ == kUntyped) {
    p_ = o.p_;
    if (p_ == 0) v_ = mpq_class(0);
    else v_ = std::uint64_t{0};
    return;
  }
  throw ConfigError("mixed-field arithmetic");
}

Scalar Scalar::operator-() const {
  Scalar r = *this;
  if (p_ == kUntyped) return r;
  if (p_ == 0) {
    std::get<mpq_class>(r.v_) = -std::get<mpq_class>(v_);
  } else {
    auto x = std::get<std::uint64_t>(v_);
    r.v_ = x == 0 ? 0 : p_ - x;
  }
  return r;
}

Scalar Scalar::inverse() const {
  if (is_zero()) throw DomainError("division by zero");
  if (p_ == 0) return rational(1 / std::get<mpq_class>(v_));
  // Fermat inverse.
  std::uint64_t base = std::get<std::uint64_t>(v_), e = p_ - 2, acc = 1;
  while (e) {
    if (e & 1) acc = acc * base % p_;
    base = base * base % p_;
    e >>= 1;
  }
  Scalar r;
  r.p_ = p_;
  r.v_ = acc;
  return r;
}

Scalar& Scalar::operator+=(const Scalar& o) {
  unify(o);
  if (o.p_ == kUntyped) return *this;
  if (p_ == 0) {
    std::get<mpq_class>(v_) += std::get<mpq_class>(o.v_);
  } else {
    auto s = std::get<std::uint64_t>(v_) + std::get<std::uint64_t>(o.v_);
    v_ = s >= p_ ? s - p_ : s;
  }
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) { return *this += -o; }

Scalar& Scalar::operator*=(const Scalar& o) {
  if (o.p_ == kUntyped) return *this = Scalar();
  unify(o);
  if (p_ == 0) {
    std::get<mpq_class>(v_) *= std::get<mpq_class>(o.v_);
  } else {
    v_ = std::get<std::uint64_t>(v_) * std::get<std::uint64_t>(o.v_) % p_;
  }
  return *this;
}

Scalar Scalar::scaled(long long k) const {
  if (p_ == kUntyped) return *this;
  if (p_ == 0) return rational(std::get<mpq_class>(v_) * mpq_class(static_cast<long>(k)));
  return *this * Scalar::mod(p_, k);
}

bool operator==(const Scalar& a, const Scalar& b) {
  if (a.p_ == Scalar::kUntyped || b.p_ == Scalar::kUntyped) return a.is_zero() && b.is_zero();
  if (a.p_ != b.p_) throw ConfigError("comparing scalars of different fields");
  return a.v_ == b.v_;
}

std::uint64_t Scalar::residue() const {
  if (p_ == kUntyped) return 0;
  if (p_ == 0) throw DomainError("rational scalar has no residue");
  return std::get<std::uint64_t>(v_);
}

const mpq_class& Scalar::as_rational() const {
  static const mpq_class zero(0);
  if (p_ == kUntyped) return zero;
  if (p_ != 0) throw DomainError("finite-field scalar is not rational");
  return std::get<mpq_class>(v_);
}

std::string Scalar::str() const {
  if (p_ == kUntyped) return "0";
  if (p_ == 0) return std::get<mpq_class>(v_).get_str();
  return std::to_string(std::get<std::uint64_t>(v_));
}

// ---------------------------------------------------------------------------

SparseVector make_vector(std::map<std::size_t, Scalar> entries) {
  SparseVector v;
  v.reserve(entries.size());
  for (auto& [i, s] : entries)
    if (!s.is_zero()) v.emplace_back(i, std::move(s));
  return v;
}

Scalar dot(const SparseVector& a, const SparseVector& b) {
  Scalar acc;
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (i->first < j->first) ++i;
    else if (j->first < i->first) ++j;
    else {
      acc += i->second * j->second;
      ++i;
      ++j;
    }
  }
  return acc;
}

void axpy(SparseVector& y, const Scalar& a, const SparseVector& x) {
  if (a.is_zero() || x.empty()) return;
  SparseVector out;
  out.reserve(y.size() + x.size());
  auto i = y.begin();
  auto j = x.begin();
  while (i != y.end() || j != x.end()) {
    if (j == x.end() || (i != y.end() && i->first < j->first)) {
      out.push_back(std::move(*i));
      ++i;
    } else if (i == y.end() || j->first < i->first) {
      out.emplace_back(j->first, a * j->second);
      ++j;
    } else {
      Scalar s = i->second + a * j->second;
      if (!s.is_zero()) out.emplace_back(i->first, std::move(s));
      ++i;
      ++j;
    }
  }
  y = std::move(out);
}

SparseVector scaled(const SparseVector& v, const Scalar& a) {
  SparseVector out;
  if (a.is_zero()) return out;
  out.reserve(v.size());
  for (const auto& [i, s] : v) out.emplace_back(i, s * a);
  return out;
}

bool is_zero(const SparseVector& v) { return v.empty(); }

// ---------------------------------------------------------------------------

SparseMatrix::SparseMatrix(std::size_t rows, std::size_t cols, std::optional<Field> field)
    : rows_(rows), cols_(cols), field_(field), data_(rows) {}

void SparseMatrix::set(std::size_t r, std::size_t c, const Scalar& v) {
  if (r >= rows_ || c >= cols_) throw ConfigError("matrix index out of range");
  auto& row = data_[r];
  auto it = std::lower_bound(row.begin(), row.end(), c,
                             [](const auto& e, std::size_t k) { return e.first < k; });
  if (it != row.end() && it->first == c) {
    if (v.is_zero()) row.erase(it);
    else it->second = v;
  } else if (!v.is_zero()) {
    row.insert(it, {c, v});
  }
}

void SparseMatrix::add(std::size_t r, std::size_t c, const Scalar& v) { set(r, c, at(r, c) + v); }

Scalar SparseMatrix::at(std::size_t r, std::size_t c) const {
  if (r >= rows_ || c >= cols_) throw ConfigError("matrix index out of range");
  const auto& row = data_[r];
  auto it = std::lower_bound(row.begin(), row.end(), c,
                             [](const auto& e, std::size_t k) { return e.first < k; });
  if (it != row.end() && it->first == c) return it->second;
  return Scalar();
}

void SparseMatrix::set_row(std::size_t r, SparseVector v) {
  if (r >= rows_) throw ConfigError("matrix row out of range");
  if (!v.empty() && v.back().first >= cols_) throw ConfigError("matrix column out of range");
  data_[r] = std::move(v);
}

SparseMatrix SparseMatrix::from_rows(std::vector<SparseVector> rows, std::size_t cols,
                                     std::optional<Field> field) {
  SparseMatrix m(rows.size(), cols, field);
  for (std::size_t i = 0; i < rows.size(); ++i) m.set_row(i, std::move(rows[i]));
  return m;
}

SparseMatrix SparseMatrix::from_columns(const std::vector<SparseVector>& cols, std::size_t rows,
                                        std::optional<Field> field) {
  SparseMatrix m(rows, cols.size(), field);
  for (std::size_t j = 0; j < cols.size(); ++j)
    for (const auto& [i, s] : cols[j]) {
      if (i >= rows) throw ConfigError("matrix row out of range");
      m.data_[i].emplace_back(j, s);
    }
  return m;
}

SparseMatrix SparseMatrix::transposed() const {
  SparseMatrix t(cols_, rows_, field_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (const auto& [j, s] : data_[i]) t.data_[j].emplace_back(i, s);
  return t;
}

SparseVector SparseMatrix::apply(const SparseVector& x) const {
  SparseVector out;
  for (std::size_t i = 0; i < rows_; ++i) {
    Scalar s = dot(data_[i], x);
    if (!s.is_zero()) out.emplace_back(i, std::move(s));
  }
  return out;
}

std::size_t SparseMatrix::nnz() const {
  std::size_t n = 0;
  for (const auto& r : data_) n += r.size();
  return n;
}

std::optional<Field> SparseMatrix::field() const {
  std::optional<std::uint32_t> p;
  for (const auto& r : data_)
    for (const auto& [j, s] : r) {
      if (!s.typed()) continue;
      if (p && *p != s.modulus()) throw ConfigError("matrix has entries over different fields");
      if (field_ && field_->characteristic() != s.modulus())
        throw ConfigError("matrix entry over a different field than the matrix");
      p = s.modulus();
    }
  if (!p) return field_;
  return *p == 0 ? Field::rationals() : Field::prime(*p);
}

bool operator==(const SparseMatrix& a, const SparseMatrix& b) {
  return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
}

// ---------------------------------------------------------------------------

SparseVector EchelonBasis::reduce(SparseVector v) const {
  if (rows_.empty()) return v;
  // Rows are fully reduced, so the coefficient needed at each pivot is the
  // original entry of v there.
  std::vector<std::pair<std::size_t, Scalar>> hits;
  for (const auto& [c, s] : v)
    if (rows_.count(c)) hits.emplace_back(c, s);
  for (const auto& [c, s] : hits) axpy(v, -s, rows_.at(c));
  return v;
}

bool EchelonBasis::insert(const SparseVector& v) {
  if (!v.empty() && v.back().first >= dim_) throw ConfigError("vector index out of range");
  SparseVector r = reduce(v);
  if (r.empty()) return false;
  Scalar lead_inv = r.front().second.inverse();
  if (!lead_inv.is_one()) r = scaled(r, lead_inv);
  std::size_t pivot = r.front().first;
  rows_.emplace(pivot, std::move(r));
  eliminate_into_others(pivot);
  return true;
}

void EchelonBasis::eliminate_into_others(std::size_t pivot) {
  const SparseVector& prow = rows_.at(pivot);
  for (auto& [c, row] : rows_) {
    if (c == pivot || c > pivot) continue;  // rows with larger pivots have no entry at `pivot`
    auto it = std::lower_bound(row.begin(), row.end(), pivot,
                               [](const auto& e, std::size_t k) { return e.first < k; });
    if (it == row.end() || it->first != pivot) continue;
    Scalar coef = it->second;
    axpy(row, -coef, prow);
  }
}

std::vector<SparseVector> EchelonBasis::rows() const {
  std::vector<SparseVector> out;
  out.reserve(rows_.size());
  for (const auto& [c, r] : rows_) out.push_back(r);
  return out;
}

std::vector<std::size_t> EchelonBasis::pivots() const {
  std::vector<std::size_t> out;
  for (const auto& [c, r] : rows_) out.push_back(c);
  return out;
}

RrefResult rref(const SparseMatrix& m) {
  m.field();  // mixed-field check
  EchelonBasis basis(m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i) basis.insert(m.row(i));
  RrefResult res;
  res.rank = basis.size();
  res.pivots = basis.pivots();
  std::vector<SparseVector> rows = basis.rows();
  rows.resize(m.rows());
  res.reduced = SparseMatrix::from_rows(std::move(rows), m.cols(), m.field());
  return res;
}

std::size_t rank(const SparseMatrix& m) { return rref(m).rank; }

std::vector<SparseVector> kernel_basis(const SparseMatrix& m) {
  RrefResult r = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto c : r.pivots) is_pivot[c] = true;
  // column -> (pivot, entry) for non-pivot columns of the reduced rows
  std::vector<std::vector<std::pair<std::size_t, Scalar>>> by_col(m.cols());
  for (std::size_t i = 0; i < r.rank; ++i) {
    std::size_t pivot = r.pivots[i];
    for (const auto& [c, s] : r.reduced.row(i))
      if (c != pivot) by_col[c].emplace_back(pivot, s);
  }
  std::vector<SparseVector> out;
  Scalar one = m.field().value_or(Field::rationals()).one();
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    std::map<std::size_t, Scalar> v;
    for (const auto& [c, s] : by_col[f]) v[c] = -s;
    v[f] = one;
    out.push_back(make_vector(std::move(v)));
  }
  return out;
}

std::optional<SparseVector> solve(const SparseMatrix& m, const SparseVector& b) {
  if (!b.empty() && b.back().first >= m.rows())
    throw ConfigError("right-hand side dimension mismatch");
  std::size_t n = m.cols();
  EchelonBasis basis(n + 1);
  std::size_t bi = 0;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    SparseVector row = m.row(i);
    while (bi < b.size() && b[bi].first < i) ++bi;
    if (bi < b.size() && b[bi].first == i) row.emplace_back(n, b[bi].second);
    basis.insert(row);
  }
  SparseVector x;
  for (const auto& row : basis.rows()) {
    std::size_t pivot = row.front().first;
    if (pivot == n) return std::nullopt;
    if (row.back().first == n) x.emplace_back(pivot, row.back().second);
  }
  return x;
}

std::optional<SparseVector> inconsistency_certificate(const SparseMatrix& m,
                                                      const SparseVector& b) {
  // y^T m = 0 and y.b = 1, as a linear system in y.
  std::vector<SparseVector> rows;
  SparseMatrix t = m.transposed();
  for (std::size_t j = 0; j < t.rows(); ++j) rows.push_back(t.row(j));
  rows.push_back(b);
  SparseMatrix sys = SparseMatrix::from_rows(std::move(rows), m.rows(), m.field());
  Scalar one;
  for (const auto& [i, s] : b) one = s.field().one();
  if (!one.typed()) return std::nullopt;  // b = 0 is always reachable
  SparseVector rhs{{sys.rows() - 1, one}};
  return solve(sys, rhs);
}

std::vector<SparseVector> complement_basis(const std::vector<SparseVector>& subspace,
                                           std::size_t ambient_dim, Field field) {
  EchelonBasis basis(ambient_dim);
  Scalar one = field.one();
  for (const auto& v : subspace) basis.insert(v);
  std::vector<bool> is_pivot(ambient_dim, false);
  for (auto c : basis.pivots()) is_pivot[c] = true;
  std::vector<SparseVector> out;
  for (std::size_t j = 0; j < ambient_dim; ++j)
    if (!is_pivot[j]) out.push_back({{j, one}});
  return out;
}

}  // namespace hoch

#include "hoch/cohomology.hpp"

#include <climits>

#include "hoch/errors.hpp"
#include "hoch/kernels.hpp"

namespace hoch {

namespace {

SparseVector column_of(const CochainSpace& tgt, const Cochain& c) { return tgt.coordinates(c); }

}  // namespace

SparseMatrix differential_matrix(const CochainSpace& src, const CochainSpace& tgt) {
  const std::size_t n = src.dim();
  std::vector<SparseVector> cols(n);
  m2_of(src.algebra());  // fill the cache outside the parallel region
#pragma omp parallel for schedule(dynamic, 4) if (n > 16)
  for (std::size_t j = 0; j < n; ++j) cols[j] = column_of(tgt, hoch_d(src.basis_cochain(j)));
  return SparseMatrix::from_columns(cols, tgt.dim(), src.algebra()->field());
}

namespace reference {

SparseMatrix differential_matrix_serial(const CochainSpace& src, const CochainSpace& tgt) {
  std::vector<SparseVector> cols(src.dim());
  for (std::size_t j = 0; j < src.dim(); ++j)
    cols[j] = column_of(tgt, hoch_d_direct(src.basis_cochain(j)));
  return SparseMatrix::from_columns(cols, tgt.dim(), src.algebra()->field());
}

}  // namespace reference

std::pair<int, int> q_support(const GradedAlgebra& a, int p) {
  const int lo_s = a.min_degree() + 1, hi_s = a.max_degree() + 1;
  // d = out - sum(in), q = 1 - p - d
  const int dmin = lo_s - p * hi_s, dmax = hi_s - p * lo_s;
  return {1 - p - dmax, 1 - p - dmin};
}

Decomposer::Decomposer(std::size_t ambient_dim, const std::vector<SparseVector>& generators)
    : dim_(ambient_dim), n_(generators.size()), ech_(ambient_dim + generators.size()) {
  for (std::size_t i = 0; i < n_; ++i) {
    SparseVector v = generators[i];
    if (v.empty()) throw DomainError("decomposer generator is zero");
    Scalar one = v.front().second.field().one();
    v.emplace_back(dim_ + i, one);
    ech_.insert(v);
  }
  // A dependent generator leaves a row whose pivot is in the tag columns.
  for (std::size_t c : ech_.pivots())
    if (c >= dim_) throw DomainError("decomposer generators are dependent");
}

std::optional<SparseVector> Decomposer::coefficients(const SparseVector& v) const {
  SparseVector r = ech_.reduce(v);
  SparseVector out;
  for (const auto& [i, s] : r) {
    if (i < dim_) return std::nullopt;
    out.emplace_back(i - dim_, -s);
  }
  return out;
}

std::string to_string(CupVerdict v) {
  switch (v) {
    case CupVerdict::Bijective: return "bijective";
    case CupVerdict::InjectiveOnly: return "injective-only";
    case CupVerdict::SurjectiveOnly: return "surjective-only";
    case CupVerdict::Neither: return "neither";
  }
  return "neither";
}

Cohomology::Cohomology(AlgebraPtr a, Complex kind) : alg_(std::move(a)), kind_(kind) {
  if (kind_ == Complex::Relative && !alg_->has_vertices())
    throw ConfigError("relative cohomology needs vertex idempotents");
  auto rep = validate_algebra(*alg_);
  if (!rep.ok()) throw ValidationError("cohomology of an invalid algebra");
}

const CochainSpace& Cohomology::cochains(int p, int q, Complex kind) {
  std::lock_guard<std::recursive_mutex> lock(mu_);
  auto key = std::make_tuple(p, q, kind);
  auto it = spaces_.find(key);
  if (it == spaces_.end())
    it = spaces_.emplace(key, std::make_shared<CochainSpace>(alg_, std::max(p, 0), q, kind)).first;
  return *it->second;
}

const SparseMatrix& Cohomology::differential(int p, int q, Complex kind) {
  std::lock_guard<std::recursive_mutex> lock(mu_);
  auto key = std::make_tuple(p, q, kind);
  auto it = diffs_.find(key);
  if (it != diffs_.end()) return it->second;
  SparseMatrix m;
  if (p < 0) {
    m = SparseMatrix(cochains(0, q, kind).dim(), 0, alg_->field());
  } else {
    m = differential_matrix(cochains(p, q, kind), cochains(p + 1, q, kind));
  }
  return diffs_.emplace(key, std::move(m)).first->second;
}

std::vector<SparseVector> Cohomology::image_basis(int p, int q, Complex kind) {
  // image of C^{p-1,q} -> C^{p,q}
  if (p == 0) return {};
  const SparseMatrix& d = differential(p - 1, q, kind);
  EchelonBasis e(d.rows());
  SparseMatrix t = d.transposed();
  for (std::size_t j = 0; j < t.rows(); ++j) e.insert(t.row(j));
  return e.rows();
}

const HHSpace& Cohomology::space(int p, int q) {
  std::lock_guard<std::recursive_mutex> lock(mu_);
  auto key = std::make_pair(p, q);
  auto it = hh_.find(key);
  if (it != hh_.end()) return *it->second;
  auto h = std::make_unique<HHSpace>();
  h->p = p;
  h->q = q;
  h->kind = kind_;
  cochains(p, q, kind_);
  h->cochains = spaces_.at(std::make_tuple(p, q, kind_));
  const std::size_t n = h->cochains->dim();
  h->cocycles = kernel_basis(differential(p, q, kind_));
  h->coboundaries = image_basis(p, q, kind_);
  EchelonBasis e(n);
  for (const auto& b : h->coboundaries) e.insert(b);
  for (const auto& z : h->cocycles)
    if (e.insert(z)) h->reps.push_back(z);
  h->dim = h->reps.size();
  if (h->cocycles.size() != h->coboundaries.size() + h->dim)
    throw DomainError("coboundaries are not contained in the cocycles");
  for (const auto& r : h->reps) h->hh_basis.push_back(h->cochains->from_coordinates(r));
  std::vector<SparseVector> gens = h->reps;
  gens.insert(gens.end(), h->coboundaries.begin(), h->coboundaries.end());
  hh_dec_[key] = std::make_unique<Decomposer>(n, gens);
  return *hh_.emplace(key, std::move(h)).first->second;
}

const Cohomology::FullData& Cohomology::full_data(int p, int q) {
  std::lock_guard<std::recursive_mutex> lock(mu_);
  auto key = std::make_pair(p, q);
  auto it = full_.find(key);
  if (it != full_.end()) return it->second;
  const HHSpace& h = space(p, q);
  const CochainSpace& full = cochains(p, q, Complex::Full);
  std::vector<SparseVector> gens;
  for (const auto& c : h.hh_basis) gens.push_back(full.coordinates(c));
  for (auto& b : image_basis(p, q, Complex::Full)) gens.push_back(std::move(b));
  FullData fd;
  fd.nreps = h.dim;
  fd.dec = std::make_unique<Decomposer>(full.dim(), gens);
  return full_.emplace(key, std::move(fd)).first->second;
}

CohomClass Cohomology::class_of(const Cochain& z) {
  if (z.algebra() != alg_) throw ConfigError("cochain over a different algebra");
  Cochain dz = hoch_d(z);
  if (!dz.is_zero())
    throw DomainError("not a cocycle: differential has " + std::to_string(dz.size()) + " nonzero tuples");
  auto [p, q] = z.bidegree();
  CohomClass c;
  c.p = p;
  c.q = q;
  c.representative = z;
  const HHSpace& h = space(p, q);
  std::optional<SparseVector> coef;
  if (auto own = h.cochains->try_coordinates(z)) {
    std::lock_guard<std::recursive_mutex> lock(mu_);
    coef = hh_dec_.at({p, q})->coefficients(*own);
  } else {
    const FullData& fd = full_data(p, q);
    coef = fd.dec->coefficients(cochains(p, q, Complex::Full).coordinates(z));
  }
  if (!coef) throw DomainError("cocycle outside the computed span");
  for (const auto& [i, s] : *coef)
    if (i < h.dim) c.coordinates.emplace_back(i, s);
  return c;
}

Cochain Cohomology::representative(int p, int q, const SparseVector& coordinates) {
  const HHSpace& h = space(p, q);
  Cochain r = zero_cochain(alg_, p, q);
  for (const auto& [i, s] : coordinates) {
    if (i >= h.dim) throw DomainError("class coordinate out of range");
    r += s * h.hh_basis[i];
  }
  return r;
}

CohomClass Cohomology::make_class(int p, int q, const SparseVector& coordinates) {
  CohomClass c;
  c.p = p;
  c.q = q;
  c.representative = representative(p, q, coordinates);
  for (const auto& e : coordinates)
    if (!e.second.is_zero()) c.coordinates.push_back(e);
  return c;
}

std::optional<Cochain> Cohomology::coboundary_witness(const Cochain& z) {
  if (!is_cocycle(z)) throw DomainError("not a cocycle");
  auto [p, q] = z.bidegree();
  if (z.is_zero()) return zero_cochain(alg_, p - 1, q);
  if (p == 0) return std::nullopt;
  Complex kind = cochains(p, q, kind_).try_coordinates(z) ? kind_ : Complex::Full;
  const SparseMatrix& d = differential(p - 1, q, kind);
  auto x = solve(d, cochains(p, q, kind).coordinates(z));
  if (!x) return std::nullopt;
  return cochains(p - 1, q, kind).from_coordinates(*x);
}

std::optional<CoboundaryCertificate> Cohomology::non_coboundary_certificate(const Cochain& z) {
  if (!is_cocycle(z)) throw DomainError("not a cocycle");
  auto [p, q] = z.bidegree();
  CoboundaryCertificate cert;
  cert.p = p;
  cert.q = q;
  cert.kind = cochains(p, q, kind_).try_coordinates(z) ? kind_ : Complex::Full;
  SparseVector b = cochains(p, q, cert.kind).coordinates(z);
  if (p == 0) {
    if (b.empty()) return std::nullopt;
    cert.functional = {{b.front().first, b.front().second.inverse()}};
    return cert;
  }
  auto y = inconsistency_certificate(differential(p - 1, q, cert.kind), b);
  if (!y) return std::nullopt;
  cert.functional = std::move(*y);
  return cert;
}

bool Cohomology::check_certificate(const CoboundaryCertificate& c, const Cochain& z) {
  if (z.bidegree() != std::make_pair(c.p, c.q)) return false;
  const CochainSpace& tgt = cochains(c.p, c.q, c.kind);
  auto zc = tgt.try_coordinates(z);
  if (!zc || dot(c.functional, *zc).is_zero()) return false;
  if (c.p == 0) return true;
  const CochainSpace& src = cochains(c.p - 1, c.q, c.kind);
  for (std::size_t j = 0; j < src.dim(); ++j)
    if (!dot(c.functional, tgt.coordinates(hoch_d(src.basis_cochain(j)))).is_zero()) return false;
  return true;
}

SparseMatrix Cohomology::induced_bracket(const CohomClass& z, int p, int q) {
  const HHSpace& src = space(p, q);
  const int tp = p + z.p - 1, tq = q + z.q;
  const std::size_t tdim = tp >= 0 ? space(tp, tq).dim : 0;
  SparseMatrix m(tdim, src.dim, alg_->field());
  for (std::size_t j = 0; j < src.dim; ++j) {
    Cochain b = bracket(z.representative, src.hh_basis[j]);
    if (tdim == 0) continue;
    for (const auto& [i, s] : class_of(b).coordinates) m.set(i, j, s);
  }
  return m;
}

SparseMatrix Cohomology::induced_cup(const CohomClass& z, int p, int q) {
  const HHSpace& src = space(p, q);
  const HHSpace& tgt = space(p + z.p, q + z.q);
  SparseMatrix m(tgt.dim, src.dim, alg_->field());
  for (std::size_t j = 0; j < src.dim; ++j)
    for (const auto& [i, s] : class_of(cup(z.representative, src.hh_basis[j])).coordinates) m.set(i, j, s);
  return m;
}

CohomClass Cohomology::induced_sq(const CohomClass& z) { return class_of(sq(z.representative)); }

CohomClass Cohomology::bracket_class(const CohomClass& x, const CohomClass& y) {
  return class_of(bracket(x.representative, y.representative));
}

CohomClass Cohomology::cup_class(const CohomClass& x, const CohomClass& y) {
  return class_of(cup(x.representative, y.representative));
}

CupWindowReport Cohomology::cup_bijectivity_window(const CohomClass& z, std::pair<int, int> p_range,
                                                   std::pair<int, int> q_range) {
  if (z.p != 3 || z.q != -1) throw DomainError("cup window needs a class of bidegree (3,-1)");
  CupWindowReport rep;
  for (int p = p_range.first; p <= p_range.second; ++p)
    for (int q = q_range.first; q <= q_range.second; ++q) {
      CupWindowCell cell;
      cell.p = p;
      cell.q = q;
      SparseMatrix m = induced_cup(z, p, q);
      cell.source_dim = m.cols();
      cell.target_dim = m.rows();
      cell.rank = rank(m);
      const bool inj = cell.rank == cell.source_dim, sur = cell.rank == cell.target_dim;
      cell.verdict = inj && sur ? CupVerdict::Bijective
                     : inj      ? CupVerdict::InjectiveOnly
                     : sur      ? CupVerdict::SurjectiveOnly
                                : CupVerdict::Neither;
      rep.cells.push_back(cell);
    }
  return rep;
}

}  // namespace hoch

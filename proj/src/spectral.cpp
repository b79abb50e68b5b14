#include "hoch/spectral.hpp"

#include <iomanip>
#include <sstream>
#include <stdexcept>

#include "hoch/errors.hpp"

namespace hoch {

namespace {

std::string cell_name(int s, int t) { return "(" + std::to_string(s) + "," + std::to_string(t) + ")"; }

int sign_of(int e) { return e % 2 == 0 ? 1 : -1; }

PageCell make_cell(int r, int s, int t, CellKind kind, std::size_t dim, std::string note) {
  PageCell c;
  c.r = r;
  c.s = s;
  c.t = t;
  c.kind = kind;
  c.dim = dim;
  c.note = std::move(note);
  return c;
}

std::string hh_name(int p, int q) { return "HH^{" + std::to_string(p) + "," + std::to_string(q) + "}"; }

SparseMatrix product(const SparseMatrix& a, const SparseMatrix& b) {
  std::vector<SparseVector> cols;
  SparseMatrix bt = b.transposed();
  for (std::size_t j = 0; j < b.cols(); ++j) cols.push_back(a.apply(bt.row(j)));
  return SparseMatrix::from_columns(cols, a.rows(), a.field() ? a.field() : b.field());
}

std::size_t span_rank(const std::vector<SparseVector>& vs, std::size_t dim) {
  EchelonBasis e(dim);
  for (const auto& v : vs) e.insert(v);
  return e.rows().size();
}

}  // namespace

std::string to_string(CellKind k) {
  switch (k) {
    case CellKind::VectorSpace: return "vector-space";
    case CellKind::CocycleSpace: return "cocycle-space";
    case CellKind::Predicate: return "predicate";
    case CellKind::Undefined: return "undefined";
  }
  return "undefined";
}

SparseVector D2Map::apply(const SparseVector& x) const {
  SparseVector out = linear.apply(x);
  if (!quadratic) return out;
  std::vector<Scalar> dense(source_dim());
  for (const auto& [i, s] : x) dense.at(i) = s;
  for (std::size_t i = 0; i < dense.size(); ++i) {
    if (dense[i].is_zero()) continue;
    axpy(out, dense[i] * dense[i], square[i]);
    for (std::size_t j = i + 1; j < dense.size(); ++j)
      if (!dense[j].is_zero()) axpy(out, dense[i] * dense[j], cross[i][j - i - 1]);
  }
  return out;
}

SparseVector D2Map::additivity_defect(const SparseVector& x, const SparseVector& y) const {
  SparseVector sum = x;
  if (!y.empty()) axpy(sum, y.front().second.field().one(), y);
  SparseVector d = apply(sum);
  const Scalar minus = linear.field() ? linear.field()->from_int(-1) : Scalar();
  axpy(d, minus, apply(x));
  axpy(d, minus, apply(y));
  return d;
}

SpectralSequence::SpectralSequence(Cohomology& h) : h_(h) {}

SpectralSequence::SpectralSequence(Cohomology& h, AInfStructure phi) : h_(h), phi_(std::move(phi)) {
  if (phi_->algebra() != h.algebra()) throw ConfigError("structure over a different algebra");
  if (phi_->k() < 5) throw DomainError("d2 and E3 need an A_5 structure");
  if (!is_valid(*phi_).ok()) throw ValidationError("invalid A_k structure");
}

const AInfStructure& SpectralSequence::phi() const {
  if (!phi_) throw DomainError("this computation needs an A_5 structure");
  return *phi_;
}

const CohomClass& SpectralSequence::massey() {
  if (!massey_) massey_ = universal_massey(phi(), h_);
  return *massey_;
}

PageCell SpectralSequence::e1_term(int s, int t) {
  if (s < 0) return make_cell(1, s, t, CellKind::Undefined, 0, "s < 0");
  return make_cell(1, s, t, CellKind::VectorSpace, h_.cochains(s + 2, -t).dim(),
                   "C^{" + std::to_string(s + 2) + "," + std::to_string(-t) + "}");
}

SparseMatrix SpectralSequence::d1_matrix(int s, int t) {
  if (!(s >= 1 || (s == 0 && t > 0))) throw UndefinedCell("d1 is not defined at " + cell_name(s, t));
  const SparseMatrix& d = h_.differential(s + 2, -t);
  if (sign_of(t - s) == 1) return d;
  SparseMatrix m(d.rows(), d.cols(), h_.algebra()->field());
  for (std::size_t r = 0; r < d.rows(); ++r) m.set_row(r, scaled(d.row(r), h_.algebra()->field().from_int(-1)));
  return m;
}

PageCell SpectralSequence::e2_term(int s, int t) {
  if (s < 0 || (s <= 1 && t < s)) return make_cell(2, s, t, CellKind::Undefined, 0, "outside the defined region");
  if (s == 0 && t == 0)
    return make_cell(2, 0, 0, CellKind::Predicate, 0, "graded associative structures: m in C^{2,0} with m{m} = 0");
  if (s == 0)
    return make_cell(2, 0, t, CellKind::CocycleSpace, h_.space(2, -t).cocycles.size(),
                     "Z^{2," + std::to_string(-t) + "}");
  return make_cell(2, s, t, CellKind::VectorSpace, h_.space(s + 2, -t).dim, hh_name(s + 2, -t));
}

bool SpectralSequence::e2_00_contains(const Cochain& m) {
  if (m.bidegree() != std::make_pair(2, 0)) return false;
  return brace(m, {m}).is_zero();
}

std::vector<Cochain> SpectralSequence::cocycle_basis(int p, int q) {
  const HHSpace& h = h_.space(p, q);
  std::vector<Cochain> out;
  for (const auto& z : h.cocycles) out.push_back(h.cochains->from_coordinates(z));
  return out;
}

SparseMatrix SpectralSequence::bracket_matrix(const std::vector<Cochain>& source, int tp, int tq, int sign) {
  const Cochain& m3 = phi().m(3);
  const std::size_t rows = h_.space(tp, tq).dim;
  const Scalar c = h_.algebra()->field().from_int(sign);
  std::vector<SparseVector> cols;
  for (const auto& x : source) cols.push_back(scaled(h_.class_of(bracket(m3, x)).coordinates, c));
  return SparseMatrix::from_columns(cols, rows, h_.algebra()->field());
}

D2Map SpectralSequence::d2_map(int s, int t) {
  if (s == 1 && t == 1) throw UnsupportedError("d2 at (1,1) is not provided");
  D2Map d;
  d.s = s;
  d.t = t;
  if (s >= 2 || (s == 1 && t > 1)) {
    d.linear = bracket_matrix(h_.space(s + 2, -t).hh_basis, s + 4, -t - 1, sign_of(t - s));
    return d;
  }
  if (s == 0 && t > 1) {
    d.linear = bracket_matrix(cocycle_basis(2, -t), 4, -t - 1, sign_of(t));
    return d;
  }
  if (s == 0 && t == 1) {
    // x -> -x cup x - [{m3}, x] on Z^{2,-1}
    std::vector<Cochain> z = cocycle_basis(2, -1);
    d.quadratic = true;
    d.linear = bracket_matrix(z, 4, -2, -1);
    const Scalar minus = h_.algebra()->field().from_int(-1);
    d.cross.resize(z.size());
    for (std::size_t i = 0; i < z.size(); ++i) {
      d.square.push_back(scaled(h_.class_of(cup(z[i], z[i])).coordinates, minus));
      for (std::size_t j = i + 1; j < z.size(); ++j)
        d.cross[i].push_back(scaled(h_.class_of(cup(z[i], z[j]) + cup(z[j], z[i])).coordinates, minus));
    }
    return d;
  }
  throw UndefinedCell("d2 is not defined at " + cell_name(s, t));
}

std::vector<SparseVector> SpectralSequence::incoming_22() {
  D2Map d = d2_map(0, 1);
  const bool char2 = h_.algebra()->field().characteristic() == 2;
  std::vector<SparseVector> gens;
  SparseMatrix lt = d.linear.transposed();
  for (std::size_t j = 0; j < d.source_dim(); ++j) {
    SparseVector col = lt.row(j);
    if (char2) {
      axpy(col, h_.algebra()->field().one(), d.square[j]);
    } else {
      gens.push_back(d.square[j]);
    }
    gens.push_back(col);
    for (const auto& c : d.cross[j]) gens.push_back(c);
  }
  return gens;
}

PageCell SpectralSequence::e3_term(int s, int t) {
  phi();
  if (s < 0 || (s <= 1 && t < s)) return make_cell(3, s, t, CellKind::Undefined, 0, "outside the defined region");
  if (s >= 2 && s <= 3 && t < s) return make_cell(3, s, t, CellKind::Undefined, 0, "not defined on page 3");
  if (s == 0 && t == 0) return e2_term(0, 0);
  if (s == 1 && t == 1) return make_cell(3, 1, 1, CellKind::Undefined, 0, "fringed cell (1,1) is not provided");
  if (s == 1) {
    D2Map d = d2_map(1, t);
    return make_cell(3, s, t, CellKind::VectorSpace, d.source_dim() - rank(d.linear),
                     "ker [{m3},-] on " + hh_name(3, -t));
  }
  if (s == 0 && t > 1) {
    D2Map d = d2_map(0, t);
    return make_cell(3, s, t, CellKind::VectorSpace, d.source_dim() - rank(d.linear),
                     "ker [{m3},-] on Z^{2," + std::to_string(-t) + "}");
  }
  if (s == 0) {
    D2Map d = d2_map(0, 1);
    const bool char2 = h_.algebra()->field().characteristic() == 2;
    bool additive = true;
    for (std::size_t i = 0; i < d.source_dim(); ++i) {
      if (!char2 && !is_zero(d.square[i])) additive = false;
      for (const auto& c : d.cross[i])
        if (!is_zero(c)) additive = false;
    }
    if (!additive)
      return make_cell(3, 0, 1, CellKind::Predicate, 0, "zero set of x cup x + [{m3},x] on Z^{2,-1}; not additive");
    SparseMatrix m = d.linear;
    if (char2)
      for (std::size_t j = 0; j < d.source_dim(); ++j)
        for (const auto& [i, v] : d.square[j]) m.add(i, j, v);
    return make_cell(3, 0, 1, CellKind::VectorSpace, d.source_dim() - rank(m),
                     "ker of x cup x + [{m3},x] on Z^{2,-1}");
  }
  // s >= 2: homology of d2
  D2Map out = d2_map(s, t);
  const std::size_t dim = out.source_dim();
  std::size_t in_rank = 0;
  if (s == 2 && t == 2) {
    auto gens = incoming_22();
    for (const auto& g : gens)
      if (!is_zero(out.linear.apply(g))) throw std::logic_error("d2 does not square to zero at (2,2)");
    in_rank = span_rank(gens, dim);
  } else {
    D2Map in = d2_map(s - 2, t - 1);
    if (product(out.linear, in.linear).nnz() != 0)
      throw std::logic_error("d2 does not square to zero at " + cell_name(s, t));
    in_rank = rank(in.linear);
  }
  return make_cell(3, s, t, CellKind::VectorSpace, dim - rank(out.linear) - in_rank,
                   "homology of d2 at " + hh_name(s + 2, -t));
}

PageReport SpectralSequence::page(int r, std::pair<int, int> s_range, std::pair<int, int> t_range) {
  if (r < 1 || r > 3) throw UnsupportedError("pages beyond E3 are not computed");
  PageReport rep;
  rep.r = r;
  rep.s_range = s_range;
  rep.t_range = t_range;
  for (int s = s_range.first; s <= s_range.second; ++s)
    for (int t = t_range.first; t <= t_range.second; ++t) {
      if (r == 1) {
        rep.cells.push_back(e1_term(s, t));
        if (s >= 1 || (s == 0 && t > 0)) rep.differentials.push_back({s, t, d1_matrix(s, t)});
      } else if (r == 2) {
        rep.cells.push_back(e2_term(s, t));
        if (phi_ && (s >= 2 || (s == 1 && t > 1) || (s == 0 && t > 1)))
          rep.differentials.push_back({s, t, d2_map(s, t).linear});
      } else {
        rep.cells.push_back(e3_term(s, t));
      }
    }
  return rep;
}

CollapseReport SpectralSequence::collapse_check(std::pair<int, int> s_range, std::pair<int, int> t_range) {
  CollapseReport rep;
  const CohomClass& z = massey();
  rep.sq_vanishes = h_.induced_sq(z).is_zero();
  rep.cup = h_.cup_bijectivity_window(z, {2, std::max(2, s_range.second + 2)}, {-t_range.second, -t_range.first});
  rep.cup_bijective = rep.cup.all_bijective();
  if (!rep.sq_vanishes || !rep.cup_bijective) return rep;
  rep.e3_checked = true;
  rep.e3_vanishes = true;
  for (int s = std::max(2, s_range.first); s <= s_range.second; ++s)
    for (int t = t_range.first; t <= t_range.second; ++t) {
      PageCell c = e3_term(s, t);
      if (c.kind == CellKind::Undefined) continue;
      if (c.dim != 0) rep.e3_vanishes = false;
      rep.e3_cells.push_back(c);
    }
  return rep;
}

std::string grid_summary(const PageReport& rep) {
  std::ostringstream out;
  out << "E" << rep.r << "  s=" << rep.s_range.first << ".." << rep.s_range.second << "\n";
  for (int t = rep.t_range.second; t >= rep.t_range.first; --t) {
    out << "t=" << std::setw(3) << t << " |";
    for (int s = rep.s_range.first; s <= rep.s_range.second; ++s) {
      std::string v = ".";
      for (const auto& c : rep.cells)
        if (c.s == s && c.t == t) {
          switch (c.kind) {
            case CellKind::VectorSpace: v = std::to_string(c.dim); break;
            case CellKind::CocycleSpace: v = "Z" + std::to_string(c.dim); break;
            case CellKind::Predicate: v = "*"; break;
            case CellKind::Undefined: v = "."; break;
          }
          if (s == t && c.kind != CellKind::Undefined) v += "'";
        }
      out << std::setw(5) << v;
    }
    out << "\n";
  }
  out << "'  fringed line s = t   *  predicate cell   .  undefined\n";
  return out.str();
}

}  // namespace hoch

// Writes the JSON fixtures. The A_k structures come from the extension
// solver; Massey classes with and without vanishing square are found by
// enumerating HH^{3,-1}.
//
//   make_fixtures <output directory>

#include <fstream>
#include <iostream>

#include "hoch/io.hpp"
#include "hoch/obstruction.hpp"

using namespace hoch;
using io::Json;

namespace {

void write(const std::string& dir, const std::string& name, const io::InputDocument& d) {
  std::ofstream out(dir + "/" + name);
  out << io::emit(d).dump(2) << "\n";
  std::cout << "wrote " << name << "\n";
}

io::InputDocument doc(const AlgebraPtr& a, std::string description) {
  io::InputDocument d;
  d.field = a->field();
  d.algebra = a;
  d.description = std::move(description);
  return d;
}

SparseVector digits(std::uint64_t idx, std::uint64_t p, std::size_t n, const Field& f) {
  SparseVector y;
  for (std::size_t i = 0; i < n; ++i, idx /= p)
    if (idx % p) y.emplace_back(i, f.from_int(static_cast<long long>(idx % p)));
  return y;
}

// First nonzero class in HH^{3,-1} whose square is (or is not) zero.
SparseVector find_class(Cohomology& h, bool square_zero) {
  const Field& f = h.algebra()->field();
  const std::size_t n = h.space(3, -1).dim;
  const std::uint64_t p = f.characteristic();
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < n; ++i) total *= p;
  for (std::uint64_t idx = 1; idx < total; ++idx) {
    SparseVector y = digits(idx, p, n, f);
    if (h.induced_sq(h.make_class(3, -1, y)).is_zero() == square_zero) return y;
  }
  throw std::runtime_error("no class found");
}

AInfStructure solve_up(const AlgebraPtr& a, Cohomology& h, const SparseVector& y, int k) {
  ExtendTrace t = extend_to(AInfStructure(a, {h.representative(3, -1, y)}), k, h);
  if (!t.ok) throw std::runtime_error("solver failed");
  return t.last;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc != 2) {
    std::cerr << "usage: make_fixtures <output directory>\n";
    return 1;
  }
  const std::string dir = argv[1];
  const Field f2 = Field::prime(2), f3 = Field::prime(3);

  {
    auto d = doc(algebras::dual_numbers(f2), "dual numbers k[eps]/(eps^2) over F_2");
    d.params = {{"p_max", 4}};
    write(dir, "dual_numbers_f2.json", d);
  }
  {
    auto d = doc(algebras::dual_numbers(f3), "dual numbers k[eps]/(eps^2) over F_3");
    d.params = {{"p_max", 4}};
    write(dir, "dual_numbers_f3.json", d);
  }
  {
    auto d = doc(algebras::exterior(Field::rationals(), 1), "exterior algebra on u, |u| = 1, over Q");
    d.params = {{"p_max", 4}};
    write(dir, "exterior_q.json", d);
  }

  // k[e,x]/(e^2, x^2), |x| = -1, over F_2: HH^{3,-1} has classes with zero
  // and with nonzero square.
  {
    auto a = algebras::dual_extension(f2, 2, -1, 1);
    Cohomology h(a);
    AInfStructure bad = solve_up(a, h, find_class(h, false), 4);
    auto d = doc(a, "solver-built A_4 over F_2 whose Massey product has nonzero square");
    d.structure = bad;
    d.params = {{"page", 2}};
    write(dir, "a4_sq_nonzero_f2.json", d);

    const SparseVector y = find_class(h, true);
    auto d4 = doc(a, "solver-built A_4 over F_2 whose Massey product has zero square");
    d4.structure = solve_up(a, h, y, 4);
    d4.params = {{"target", 6}};
    write(dir, "a4_sq_zero_f2.json", d4);

    auto d5 = doc(a, "solver-built A_5 over F_2");
    d5.structure = solve_up(a, h, y, 5);
    d5.params = {{"page", 3}, {"s_range", {0, 5}}, {"t_range", {-2, 5}}};
    write(dir, "a5_f2.json", d5);
  }

  // Path algebra of the 3-cycle modulo length two, arrows of degrees -3, 1, 1.
  {
    auto a = algebras::cyclic_quiver(f3, {-3, 1, 1});
    Cohomology h(a, Complex::Relative);
    auto d = doc(a, "solver-built A_5 on a cyclic quiver over F_3 with invertible Massey product");
    d.structure = solve_up(a, h, {{0, f3.one()}}, 5);
    d.params = {{"complex", "relative"}, {"s_range", {0, 5}}, {"t_range", {-2, 6}}};
    write(dir, "a5_cyclic_quiver_f3.json", d);
  }

  // HH dimensions from the full bar complex, p <= 4.
  {
    Json tables = Json::array();
    const std::vector<std::pair<std::string, AlgebraPtr>> algs{
        {"dual_numbers_f2", algebras::dual_numbers(f2)},
        {"dual_numbers_f3", algebras::dual_numbers(f3)},
        {"exterior_q", algebras::exterior(Field::rationals(), 1)}};
    for (const auto& [name, a] : algs) {
      Cohomology h(a, Complex::Full);
      Json dims = Json::array();
      for (int p = 0; p <= 4; ++p) {
        const auto [lo, hi] = q_support(*a, p);
        for (int q = lo; q <= hi; ++q) dims.push_back({p, q, h.space(p, q).dim});
      }
      tables.push_back({{"algebra", name}, {"complex", "full"}, {"dims", dims}});
    }
    std::ofstream out(dir + "/hh_dims_full.json");
    out << tables.dump(2) << "\n";
    std::cout << "wrote hh_dims_full.json\n";
  }

  // Generator identities of k<eps, x^{+-1}>/(eps^2, x eps + eps x).
  const char* gens =
      "generators of k<eps, x^{+-1}>/(eps^2, x eps + eps x): e(eps x^n) = x^(n-1), e(x^n) = 0; "
      "delta(b x^n) = -|b x^n| b x^n; central elements x^2 and eps x (x and eps in characteristic 2)";
  for (int ch : {0, 2, 5}) {
    io::InputDocument d;
    d.field = ch == 0 ? Field::rationals() : Field::prime(ch);
    d.description = gens;
    d.params = {{"max_poly_degree", 3}, {"samples", 8}};
    write(dir, "section8_char" + std::to_string(ch) + ".json", d);
  }
  return 0;
}

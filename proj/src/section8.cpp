#include <algorithm>
#include <numeric>
#include <sstream>

#include "hoch/errors.hpp"
#include "hoch/laurent.hpp"

namespace hoch {

const Section8Check* Section8Report::find(const std::string& id) const {
  for (const auto& c : checks)
    if (c.id == id) return &c;
  return nullptr;
}

namespace {

struct Generators {
  LaurentPtr a;
  Field f;
  int one, eps;
  PolyCochain delta, e;

  // b x^n as a class in HH^0, normalized so that cup products of such
  // classes are the products of the center
  PolyCochain center(int b, long long n) const { return -element_cochain(a, b, n); }

  // b x^n {delta}^nd {e}^ne
  PolyCochain mono(int b, long long n, int nd, int ne) const {
    PolyCochain c = center(b, n);
    for (int i = 0; i < nd; ++i) c = cup(c, delta);
    for (int i = 0; i < ne; ++i) c = cup(c, e);
    return c;
  }
};

Generators make_generators(Field f) {
  Generators g{anticommuting_laurent(f), f, 0, 0, {}, {}};
  g.one = g.a->base()->unit();
  g.eps = g.a->base()->index("eps");
  g.delta = euler_delta(g.a);
  // e(eps x^n) = x^(n-1), e(x^n) = 0
  g.e = PolyCochain(g.a, 1, -1);
  for (int rho = 0; rho < g.a->modulus(); ++rho) g.e.add(PolyKey{{rho}, {g.eps}}, g.one, poly_constant(f.one()));
  return g;
}

class Recorder {
 public:
  Recorder(Section8Check& c, int d_search) : c_(c), d_(d_search) {}

  void exact(bool ok, const std::string& what) {
    ++c_.instances;
    if (ok) {
      ++c_.passed;
    } else {
      c_.failures.push_back(what + ": sides differ");
    }
  }

  void witness(const PolyCochain& lhs, const PolyCochain& rhs, const std::string& what) {
    ++c_.instances;
    try {
      WitnessSearch w = find_witness(lhs, rhs, d_);
      if (w.found) {
        ++c_.passed;
      } else {
        ++c_.inconclusive;
        c_.failures.push_back(what + ": no witness of degree <= " + std::to_string(d_));
      }
    } catch (const DomainError& err) {
      c_.failures.push_back(what + ": " + err.what());
    }
  }

 private:
  Section8Check& c_;
  int d_;
};

std::string pair_label(long long a, long long b) {
  return "(" + std::to_string(a) + "," + std::to_string(b) + ")";
}

long long sgn(long long e) { return e % 2 == 0 ? 1 : -1; }

}  // namespace

Section8Report section8_report(int characteristic, int d_search, const Section8Options& opt) {
  if (characteristic < 0) throw ConfigError("characteristic must be 0 or a prime");
  const Field f = characteristic == 0 ? Field::rationals() : Field::prime(characteristic);
  const bool char2 = characteristic == 2;
  const Generators g = make_generators(f);
  const int one = g.one, eps = g.eps;
  auto k = [&](long long v) { return f.from_int(v); };
  std::mt19937_64 rng(opt.seed);

  Section8Report rep;
  rep.characteristic = characteristic;
  rep.d_search = d_search;
  auto add_check = [&](const std::string& id, const std::string& name) -> Section8Check& {
    rep.checks.push_back({id, name, 0, 0, 0, {}});
    return rep.checks.back();
  };

  {
    Section8Check& c = add_check("a", "e and delta are cocycles");
    Recorder r(c, d_search);
    r.exact(hoch_d(g.e).is_zero(), "d(e)");
    r.exact(hoch_d(g.delta).is_zero(), "d(delta)");
    if (char2) {
      r.exact(hoch_d(g.center(one, 1)).is_zero(), "d(x)");
      r.exact(hoch_d(g.center(eps, 0)).is_zero(), "d(eps)");
    } else {
      r.exact(hoch_d(g.center(one, 2)).is_zero(), "d(x^2)");
      r.exact(hoch_d(g.center(eps, 1)).is_zero(), "d(eps x)");
    }
  }
  {
    Section8Check& c = add_check("b", "Sq(e) = 0 on cochains");
    Recorder(c, d_search).exact(sq(g.e).is_zero(), "Sq(e)");
  }
  if (char2) {
    Section8Check& c = add_check("c", "Sq(delta) = delta on cochains");
    Recorder(c, d_search).exact(sq(g.delta) == g.delta, "Sq(delta)");
  }
  {
    Section8Check& c = add_check("d", "delta cup delta is a coboundary");
    Recorder r(c, d_search);
    PolyCochain dd = cup(g.delta, g.delta);
    r.witness(dd, dd - dd, "delta^2 ~ 0");
    r.exact(hoch_d(-euler_beta(g.a)) == dd, "delta^2 = d(-beta)");
  }

  if (!char2) {
    Section8Check& c = add_check("e", "Sq on HH^{3,-1}");
    Recorder r(c, d_search);
    const PolyCochain X = g.mono(one, 4, 0, 3), Y = g.mono(eps, 3, 1, 2);
    const PolyCochain T1 = g.mono(one, 6, 1, 4), T2 = g.mono(eps, 7, 0, 5);
    std::vector<std::pair<long long, long long>> tuples{{0, 1}, {1, 0}, {1, 1}, {2, 3}};
    if (characteristic != 0) {
      std::uniform_int_distribution<long long> pick(0, characteristic - 1);
      for (int i = 0; i < opt.samples / 2; ++i) tuples.emplace_back(pick(rng), pick(rng));
    }
    for (auto [al, be] : tuples) {
      PolyCochain lhs = sq(k(al) * X + k(be) * Y);
      PolyCochain rhs = k(3 * al * be) * T1 - k(al * be) * T2;
      r.witness(lhs, rhs, "Sq at " + pair_label(al, be));
    }
  } else {
    Section8Check& c = add_check("f", "Sq on HH^{3,-1} in characteristic 2");
    Recorder r(c, d_search);
    const std::vector<PolyCochain> S{g.mono(one, 4, 0, 3), g.mono(eps, 4, 0, 3), g.mono(one, 3, 1, 2),
                                     g.mono(eps, 3, 1, 2)};
    const std::vector<PolyCochain> T{g.mono(one, 6, 1, 4), g.mono(eps, 6, 1, 4), g.mono(one, 7, 0, 5),
                                     g.mono(eps, 7, 0, 5)};
    std::vector<int> order(16);
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);
    for (int s = 0; s < std::min(opt.samples, 16); ++s) {
      const int bits = order[s];
      long long al[4];
      for (int i = 0; i < 4; ++i) al[i] = (bits >> i) & 1;
      PolyCochain z = PolyCochain(g.a, 3, -1);
      for (int i = 0; i < 4; ++i) z += k(al[i]) * S[i];
      PolyCochain rhs = k(al[0] * al[3]) * T[0] + k(al[1] * al[3]) * T[1] +
                        k(al[0] * al[1] + al[0] * al[2]) * T[2] +
                        k(al[1] * al[1] + al[1] * al[2] + al[0] * al[3]) * T[3];
      std::string label = "Sq at (" + std::to_string(al[0]) + "," + std::to_string(al[1]) + "," +
                          std::to_string(al[2]) + "," + std::to_string(al[3]) + ")";
      r.witness(sq(z), rhs, label);
    }
  }

  {
    Section8Check& c = add_check("g", "brackets with x^4 {e}^3");
    Recorder r(c, d_search);
    const PolyCochain X = g.mono(one, 4, 0, 3);
    if (!char2) {
      for (int p = 1; p <= 2; ++p)
        for (int q = -2; q <= 1; ++q) {
          const long long m = p - q;
          const std::string at = " at (p,q)=" + pair_label(p, q);
          if (m % 2 == 0) {
            PolyCochain lhs = bracket(X, g.mono(one, m, 0, p));
            r.witness(lhs, lhs - lhs, "[X, x^(p-q) e^p]" + at);
            r.witness(bracket(X, g.mono(eps, m - 1, 1, p - 1)),
                      k(3) * g.mono(one, m + 2, 1, p + 1) + k(sgn(m - 1)) * g.mono(eps, m + 3, 0, p + 2),
                      "[X, eps x^(p-q-1) delta e^(p-1)]" + at);
          } else {
            r.witness(bracket(X, g.mono(one, m - 1, 1, p - 1)), k(sgn(m - 1)) * g.mono(one, m + 3, 0, p + 2),
                      "[X, x^(p-q-1) delta e^(p-1)]" + at);
            r.witness(bracket(X, g.mono(eps, m, 0, p)), k(3) * g.mono(one, m + 3, 0, p + 2),
                      "[X, eps x^(p-q) e^p]" + at);
          }
        }
    } else {
      // HH^{2,-1} -> HH^{4,-2}, and the cup square on HH^{2,-1}
      const std::vector<PolyCochain> S{g.mono(one, 2, 1, 1), g.mono(eps, 2, 1, 1), g.mono(one, 3, 0, 2),
                                       g.mono(eps, 3, 0, 2)};
      const PolyCochain x6e4 = g.mono(one, 6, 0, 4), ex6e4 = g.mono(eps, 6, 0, 4);
      const PolyCochain x5de3 = g.mono(one, 5, 1, 3);
      r.witness(bracket(X, S[0]), x6e4, "[X, x^2 delta e]");
      r.witness(bracket(X, S[1]), ex6e4 + x5de3, "[X, eps x^2 delta e]");
      r.witness(bracket(X, S[2]), x6e4 - x6e4, "[X, x^3 e^2]");
      r.witness(bracket(X, S[3]), x6e4, "[X, eps x^3 e^2]");
      for (int bits = 1; bits < 16; bits += 3) {
        long long al[4];
        PolyCochain z(g.a, 2, 0);
        for (int i = 0; i < 4; ++i) {
          al[i] = (bits >> i) & 1;
          z += k(al[i]) * S[i];
        }
        r.witness(cup(z, z), k(al[2] * al[2]) * x6e4, "square of tuple " + std::to_string(bits));
      }
    }
  }

  {
    Section8Check& c = add_check("h", "y cup x = [y, delta cup x] + delta cup [y, x]");
    Recorder r(c, d_search);
    std::vector<std::pair<std::string, PolyCochain>> ys{{"x^4 e^3", g.mono(one, 4, 0, 3)}};
    if (!char2) ys.emplace_back("eps x^3 delta e^2", g.mono(eps, 3, 1, 2));
    std::vector<std::pair<std::string, PolyCochain>> xs{{"delta", g.delta}, {"e", g.e}};
    if (char2) {
      xs.emplace_back("x", g.center(one, 1));
      xs.emplace_back("eps", g.center(eps, 0));
      xs.emplace_back("x e", g.mono(one, 1, 0, 1));
    } else {
      xs.emplace_back("x^2", g.center(one, 2));
      xs.emplace_back("eps x", g.center(eps, 1));
      xs.emplace_back("x^2 e", g.mono(one, 2, 0, 1));
    }
    for (const auto& [yn, y] : ys)
      for (const auto& [xn, x] : xs) {
        PolyCochain rhs = bracket(y, cup(g.delta, x)) + cup(g.delta, bracket(y, x));
        r.witness(cup(y, x), rhs, "y = " + yn + ", x = " + xn);
      }
  }
  return rep;
}

}  // namespace hoch

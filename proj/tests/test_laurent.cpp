#include "doctest.h"
#include "hoch/errors.hpp"
#include "hoch/laurent.hpp"

using namespace hoch;

namespace {

PolyCochain derivation_e(const LaurentPtr& a) {
  const int eps = a->base()->index("eps"), one = a->base()->unit();
  PolyCochain e(a, 1, -1);
  for (int rho = 0; rho < a->modulus(); ++rho) e.add(PolyKey{{rho}, {eps}}, one, poly_constant(a->field().one()));
  return e;
}

// f o_i g evaluated pointwise: g on its block of arguments, then f.
LaurentVec compose_at(const PolyCochain& f, int i, const PolyCochain& g,
                      const std::vector<std::pair<int, long long>>& args) {
  const TwistedLaurent& a = *f.algebra();
  const Field& fld = f.field();
  const int q = g.arity();
  long long before = 0;
  for (int j = 0; j < i - 1; ++j) before += a.degree(args[j].first, args[j].second) + 1;
  const Scalar sign = fld.from_int((g.end_degree() * before) % 2 == 0 ? 1 : -1);
  std::vector<std::pair<int, long long>> inner(args.begin() + (i - 1), args.begin() + (i - 1 + q));
  LaurentVec out;
  for (const auto& [bo, c] : g.eval(inner)) {
    std::vector<std::pair<int, long long>> outer(args.begin(), args.begin() + (i - 1));
    outer.push_back(bo);
    outer.insert(outer.end(), args.begin() + (i - 1 + q), args.end());
    for (const auto& [o, c2] : f.eval(outer)) out[o] += sign * c * c2;
  }
  for (auto it = out.begin(); it != out.end();) it = it->second.is_zero() ? out.erase(it) : std::next(it);
  return out;
}

}  // namespace

TEST_CASE("twisted Laurent construction is validated") {
  Field q = Field::rationals();
  auto b = algebras::dual_numbers(q);
  const int eps = b->index("eps");
  std::vector<Vec> flip{{{b->unit(), q.one()}}, {{eps, q.from_int(-1)}}};
  CHECK_NOTHROW(TwistedLaurent(b, flip, 2));
  CHECK_THROWS_AS(TwistedLaurent(b, flip, 0), UnsupportedError);
  CHECK_THROWS_AS(TwistedLaurent(b, flip, 1), ConfigError);  // sigma is not the identity
  std::vector<Vec> scale{{{b->unit(), q.one()}}, {{eps, q.from_int(2)}}};
  CHECK_THROWS_AS(TwistedLaurent(b, scale, 2), ConfigError);  // order is not 2
  std::vector<Vec> bad{{{b->unit(), q.one()}}, {{b->unit(), q.one()}}};
  CHECK_THROWS_AS(TwistedLaurent(b, bad, 1), ConfigError);
  CHECK_THROWS_AS(TwistedLaurent(b, flip, 2, 0), ConfigError);
  CHECK_THROWS_AS(TwistedLaurent(b, flip, 2, 1, {0, 2, 1}), ConfigError);
  auto a = anticommuting_laurent(q);
  CHECK(a->modulus() == 2);
  CHECK(anticommuting_laurent(Field::prime(2))->sigma_order() == 1);
}

TEST_CASE("euler derivation on powers of x") {
  for (Field f : {Field::rationals(), Field::prime(5)}) {
    auto a = anticommuting_laurent(f);
    PolyCochain d = euler_delta(a);
    const int one = a->base()->unit(), eps = a->base()->index("eps");
    auto single = [&](int b, long long n) {
      LaurentVec v;
      if (!f.from_int(n).is_zero()) v[{b, n}] = f.from_int(-n);
      return v;
    };
    for (long long n = -5; n <= 5; ++n) {
      CHECK(d.eval({{one, n}}) == single(one, n));
      CHECK(d.eval({{eps, n}}) == single(eps, n));
    }
    CHECK(hoch_d(d).is_zero());
  }
}

TEST_CASE("multiplication reproduces the twisted product") {
  Field f = Field::prime(7);
  auto a = anticommuting_laurent(f);
  const PolyCochain& m = m2_of(a);
  const int one = a->base()->unit(), eps = a->base()->index("eps");
  // (x^n)(eps x^m) = (-1)^n eps x^(n+m), with the suspension sign (-1)^n
  for (long long n = -3; n <= 3; ++n)
    for (long long k = -3; k <= 3; ++k) {
      CHECK(m.eval({{one, n}, {eps, k}}) == LaurentVec{{{eps, n + k}, f.one()}});
      CHECK(m.eval({{eps, n}, {one, k}}) == LaurentVec{{{eps, n + k}, f.from_int(n % 2 == 0 ? 1 : -1)}});
      CHECK(m.eval({{eps, n}, {eps, k}}).empty());
    }
  CHECK(brace(m, {m}).is_zero());
}

TEST_CASE("composition agrees with pointwise evaluation") {
  std::mt19937_64 rng(41);
  for (Field f : {Field::rationals(), Field::prime(2), Field::prime(5)}) {
    auto a = anticommuting_laurent(f);
    int compared = 0;
    for (int trial = 0; trial < 25; ++trial) {
      const int p = 1 + rng() % 3, q = rng() % 3, i = 1 + rng() % p;
      PolyCochain F = random_poly_cochain(a, p, static_cast<int>(rng() % 5) - 2, 1, rng);
      PolyCochain G = random_poly_cochain(a, q, static_cast<int>(rng() % 5) - 2, 1, rng);
      PolyCochain C = compose(F, i, G);
      for (int s = 0; s < 15; ++s) {
        std::vector<std::pair<int, long long>> args;
        for (int j = 0; j < p + q - 1; ++j)
          args.emplace_back(static_cast<int>(rng() % 2), static_cast<long long>(rng() % 13) - 6);
        CHECK(C.eval(args) == compose_at(F, i, G, args));
        ++compared;
      }
    }
    CHECK(compared == 25 * 15);
  }
}

TEST_CASE("output exponents are forced by degree") {
  std::mt19937_64 rng(43);
  auto a = anticommuting_laurent(Field::prime(3));
  for (int trial = 0; trial < 10; ++trial) {
    const int p = 1 + rng() % 2, d = static_cast<int>(rng() % 5) - 2;
    PolyCochain x = cup(random_poly_cochain(a, p, d, 1, rng), euler_delta(a));
    for (int s = 0; s < 10; ++s) {
      std::vector<std::pair<int, long long>> args;
      long long in = 0;
      for (int j = 0; j < x.arity(); ++j) {
        args.emplace_back(static_cast<int>(rng() % 2), static_cast<long long>(rng() % 9) - 4);
        in += a->degree(args.back().first, args.back().second) + 1;
      }
      for (const auto& [o, c] : x.eval(args)) CHECK(a->degree(o.first, o.second) + 1 == in + x.end_degree());
    }
  }
  PolyCochain c(a, 1, 0);
  Mono big{};
  big[1] = 1;
  CHECK_THROWS_AS(c.add(PolyKey{{0}, {0}}, 0, Poly{{big, a->field().one()}}), DomainError);
  CHECK_THROWS_AS(c.add(PolyKey{{2}, {0}}, 0, poly_constant(a->field().one())), DomainError);
}

TEST_CASE("identity suite on Laurent cochains") {
  for (Field f : {Field::rationals(), Field::prime(2), Field::prime(5)}) {
    PropsReport rep = run_poly_identity_suite(anticommuting_laurent(f), 4, 7);
    for (const auto& o : rep.identities) {
      INFO(f.name() << " " << o.name << ": " << o.first_failure);
      CHECK(o.failed == 0);
      CHECK(o.checked > 0);
    }
  }
}

TEST_CASE("euler eigenvalue on Laurent cochains") {
  std::mt19937_64 rng(47);
  for (Field f : {Field::rationals(), Field::prime(5)}) {
    auto a = anticommuting_laurent(f);
    PolyCochain d = euler_delta(a);
    for (int trial = 0; trial < 12; ++trial) {
      PolyCochain y = random_poly_cochain(a, rng() % 3, static_cast<int>(rng() % 7) - 3, 1, rng);
      CHECK(bracket(d, y) == f.from_int(y.bidegree().second) * y);
    }
  }
}

TEST_CASE("generator identities on cochains") {
  for (Field f : {Field::rationals(), Field::prime(2), Field::prime(5)}) {
    auto a = anticommuting_laurent(f);
    PolyCochain e = derivation_e(a), d = euler_delta(a);
    CHECK(hoch_d(e).is_zero());
    CHECK(sq(e).is_zero());
    CHECK(cup(d, d) == -hoch_d(euler_beta(a)));
    if (f.characteristic() == 2)
      CHECK(sq(d) == d);
    else
      CHECK_THROWS_AS(sq(d), DomainError);
    // minus the element cochain makes the cup product the product of the center
    const int one = a->base()->unit();
    PolyCochain x2 = -element_cochain(a, one, 2), x4 = -element_cochain(a, one, 4);
    CHECK(cup(x2, x2) == x4);
    CHECK(cup(element_cochain(a, one, 2), element_cochain(a, one, 2)) == -element_cochain(a, one, 4));
  }
}

TEST_CASE("witness search") {
  Field f = Field::prime(5);
  auto a = anticommuting_laurent(f);
  PolyCochain d = euler_delta(a), e = derivation_e(a);
  PolyCochain dd = cup(d, d);
  WitnessSearch w = find_witness(dd, dd - dd, 2);
  REQUIRE(w.found);
  CHECK(hoch_d(w.witness) == dd);
  CHECK(w.unknowns > 0);
  // the class needs a quadratic witness
  CHECK_FALSE(find_witness(dd, dd - dd, 1).found);

  WitnessSearch same = find_witness(e, e, 3);
  CHECK(same.found);
  CHECK(same.witness.is_zero());

  CHECK_THROWS_AS(find_witness(d, e, 3), DomainError);
  PolyCochain notcocycle(a, 1, 0);
  notcocycle.add(PolyKey{{0}, {0}}, 0, poly_constant(f.one()));
  notcocycle.add(PolyKey{{0}, {1}}, 0, poly_constant(f.one()));
  REQUIRE_FALSE(hoch_d(notcocycle).is_zero());
  CHECK_THROWS_AS(find_witness(notcocycle, d, 3), DomainError);

  // e and 2e differ by a nonzero class, so no search can succeed
  CHECK_FALSE(find_witness(e, f.from_int(2) * e, 3).found);
}

TEST_CASE("section report in characteristic 3") {
  Section8Report rep = section8_report(3, 3);
  for (const auto& c : rep.checks) {
    INFO(c.id << " " << c.name);
    for (const auto& s : c.failures) INFO(s);
    CHECK(c.ok());
  }
  CHECK(rep.find("c") == nullptr);
  CHECK(rep.find("f") == nullptr);
  REQUIRE(rep.find("e") != nullptr);
  CHECK(rep.find("e")->instances == 8);
}

TEST_CASE("witness failures are reported") {
  Section8Report rep = section8_report(2, 0);
  CHECK_FALSE(rep.ok());
  REQUIRE(rep.find("d") != nullptr);
  CHECK(rep.find("d")->passed == 1);  // the exact -beta check still passes
  CHECK(rep.find("d")->failures.size() == 1);
  REQUIRE(rep.find("c") != nullptr);
  CHECK(rep.find("c")->ok());
  CHECK_THROWS_AS(section8_report(4, 1), ConfigError);
}

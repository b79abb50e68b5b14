#include <random>

#include "doctest.h"
#include "hoch/ainf.hpp"
#include "hoch/errors.hpp"
#include "hoch/obstruction.hpp"

using namespace hoch;

namespace {

Cochain random_coboundary(const AlgebraPtr& a, int p, int q, std::mt19937_64& rng) {
  return hoch_d(random_cochain(a, p - 1, 1 - (p - 1) - q, rng));
}

}  // namespace

TEST_CASE("residuals of the trivial structure") {
  for (Field f : {Field::rationals(), Field::prime(2)}) {
    auto a = algebras::dual_extension(f, 2, -1, 1);
    AInfStructure s(a, 5);
    CHECK(s.k() == 5);
    for (int n = 2; n <= 6; ++n) {
      Cochain si = stasheff_residual(s, n);
      CHECK(si.is_zero());
      CHECK(si.bidegree() == std::pair<int, int>{n, 3 - n});
    }
    CHECK_THROWS_AS(stasheff_residual(s, 7), DomainError);
    CHECK(is_valid(s).ok());
  }
}

TEST_CASE("SI(4) is the bracket with m2") {
  std::mt19937_64 rng(7);
  auto a = algebras::exterior(Field::prime(5), -1);
  for (int trial = 0; trial < 10; ++trial) {
    Cochain m3 = random_cochain(a, 3, -1, rng);
    AInfStructure s(a, {m3});
    CHECK(stasheff_residual(s, 4) == bracket(m2_of(a), m3));
    AInfStructure s4(a, {m3, random_cochain(a, 4, -1, rng)});
    AInfReport rep = is_valid(s4);
    if (hoch_d(m3).is_zero()) {
      CHECK(rep.ok());
    } else {
      REQUIRE(rep.violations.size() == 1);
      CHECK(rep.violations[0].n == 4);
      CHECK(stasheff_residual(s4, 4).eval(rep.violations[0].witness) == rep.violations[0].value);
    }
  }
}

TEST_CASE("construction and perturbation errors") {
  auto a = algebras::dual_numbers(Field::prime(3));
  CHECK_THROWS_AS(AInfStructure(a, 1), DomainError);
  CHECK_THROWS_AS(AInfStructure(a, {zero_cochain(a, 3, 0)}), DomainError);
  AInfStructure s(a, 4);
  CHECK_THROWS_AS(s.m(5), DomainError);
  CHECK_THROWS_AS(perturb(s, 2, zero_cochain(a, 2, 0)), DomainError);
  CHECK_THROWS_AS(perturb(s, 5, zero_cochain(a, 5, -3)), DomainError);
  CHECK_THROWS_AS(perturb(s, 4, zero_cochain(a, 3, -1)), DomainError);
  AInfStructure same = perturb(s, 3, zero_cochain(a, 3, -1));
  CHECK(same.m(3) == s.m(3));
  CHECK_THROWS_AS(universal_massey(AInfStructure(a, 3), *std::make_unique<Cohomology>(a)), DomainError);
}

TEST_CASE("residuals only depend on lower maps") {
  std::mt19937_64 rng(11);
  for (Field f : {Field::prime(2), Field::rationals()}) {
    auto a = algebras::dual_extension(f, 2, -1, 1);
    std::vector<Cochain> maps;
    for (int n = 3; n <= 5; ++n) maps.push_back(random_cochain(a, n, -1, rng));
    AInfStructure s(a, maps);
    for (int j = 3; j <= 5; ++j) {
      AInfStructure t = perturb(s, j, random_cochain(a, j, -1, rng));
      for (int n = 3; n <= j; ++n) CHECK(stasheff_residual(t, n) == stasheff_residual(s, n));
      if (j + 1 <= 6) CHECK(stasheff_residual(t, j + 1) != stasheff_residual(s, j + 1));
    }
    // a cocycle added to m_{k-1} leaves SI(k) alone; the shift of SI(k) is [m2, b]
    Cohomology h(a);
    const HHSpace& z = h.space(4, -2);
    REQUIRE(z.dim > 0);
    Cochain b = z.hh_basis[0];
    AInfStructure t = perturb(s, 4, b);
    CHECK(stasheff_residual(t, 5) == stasheff_residual(s, 5));
    Cochain c = random_cochain(a, 4, -1, rng);
    CHECK(stasheff_residual(perturb(s, 4, c), 5) - stasheff_residual(s, 5) == bracket(m2_of(a), c));
  }
}

TEST_CASE("universal Massey product") {
  std::mt19937_64 rng(13);
  auto a = algebras::dual_extension(Field::prime(2), 2, -1, 1);
  Cohomology h(a);
  CHECK(universal_massey(AInfStructure(a, 4), h).is_zero());
  const HHSpace& z = h.space(3, -1);
  REQUIRE(z.dim == 4);
  for (std::size_t i = 0; i < z.dim; ++i) {
    AInfStructure s(a, {z.hh_basis[i], zero_cochain(a, 4, -2)});
    CohomClass c = universal_massey(s, h);
    CHECK(c.coordinates == SparseVector{{i, a->field().one()}});
    AInfStructure t = perturb(s, 3, random_coboundary(a, 3, -1, rng));
    CHECK(universal_massey(t, h).coordinates == c.coordinates);
  }
  AInfStructure bad(a, {random_cochain(a, 3, -1, rng), zero_cochain(a, 4, -2)});
  REQUIRE_FALSE(is_valid(bad).ok());
  CHECK_THROWS_AS(universal_massey(bad, h), ValidationError);
}

TEST_CASE("valid A_5 structures have Sq of the Massey product zero") {
  for (Field f : {Field::prime(2), Field::prime(3)}) {
    auto a = f.characteristic() == 2 ? algebras::dual_extension(f, 2, -1, 1) : algebras::dual_extension(f, 3, -1, -1);
    Cohomology h(a);
    const HHSpace& z = h.space(3, -1);
    int extended = 0;
    for (std::size_t i = 0; i < z.dim; ++i) {
      AInfStructure s(a, {z.hh_basis[i]});
      ExtendTrace t = extend_to(s, 5, h);
      if (!t.ok) continue;
      ++extended;
      REQUIRE(is_valid(t.last).ok());
      CohomClass m3 = universal_massey(t.last, h);
      CHECK(h.induced_sq(m3).is_zero());
      CHECK(h.bracket_class(m3, m3).is_zero());
    }
    CHECK(extended > 0);
  }
}

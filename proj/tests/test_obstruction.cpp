#include <random>

#include "doctest.h"
#include "hoch/errors.hpp"
#include "hoch/obstruction.hpp"

using namespace hoch;

namespace {

// F2: k[e,x]/(e^2,x^2) with |x| = -1. F3: k<e,x>/(e^2, xe + ex, x^3).
AlgebraPtr fixture(Field f) {
  return f.characteristic() == 2 ? algebras::dual_extension(f, 2, -1, 1) : algebras::dual_extension(f, 3, -1, -1);
}

SparseVector digits(std::uint64_t idx, std::uint64_t p, std::size_t n, const Field& f) {
  SparseVector y;
  for (std::size_t i = 0; i < n; ++i, idx /= p)
    if (idx % p) y.emplace_back(i, f.from_int(static_cast<long long>(idx % p)));
  return y;
}

// A valid A_4 structure with the given Massey class, produced by the solver
// and then scrambled by a coboundary in m3 and an arbitrary m4.
AInfStructure solver_a4(const AlgebraPtr& a, Cohomology& h, const SparseVector& y, std::mt19937_64& rng) {
  Cochain m3 = h.representative(3, -1, y) + hoch_d(random_cochain(a, 2, 0, rng));
  ExtendResult r = extend_once(AInfStructure(a, {m3}), 3, h);
  REQUIRE(r.ok);
  return perturb(*r.structure, 4, random_cochain(a, 4, -1, rng));
}

}  // namespace

TEST_CASE("obstruction cocycle at k = 4") {
  std::mt19937_64 rng(3);
  for (Field f : {Field::prime(2), Field::prime(3)}) {
    auto a = fixture(f);
    Cohomology h(a);
    const HHSpace& z = h.space(3, -1);
    for (std::size_t i = 0; i < z.dim; ++i) {
      Cochain m3 = z.hh_basis[i], m4 = random_cochain(a, 4, -1, rng);
      AInfStructure s(a, {m3, m4});
      Cochain oc = obstruction_cocycle(s);
      CHECK(oc == bracket(m2_of(a), m4) + brace(m3, {m3}));
      CHECK(hoch_d(oc).is_zero());
      CHECK(oc.bidegree() == std::pair<int, int>{5, -2});
      // perturbing m4 shifts the cocycle by exactly [m2, b]
      Cochain b = random_cochain(a, 4, -1, rng);
      CHECK(obstruction_cocycle(perturb(s, 4, b)) - oc == bracket(m2_of(a), b));
    }
    CHECK(obstruction_cocycle(AInfStructure(a, 4)).is_zero());
    AInfStructure bad(a, {random_cochain(a, 3, -1, rng)});
    if (!is_valid(bad).ok()) CHECK_THROWS_AS(obstruction_cocycle(bad.extended(4)), ValidationError);
  }
}

TEST_CASE("page-2 obstruction at k = 4 is the square of the Massey product") {
  std::mt19937_64 rng(5);
  for (Field f : {Field::prime(2), Field::prime(3)}) {
    auto a = fixture(f);
    Cohomology h(a);
    const std::size_t n = h.space(3, -1).dim;
    int nonzero = 0;
    for (int trial = 0; trial < 20; ++trial) {
      SparseVector y = digits(rng(), f.characteristic(), n, f);
      AInfStructure s = solver_a4(a, h, y, rng);
      REQUIRE(is_valid(s).ok());
      CohomClass theta = theta_page2(s, h);
      CohomClass expected = h.induced_sq(universal_massey(s, h));
      CHECK(theta.coordinates == expected.coordinates);
      if (!theta.is_zero()) ++nonzero;
    }
    CHECK(nonzero > 0);
  }
}

TEST_CASE("extensions re-validate and failures carry certificates") {
  std::mt19937_64 rng(9);
  Field f = Field::prime(2);
  auto a = fixture(f);
  Cohomology h(a);
  const std::size_t n = h.space(3, -1).dim;
  int failures = 0;
  for (std::uint64_t idx = 0; idx < (1u << n); ++idx) {
    AInfStructure s = solver_a4(a, h, digits(idx, 2, n, f), rng);
    ExtendResult r = extend_once(s, 3, h);
    if (r.ok) {
      CHECK(is_valid(*r.structure).ok());
      CHECK(r.structure->k() == 5);
      CHECK(r.structure->m(5).is_zero());
      CHECK(r.structure->m(3) == s.m(3));
      continue;
    }
    ++failures;
    REQUIRE(r.report.page2_certificate);
    CHECK(h.check_certificate(*r.report.page2_certificate, r.report.cocycle));
    CoboundaryCertificate forged = *r.report.page2_certificate;
    forged.functional.clear();
    CHECK_FALSE(h.check_certificate(forged, r.report.cocycle));
    // depth k - 2 resets the Massey class to a zero of Sq
    ExtendResult deeper = extend_once(s, 2, h);
    REQUIRE(deeper.ok);
    REQUIRE(deeper.report.page3);
    CHECK(deeper.report.page3->status == Page3Status::Vanishes);
    CHECK(deeper.report.page3->data.method == "enumeration");
    CHECK(is_valid(*deeper.structure).ok());
    CHECK(h.induced_sq(universal_massey(*deeper.structure, h)).is_zero());
  }
  CHECK(failures > 0);
}

TEST_CASE("vanishing obstruction group") {
  std::mt19937_64 rng(21);
  for (Field f : {Field::prime(3), Field::rationals()}) {
    for (auto a : {algebras::truncated_polynomial(f, 3, -1), algebras::exterior(f, -1), algebras::dual_numbers(f)}) {
      Cohomology h(a);
      for (int k = 3; k <= 5; ++k) {
        if (h.space(k + 1, 2 - k).dim != 0) continue;
        // a valid A_k structure: cocycle m3, then solver steps with random top maps
        Cochain m3 = hoch_d(random_cochain(a, 2, 0, rng));
        for (std::size_t i = 0; i < h.space(3, -1).dim; ++i) m3 += h.space(3, -1).hh_basis[i];
        AInfStructure s(a, {m3});
        while (s.k() < k) {
          ExtendResult r = extend_once(s, s.k() - 1, h);
          REQUIRE(r.ok);
          s = perturb(*r.structure, r.structure->k(), random_cochain(a, r.structure->k(), -1, rng));
          if (!is_valid(s).ok()) s = *r.structure;
        }
        CHECK(theta_page2(s, h).is_zero());
        ExtendResult r = extend_once(s, k - 1, h);
        CHECK(r.ok);
        CHECK(is_valid(*r.structure).ok());
      }
    }
  }
}

TEST_CASE("zero locus of the square") {
  Field f = Field::prime(2);
  auto a = fixture(f);
  Cohomology h(a);
  const std::size_t n = h.space(3, -1).dim;
  REQUIRE(n <= 4);
  int in_locus = 0;
  for (std::uint64_t idx = 0; idx < (1u << n); ++idx) {
    SparseVector y = digits(idx, 2, n, f);
    Cochain m3 = h.representative(3, -1, y);
    // Sq computed directly on the cochain and tested for being a coboundary
    const bool sq_zero = h.coboundary_witness(brace(m3, {m3})).has_value();
    ExtendTrace t = extend_to(AInfStructure(a, {m3}), 4, h);
    REQUIRE(t.ok);
    ExtendResult r = extend_once(t.last, 3, h);
    CHECK(r.ok == sq_zero);
    in_locus += sq_zero;
  }
  CHECK(in_locus > 1);
  CHECK(in_locus < (1 << n));
}

TEST_CASE("unsupported depths") {
  auto a = fixture(Field::prime(2));
  Cohomology h(a);
  AInfStructure s(a, 5);
  CHECK_THROWS_AS(extend_once(s, 2, h), UnsupportedError);
  CHECK_THROWS_AS(extend_once(s, 6, h), UnsupportedError);
  CHECK_THROWS_AS(extend_once(AInfStructure(a, 3), 1, h), UnsupportedError);
  CHECK_THROWS_AS(theta_page3_check(AInfStructure(a, 3), h), DomainError);
  CHECK_THROWS_AS(theta_page2(AInfStructure(a, 2), h), DomainError);
}

TEST_CASE("page-3 data rechecks") {
  Field f = Field::prime(3);
  Page3Data d;
  d.k = 4;
  d.method = "enumeration";
  d.target = {{0, f.one()}};
  d.linear = {{}, {}};
  d.square = {{}, {}};
  d.cross = {{SparseVector{}}, {}};
  d.candidates = 9;
  CHECK(check_page3_nonzero(d, f));
  d.square[1] = {{0, f.one()}};  // 1 + y^2 has no root mod 3
  CHECK(check_page3_nonzero(d, f));
  d.square[1] = {{0, f.from_int(2)}};
  CHECK_FALSE(check_page3_nonzero(d, f));
  Page3Data lin;
  lin.k = 5;
  lin.method = "linear";
  lin.target = {{1, f.one()}};
  lin.linear = {{{0, f.one()}}};
  lin.functional = {{1, f.one()}};
  CHECK(check_page3_nonzero(lin, f));
  lin.functional = {{0, f.one()}};
  CHECK_FALSE(check_page3_nonzero(lin, f));
}

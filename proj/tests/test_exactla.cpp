#include <algorithm>
#include <random>

#include "doctest.h"
#include "hoch/errors.hpp"
#include "hoch/exactla.hpp"

using namespace hoch;

namespace {

SparseMatrix dense(const Field& f, const std::vector<std::vector<long long>>& rows) {
  SparseMatrix m(rows.size(), rows.empty() ? 0 : rows[0].size(), f);
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows[i].size(); ++j) m.set(i, j, f.from_int(rows[i][j]));
  return m;
}

SparseMatrix random_matrix(const Field& f, std::size_t r, std::size_t c, std::mt19937_64& rng,
                           double density) {
  SparseMatrix m(r, c, f);
  std::uniform_real_distribution<double> coin(0, 1);
  std::uniform_int_distribution<int> v(-4, 4);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j)
      if (coin(rng) < density) m.set(i, j, f.from_int(v(rng)));
  return m;
}

}  // namespace

TEST_CASE("scalars") {
  Field q = Field::rationals();
  Scalar a = q.parse("6/4");
  CHECK(a.str() == "3/2");
  CHECK((a * a.inverse()).is_one());
  Field f7 = Field::prime(7);
  CHECK(f7.from_int(-1).residue() == 6);
  CHECK((f7.from_int(3) * f7.from_int(5)).residue() == 1);
  CHECK(f7.from_int(3).inverse().residue() == 5);
  CHECK(f7.parse("1/2").residue() == 4);
  CHECK_THROWS_AS(Field::prime(4), ConfigError);
  CHECK_THROWS_AS(f7.one() + q.one(), ConfigError);
  Scalar z;
  CHECK((z + f7.one()).residue() == 1);
  CHECK((f7.from_int(2) * z).is_zero());
}

TEST_CASE("rref examples") {
  Field q = Field::rationals();
  auto r = rref(dense(q, {{1, 2}, {2, 4}}));
  CHECK(r.rank == 1);
  CHECK(r.pivots == std::vector<std::size_t>{0});

  SparseMatrix z(3, 5, q);
  auto rz = rref(z);
  CHECK(rz.rank == 0);
  CHECK(rz.pivots.empty());

  Field f2 = Field::prime(2);
  CHECK(rank(dense(f2, {{1, 1, 0}, {0, 1, 1}, {1, 0, 1}})) == 2);
  // same matrix over Q has full rank
  CHECK(rank(dense(q, {{1, 1, 0}, {0, 1, 1}, {1, 0, 1}})) == 3);

  SparseMatrix mixed(1, 2);
  mixed.set(0, 0, q.one());
  mixed.set(0, 1, f2.one());
  CHECK_THROWS_AS(rref(mixed), ConfigError);
}

TEST_CASE("kernel examples") {
  Field q = Field::rationals();
  CHECK(kernel_basis(dense(q, {{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}})).empty());
  auto k0 = kernel_basis(SparseMatrix(2, 3, q));
  REQUIRE(k0.size() == 3);
  for (std::size_t j = 0; j < 3; ++j) {
    REQUIRE(k0[j].size() == 1);
    CHECK(k0[j][0].first == j);
    CHECK(k0[j][0].second.is_one());
  }
  auto k = kernel_basis(dense(q, {{1, 2}, {2, 4}}));
  REQUIRE(k.size() == 1);
  // proportional to (-2, 1)
  std::map<std::size_t, Scalar> v(k[0].begin(), k[0].end());
  CHECK(v[0] == q.from_int(-2) * v[1]);
  CHECK(!v[1].is_zero());

  Field f5 = Field::prime(5);
  auto kz = kernel_basis(SparseMatrix(1, 2, f5));
  CHECK(kz[0][0].second.field() == f5);
}

TEST_CASE("solve examples") {
  Field q = Field::rationals();
  auto id = dense(q, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
  SparseVector b{{0, q.from_int(3)}, {2, q.parse("-1/2")}};
  auto x = solve(id, b);
  REQUIRE(x);
  CHECK(*x == b);

  SparseVector nz{{1, q.one()}};
  CHECK(!solve(SparseMatrix(2, 2, q), nz));
  auto cert = inconsistency_certificate(SparseMatrix(2, 2, q), nz);
  REQUIRE(cert);
  CHECK(dot(*cert, nz).is_one());

  Field f3 = Field::prime(3);
  auto s = solve(dense(f3, {{1, 1}, {0, 0}}), SparseVector{{0, f3.from_int(2)}});
  REQUIRE(s);
  REQUIRE(s->size() == 1);
  CHECK((*s)[0].first == 0);
  CHECK((*s)[0].second.residue() == 2);

  CHECK_THROWS_AS(solve(id, SparseVector{{5, q.one()}}), ConfigError);
}

TEST_CASE("complement examples") {
  Field q = Field::rationals();
  std::vector<SparseVector> full{{{0, q.one()}}, {{1, q.one()}}};
  CHECK(complement_basis(full, 2, q).empty());
  CHECK(complement_basis({}, 2, q).size() == 2);
  auto c = complement_basis({{{0, q.one()}, {1, q.one()}}}, 3, q);
  REQUIRE(c.size() == 2);
  CHECK(c[0] == SparseVector{{1, q.one()}});
  CHECK(c[1] == SparseVector{{2, q.one()}});
}

TEST_CASE("linear algebra invariants on random matrices") {
  std::mt19937_64 rng(7);
  for (Field f : {Field::rationals(), Field::prime(2), Field::prime(5)}) {
    for (int trial = 0; trial < 40; ++trial) {
      std::size_t r = 1 + rng() % 7, c = 1 + rng() % 7;
      SparseMatrix m = random_matrix(f, r, c, rng, 0.5);
      RrefResult red = rref(m);
      // idempotence
      CHECK(rref(red.reduced).reduced == red.reduced);
      auto ker = kernel_basis(m);
      CHECK(red.rank + ker.size() == c);
      for (const auto& v : ker) CHECK(is_zero(m.apply(v)));
      // solve consistency: b in the image is always solved exactly
      SparseVector x0;
      for (std::size_t j = 0; j < c; ++j)
        if (rng() % 2) x0.emplace_back(j, f.from_int(1 + rng() % 3));
      SparseVector b = m.apply(x0);
      auto x = solve(m, b);
      REQUIRE(x);
      CHECK(m.apply(*x) == b);
      CHECK(!inconsistency_certificate(m, b));
      // insertion order independence
      SparseMatrix shuffled(r, c, f);
      std::vector<std::pair<std::size_t, std::size_t>> cells;
      for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) cells.emplace_back(i, j);
      std::shuffle(cells.begin(), cells.end(), rng);
      for (auto [i, j] : cells) shuffled.set(i, j, m.at(i, j));
      CHECK(rref(shuffled).reduced == red.reduced);
      // complement completes a basis
      std::vector<SparseVector> rows;
      for (std::size_t i = 0; i < r; ++i) rows.push_back(m.row(i));
      auto comp = complement_basis(rows, c, f);
      CHECK(comp.size() + red.rank == c);
      auto all = rows;
      all.insert(all.end(), comp.begin(), comp.end());
      CHECK(rank(SparseMatrix::from_rows(all, c, f)) == c);
    }
  }
}

TEST_CASE("inconsistency certificates re-check") {
  std::mt19937_64 rng(11);
  Field f = Field::prime(3);
  int found = 0;
  for (int trial = 0; trial < 60; ++trial) {
    SparseMatrix m = random_matrix(f, 5, 3, rng, 0.4);
    SparseVector b;
    for (std::size_t i = 0; i < 5; ++i)
      if (rng() % 2) b.emplace_back(i, f.from_int(1 + rng() % 2));
    auto x = solve(m, b);
    auto y = inconsistency_certificate(m, b);
    CHECK(x.has_value() != y.has_value());
    if (y) {
      ++found;
      CHECK(is_zero(m.transposed().apply(*y)));
      CHECK(dot(*y, b).is_one());
    }
  }
  CHECK(found > 0);
}

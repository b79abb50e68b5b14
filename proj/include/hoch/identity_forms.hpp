#pragma once

// The brace-calculus identities written once for any cochain type C with
// brace, bracket, cup, sq, hoch_d and multiplication(x) found by lookup.

#include <cstddef>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "hoch/exactla.hpp"

namespace hoch {

struct IdentityOutcome {
  std::string name;
  int checked = 0;
  int nontrivial = 0;  // checks where the two sides are not both zero
  int skipped = 0;
  int failed = 0;
  std::string first_failure;
};

struct PropsReport {
  std::string algebra;
  std::vector<IdentityOutcome> identities;
  bool ok() const {
    for (const auto& i : identities)
      if (i.failed) return false;
    return true;
  }
};

namespace forms {

template <class C>
using Sides = std::pair<C, C>;

inline Scalar sign(const Field& f, long long e) { return f.from_int((e % 2 == 0) ? 1 : -1); }

template <class C>
void insertions(const C& x, const std::vector<C>& ys, const std::vector<C>& zs, std::size_t k,
                std::size_t from, std::vector<C>& args, long long eps, C& acc) {
  const Field& f = x.field();
  if (k == ys.size()) {
    std::vector<C> full = args;
    for (std::size_t l = from; l < zs.size(); ++l) full.push_back(zs[l]);
    acc += sign(f, eps) * brace(x, full);
    return;
  }
  // z_from .. z_{i-1} stay outside, z_i .. z_{j-1} go into y_k
  for (std::size_t i = from; i <= zs.size(); ++i) {
    long long passed = 0;
    for (std::size_t l = 0; l < i; ++l) passed += zs[l].end_degree();
    for (std::size_t j = i; j <= zs.size(); ++j) {
      std::vector<C> next = args;
      for (std::size_t l = from; l < i; ++l) next.push_back(zs[l]);
      std::vector<C> inner(zs.begin() + i, zs.begin() + j);
      next.push_back(brace(ys[k], inner));
      insertions(x, ys, zs, k + 1, j, next, eps + ys[k].end_degree() * passed, acc);
    }
  }
}

template <class C>
Sides<C> brace_relation(const C& x, const std::vector<C>& ys, const std::vector<C>& zs) {
  C lhs = brace(brace(x, ys), zs);
  C rhs = lhs - lhs;
  std::vector<C> args;
  insertions(x, ys, zs, 0, 0, args, 0, rhs);
  return {lhs, rhs};
}

template <class C>
Sides<C> square_bracket(const C& x, const C& y) {
  return {bracket(brace(x, {x}), y), bracket(x, bracket(x, y))};
}

template <class C>
Sides<C> cup_associativity(const C& x, const C& y, const C& z) {
  return {cup(cup(x, y), z), cup(x, cup(y, z))};
}

template <class C>
Sides<C> leibniz(const C& x, const C& y) {
  const Field& f = x.field();
  C lhs = hoch_d(cup(x, y));
  C rhs = cup(hoch_d(x), y) + sign(f, x.end_degree() - 1) * cup(x, hoch_d(y));
  return {lhs, rhs};
}

template <class C>
Sides<C> commutativity_witness(const C& x, const C& y) {
  const Field& f = x.field();
  const int a = x.end_degree(), b = y.end_degree();
  C lhs = cup(x, y) - sign(f, (a - 1) * (b - 1)) * cup(y, x);
  const C& m2 = multiplication(x);
  C inner = bracket(m2, brace(x, {y})) - brace(bracket(m2, x), {y}) - sign(f, a) * brace(x, {bracket(m2, y)});
  C rhs = -(sign(f, a) * inner);
  return {lhs, rhs};
}

template <class C>
Sides<C> derivation_witness(const C& x, const C& y, const C& z) {
  const Field& f = x.field();
  const int a = x.end_degree(), b = y.end_degree();
  const C& m2 = multiplication(x);
  C lhs = bracket(x, cup(y, z)) - cup(bracket(x, y), z) - sign(f, a * (b - 1)) * cup(y, bracket(x, z));
  C inner = bracket(m2, brace(x, {y, z})) - brace(bracket(m2, x), {y, z}) -
            sign(f, a) * brace(x, {bracket(m2, y), z}) - sign(f, a + b) * brace(x, {y, bracket(m2, z)});
  return {lhs, sign(f, a + b) * inner};
}

template <class C>
Sides<C> sq_cup_witness(const C& x, const C& y) {
  const C& m2 = multiplication(x);
  C dx = bracket(m2, x), dy = bracket(m2, y);
  C lhs = sq(cup(x, y)) - cup(sq(x), cup(y, y)) - cup(cup(x, bracket(x, y)), y) - cup(cup(x, x), sq(y));
  C rhs = bracket(m2, cup(x, brace(y, {x, y}))) + cup(x, brace(y, {dx, y})) - cup(x, brace(y, {x, dy})) +
          bracket(m2, cup(brace(x, {x, y}), y)) + cup(brace(x, {dx, y}), y) - cup(brace(x, {x, dy}), y) +
          bracket(m2, cup(brace(x, {x}), brace(y, {y}))) + cup(brace(x, {dx}), brace(y, {y})) -
          cup(brace(x, {x}), brace(y, {dy})) - brace(bracket(m2, cup(x, y)), {x, y});
  return {lhs, rhs};
}

template <class C>
Sides<C> sq_additivity(const C& x, const C& y) {
  return {sq(x + y), sq(x) + sq(y) + bracket(x, y)};
}

template <class C>
Sides<C> bracket_antisymmetry(const C& x, const C& y) {
  const Field& f = x.field();
  return {bracket(x, y), -(sign(f, x.end_degree() * y.end_degree()) * bracket(y, x))};
}

// Random draws for the driver below. draw(parity, min_arity, out) fills out
// with a random cochain whose End-degree has the given parity (-1: any);
// like(x, out) fills out with a random cochain shaped like x.
template <class C>
struct Sampler {
  std::function<bool(int, int, C&)> draw;
  std::function<void(const C&, C&)> like;
  std::function<std::string(const C&, const C&)> describe;
};

inline const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{
      "brace_relation", "square_bracket",   "cup_associativity", "leibniz",
      "commutativity_witness", "derivation_witness", "sq_cup_witness", "sq_additivity",
      "bracket_antisymmetry",  "differential_squares_to_zero"};
  return names;
}

template <class C>
PropsReport run_suite(const Sampler<C>& s, const Field& field, int trials, std::mt19937_64& rng) {
  const bool char2 = field.characteristic() == 2;
  PropsReport rep;
  rep.algebra = field.name();
  for (const auto& n : suite_names()) {
    IdentityOutcome o;
    o.name = n;
    rep.identities.push_back(o);
  }
  std::uniform_int_distribution<int> small(1, 2);
  const int odd = char2 ? -1 : 1;
  using Maker = std::function<std::optional<Sides<C>>()>;
  C x, y, z, w, last_d1;
  auto two = [&](int parity) { return s.draw(parity, 0, x) && s.draw(parity, 0, y); };
  std::vector<Maker> makers{
      [&]() -> std::optional<Sides<C>> {
        int m = small(rng), n = small(rng);
        std::vector<C> ys, zs;
        for (int k = 0; k < m; ++k) {
          if (!s.draw(-1, 0, w)) return std::nullopt;
          ys.push_back(w);
        }
        for (int k = 0; k < n; ++k) {
          if (!s.draw(-1, 0, w)) return std::nullopt;
          zs.push_back(w);
        }
        if (!s.draw(-1, 1, x)) return std::nullopt;
        return brace_relation(x, ys, zs);
      },
      [&]() -> std::optional<Sides<C>> {
        if (!s.draw(odd, 0, x) || !s.draw(-1, 0, y)) return std::nullopt;
        return square_bracket(x, y);
      },
      [&]() -> std::optional<Sides<C>> {
        if (!two(-1) || !s.draw(-1, 0, z)) return std::nullopt;
        return cup_associativity(x, y, z);
      },
      [&]() -> std::optional<Sides<C>> {
        if (!two(-1)) return std::nullopt;
        return leibniz(x, y);
      },
      [&]() -> std::optional<Sides<C>> {
        if (!two(-1)) return std::nullopt;
        return commutativity_witness(x, y);
      },
      [&]() -> std::optional<Sides<C>> {
        if (!two(-1) || !s.draw(-1, 0, z)) return std::nullopt;
        return derivation_witness(x, y, z);
      },
      [&]() -> std::optional<Sides<C>> {
        if (!two(odd)) return std::nullopt;
        return sq_cup_witness(x, y);
      },
      [&]() -> std::optional<Sides<C>> {
        if (!s.draw(odd, 0, x)) return std::nullopt;
        s.like(x, y);
        return sq_additivity(x, y);
      },
      [&]() -> std::optional<Sides<C>> {
        if (!two(-1)) return std::nullopt;
        return bracket_antisymmetry(x, y);
      },
      [&]() -> std::optional<Sides<C>> {
        if (!s.draw(-1, 0, x)) return std::nullopt;
        last_d1 = hoch_d(x);
        C dd = hoch_d(last_d1);
        return Sides<C>{dd, dd - dd};
      },
  };

  // Draws are retried a few times so that most checks compare nonzero sides.
  constexpr int kAttempts = 6;
  for (int trial = 0; trial < trials; ++trial) {
    for (std::size_t idx = 0; idx < makers.size(); ++idx) {
      auto& o = rep.identities[idx];
      std::optional<Sides<C>> sides;
      bool nontrivial = false;
      for (int attempt = 0; attempt < kAttempts && !nontrivial; ++attempt) {
        auto got = makers[idx]();
        if (!got) continue;
        sides = std::move(got);
        nontrivial = !sides->first.is_zero() || !sides->second.is_zero();
        if (idx == 9) nontrivial = !last_d1.is_zero();
      }
      if (!sides) {
        ++o.skipped;
        continue;
      }
      ++o.checked;
      if (nontrivial) ++o.nontrivial;
      if (sides->first != sides->second) {
        if (!o.failed) o.first_failure = s.describe(sides->first, sides->second);
        ++o.failed;
      }
    }
  }
  return rep;
}

}  // namespace forms
}  // namespace hoch

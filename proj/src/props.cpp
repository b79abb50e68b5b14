#include "hoch/props.hpp"

#include <algorithm>
#include <sstream>

#include "hoch/errors.hpp"

namespace hoch {

namespace identities {

Sides brace_relation(const Cochain& x, const std::vector<Cochain>& ys, const std::vector<Cochain>& zs) {
  return forms::brace_relation(x, ys, zs);
}
Sides square_bracket(const Cochain& x, const Cochain& y) { return forms::square_bracket(x, y); }
Sides cup_associativity(const Cochain& x, const Cochain& y, const Cochain& z) {
  return forms::cup_associativity(x, y, z);
}
Sides leibniz(const Cochain& x, const Cochain& y) { return forms::leibniz(x, y); }
Sides commutativity_witness(const Cochain& x, const Cochain& y) { return forms::commutativity_witness(x, y); }
Sides derivation_witness(const Cochain& x, const Cochain& y, const Cochain& z) {
  return forms::derivation_witness(x, y, z);
}
Sides sq_cup_witness(const Cochain& x, const Cochain& y) { return forms::sq_cup_witness(x, y); }
Sides sq_additivity(const Cochain& x, const Cochain& y) { return forms::sq_additivity(x, y); }
Sides bracket_antisymmetry(const Cochain& x, const Cochain& y) { return forms::bracket_antisymmetry(x, y); }

Sides euler_eigen(const Cochain& y) {
  Cochain d = euler_delta(y.algebra());
  return {bracket(d, y), y.field().from_int(y.bidegree().second) * y};
}

Sides euler_square(const AlgebraPtr& a) {
  Cochain d = euler_delta(a);
  return {cup(d, d), -hoch_d(euler_beta(a))};
}

Sides euler_commutation(const Cochain& y, const Cochain& x) {
  Cochain d = euler_delta(y.algebra());
  return {cup(y, x), bracket(y, cup(d, x)) + cup(d, bracket(y, x))};
}

}  // namespace identities

bool random_end_degree(const GradedAlgebra& a, int p, std::mt19937_64& rng, int parity, int& d) {
  std::uniform_int_distribution<int> pick(0, a.dim() - 1);
  for (int attempt = 0; attempt < 64; ++attempt) {
    int s = a.sdegree(pick(rng));
    for (int j = 0; j < p; ++j) s -= a.sdegree(pick(rng));
    if (parity < 0 || ((s % 2 + 2) % 2) == parity) {
      d = s;
      return true;
    }
  }
  return false;
}

namespace {

std::string describe(const Cochain& lhs, const Cochain& rhs) {
  std::ostringstream os;
  Cochain diff = lhs - rhs;
  os << "bidegree (" << lhs.bidegree().first << "," << lhs.bidegree().second << "), "
     << diff.size() << " differing tuples";
  if (!diff.is_zero()) {
    const auto& [t, v] = *diff.table().begin();
    os << ", first at (";
    for (std::size_t i = 0; i < t.size(); ++i) os << (i ? "," : "") << lhs.algebra()->name(t[i]);
    os << ")";
  }
  return os.str();
}

}  // namespace

PropsReport run_identity_suite(const AlgebraPtr& a, int trials, std::uint64_t seed, int max_arity) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> arity(0, max_arity);
  forms::Sampler<Cochain> s;
  s.draw = [&](int parity, int min_arity, Cochain& out) {
    for (int attempt = 0; attempt < 16; ++attempt) {
      int p = std::max(min_arity, arity(rng)), d;
      if (!random_end_degree(*a, p, rng, parity, d)) continue;
      out = random_cochain(a, p, d, rng);
      return true;
    }
    return false;
  };
  s.like = [&](const Cochain& x, Cochain& out) { out = random_cochain(a, x.arity(), x.end_degree(), rng); };
  s.describe = describe;
  return forms::run_suite(s, a->field(), trials, rng);
}

}  // namespace hoch

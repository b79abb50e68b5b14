#pragma once

// Exact chain-level identities of the brace calculus, and a randomized
// driver that checks them.

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "hoch/cochain.hpp"
#include "hoch/identity_forms.hpp"

namespace hoch {

// Each function returns (lhs, rhs); the identity holds when they are equal.
namespace identities {

using Sides = std::pair<Cochain, Cochain>;

// x{y_1..y_m}{z_1..z_n} as the signed sum over insertions of the z's.
Sides brace_relation(const Cochain& x, const std::vector<Cochain>& ys, const std::vector<Cochain>& zs);
// [x{x}, y] = [x, [x, y]]
Sides square_bracket(const Cochain& x, const Cochain& y);
Sides cup_associativity(const Cochain& x, const Cochain& y, const Cochain& z);
Sides leibniz(const Cochain& x, const Cochain& y);
// Homotopy commutativity of the cup product.
Sides commutativity_witness(const Cochain& x, const Cochain& y);
// The bracket is a derivation of the cup product up to homotopy.
Sides derivation_witness(const Cochain& x, const Cochain& y, const Cochain& z);
// The ten-term homotopy relating Sq(x cup y) to squares and brackets.
Sides sq_cup_witness(const Cochain& x, const Cochain& y);
Sides sq_additivity(const Cochain& x, const Cochain& y);
Sides bracket_antisymmetry(const Cochain& x, const Cochain& y);
// [delta, y] = q y
Sides euler_eigen(const Cochain& y);
// delta cup delta = -[m2, beta]
Sides euler_square(const AlgebraPtr& a);
// y cup x = [y, delta cup x] + delta cup [y, x]
Sides euler_commutation(const Cochain& y, const Cochain& x);

}  // namespace identities

PropsReport run_identity_suite(const AlgebraPtr& a, int trials, std::uint64_t seed, int max_arity = 3);

// A random End-degree for which arity-p cochains can be nonzero; with parity
// set, only degrees of that parity are accepted. Returns false if none found.
bool random_end_degree(const GradedAlgebra& a, int p, std::mt19937_64& rng, int parity, int& d);

}  // namespace hoch

#pragma once

// OpenMP composition kernel and the serial direct-evaluation reference it is
// tested against.

#include "hoch/cochain.hpp"

namespace hoch {

namespace kernels {

// 0 leaves the OpenMP default in place.
void set_threads(int n);
int max_threads();

// Entries of f o_i g, computed in parallel over the entries of g. Each entry
// of g yields a disjoint set of output tuples, so the merge is a union.
Table compose_table(const Cochain& f, int i, const Cochain& g);

}  // namespace kernels

namespace reference {

// Evaluates every output tuple of the right degree directly from the
// definition. Serial and slow; used as a test oracle and benchmark baseline.
Cochain compose_direct(const Cochain& f, int i, const Cochain& g);
Cochain brace_direct(const Cochain& f, const std::vector<Cochain>& args);
// [m2, f] from the expanded formula m2 o_1 f + m2 o_2 f - (-1)^d sum_i f o_i m2.
Cochain hoch_d_direct(const Cochain& f);

}  // namespace reference

}  // namespace hoch

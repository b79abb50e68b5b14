#pragma once

// Obstructions to extending an A_k structure to A_{k+1}: the cocycle
// SI(k+1), its class, the page-3 test through [m3, -], and a greedy solver.

#include <optional>
#include <string>
#include <vector>

#include "hoch/ainf.hpp"

namespace hoch {

// SI(k+1). ValidationError if s is invalid.
Cochain obstruction_cocycle(const AInfStructure& s);
// Class of SI(k+1) in HH^{k+1,2-k}. Needs k >= 3.
CohomClass theta_page2(const AInfStructure& s, Cohomology& h);

enum class Page3Status { Vanishes, Nonzero, Undecided };
std::string to_string(Page3Status s);

// Data from which a page-3 verdict can be rechecked without the solver.
// With y the coordinates of b_{k-1} in the basis of HH^{k-1,3-k}, the class
// of the corrected obstruction is
//   target + sum_i y_i linear_i + sum_i y_i^2 square_i + sum_{i<j} y_i y_j cross_ij
// in the basis of HH^{k+1,2-k}; the quadratic terms occur only for k = 4.
struct Page3Data {
  int k = 0;
  SparseVector target;
  std::vector<SparseVector> linear;
  std::vector<SparseVector> square;
  std::vector<std::vector<SparseVector>> cross;  // cross[i][j - i - 1]
  std::string method;                            // "linear", "enumeration", "candidates"
  std::size_t candidates = 0;                    // tried, for enumeration and candidates
  SparseVector functional;  // linear method: kills every linear_i, not target
};

struct Page3Result {
  Page3Status status = Page3Status::Undecided;
  std::optional<Cochain> b_prev;  // b_{k-1}, a cocycle
  std::optional<Cochain> b_top;   // b_k
  SparseVector coordinates;       // of b_{k-1}
  Page3Data data;
  std::string reason;
};

struct Page3Options {
  std::size_t enumeration_limit = 1000000;
};

// Decides whether a cocycle b_{k-1} and a cochain b_k exist with
// hoch_d(b_k) = -SI(k+1) - [m3, b_{k-1}] - (b_{k-1}{b_{k-1}} if k = 4).
// Needs k >= 4.
Page3Result theta_page3_check(const AInfStructure& s, Cohomology& h, const Page3Options& opt = {});
// The corrected class for the given coordinates, from the recorded data.
SparseVector page3_value(const Page3Data& d, const SparseVector& y, const Field& f);
// Rechecks a Nonzero verdict: the functional for the linear method, a fresh
// exhaustive enumeration for the quadratic one.
bool check_page3_nonzero(const Page3Data& d, const Field& f);

struct ObstructionReport {
  int k = 0;
  int l = 0;  // deepest level tried
  Cochain cocycle;
  bool cochain_vanishes = false;
  std::optional<CohomClass> page2_class;
  std::optional<Cochain> page2_witness;  // b_k
  std::optional<CoboundaryCertificate> page2_certificate;
  std::optional<Page3Result> page3;
};

// Full report down to level l.
ObstructionReport obstruct(const AInfStructure& s, Cohomology& h, int l, const Page3Options& opt = {});

struct ExtendResult {
  bool ok = false;
  int l = 0;
  std::optional<AInfStructure> structure;  // A_{k+1} with m_{k+1} = 0
  ObstructionReport report;
};

// l must be k, k-1 or k-2 with l >= 2 and k >= 4 for k-2; else
// UnsupportedError. Every success is re-validated.
ExtendResult extend_once(const AInfStructure& s, int l, Cohomology& h, const Page3Options& opt = {});

struct ExtendStep {
  int from_k = 0;
  int l = 0;
  bool ok = false;
};

struct ExtendTrace {
  bool ok = false;
  std::vector<ExtendStep> steps;
  AInfStructure last;  // furthest structure reached
  std::optional<ObstructionReport> failure;
};

// Greedy: each step tries l = k, k-1, k-2 in that order.
ExtendTrace extend_to(const AInfStructure& s, int K, Cohomology& h, const Page3Options& opt = {});

}  // namespace hoch

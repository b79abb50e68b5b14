#pragma once

// Commands of the hoch tool. Exit codes: 0 success or vanishing, 1 input or
// validation error, 2 certified nonzero obstruction or failed identity,
// 3 undecided.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hoch/io.hpp"

namespace hoch::cli {

struct Flags {
  std::uint64_t seed = 0;
  std::optional<int> trials;
  std::optional<int> page;
  std::optional<int> characteristic;
  std::optional<int> max_poly_degree;
  int threads = 0;      // 0: library default
  bool timing = false;  // adds wall-clock seconds, which breaks byte-determinism
};

struct Outcome {
  io::Json report;
  int exit_code = 0;
  std::string text;  // plain-text summary
};

const std::vector<std::string>& commands();

// Never throws on bad input: errors become exit code 1 with an "error" entry.
Outcome run(const std::string& command, const std::string& document, const Flags& flags);

}  // namespace hoch::cli

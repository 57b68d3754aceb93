#pragma once

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "psh/ring.hpp"

namespace psh {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Character chosen by conductor and index among characters of that conductor.
struct CharacterSelector {
  int conductor = 0;
  std::size_t index = 0;
};

struct ArchBounds {
  int real_max_degree = 6;
  int real_max_n = 4;
  int complex_max_total = 5;
  int complex_max_n = 3;
};

/// Run configuration.  File format: `[section]` headers and `key = value`
/// lines; `#` starts a comment.  Unknown sections or keys, duplicates and
/// malformed values are errors.
///
///   [ring]    branch (padic|laurent), p, f, poly (space separated), level
///   [group]   n
///   [characters] select (space separated conductor:index pairs)
///   [double_cosets] m
///   [arch]    real_max_degree, real_max_n, complex_max_total, complex_max_n
///   [run]     seed, samples, budget, out
struct RunConfig {
  Branch branch = Branch::padic;
  int p = 2;
  int f = 1;
  std::vector<int> poly;
  int level = 2;
  int n = 2;
  std::vector<CharacterSelector> characters;
  int dc_level = -1;  // defaults to `level`
  ArchBounds arch;
  std::uint64_t seed = 1;
  int samples = 200;
  std::uint64_t budget = 1'000'000;
  std::string out;

  RingLevel ring() const;
  /// Throws ConfigError on out-of-range values.
  void validate() const;
};

RunConfig parse_config(std::istream& in);
RunConfig load_config(const std::string& path);

}  // namespace psh

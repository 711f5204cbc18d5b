// Subcommands of the minsum tool. Each returns the process exit status and
// writes only to the given streams, so tests can drive them in-process.
#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "minsum/oracle.hpp"

namespace minsum::cli {

enum ExitCode : int {
  exit_inside = 0,
  exit_outside = 1,
  exit_boundary = 2,
  exit_mismatch = 1,
  exit_internal = 70,
  exit_parse = 64,
  exit_dimension = 65,
  exit_unsupported = 66,
};

/// Relative tolerance, overridden by MINSUM_TOL when set (test use only).
Tolerance tolerance_from_env();

struct CheckOptions {
  std::string scenario_path;
  std::vector<double> point;
  std::optional<std::string> predicate;
};

struct RegionOptions {
  std::string scenario_path;
  std::array<double, 4> bbox{-1.0, 1.0, -1.0, 1.0};  // xmin xmax ymin ymax
  int nx = 200;
  int ny = 200;
  std::string csv_path;
  std::optional<std::string> svg_path;
  std::optional<std::string> predicate;
  unsigned threads = 1;
};

struct VerifyOptions {
  std::optional<std::string> scenario_path;  // random scenarios when empty
  std::string family = "two-smooth";
  std::uint64_t first_seed = 1;
  std::size_t seeds = 1;
  std::size_t points = 100;
  std::size_t necessity = 20;  // quadratic instances per seed
  std::optional<std::string> report_path;
  std::optional<std::string> predicate;
  oracle::PredicateFn predicate_fn;  // replaces the closed form (harness self-test)
};

int run_check(const CheckOptions& opt, std::ostream& out, std::ostream& err);
int run_region(const RegionOptions& opt, std::ostream& out, std::ostream& err);
int run_bounds(const std::string& scenario_path, std::ostream& out, std::ostream& err);
int run_verify(const VerifyOptions& opt, std::ostream& out, std::ostream& err);
int run_focal(const std::string& scenario_path, std::ostream& out, std::ostream& err);

/// Full command line (argv[0] included).
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace minsum::cli

#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "herglotz/problem.hpp"
#include "herglotz/verify.hpp"

namespace herglotz {

// Parsed problem file: a [problem] section (required), an optional [solver]
// section with the solver knobs (defaults applied here), and optional
// [symmetry] / [finite_symmetry] sections.
//
// Format: INI-like key = value lines; '#' starts a comment outside quotes;
// numbers are decimal with optional exponent; expressions are quoted strings;
// arrays are single-line bracketed lists, nested one level for x_init.
struct ProblemFile {
  HerglotzProblem problem;

  std::string method = "shooting";
  std::size_t grid_points = 1001;
  bool grid_points_given = false;  // lets flags/env take precedence cleanly
  double tolerance = 1e-8;
  int max_iterations = 50;
  int multistart = 8;
  std::uint64_t seed = 42;

  std::optional<SymmetryFamily> symmetry;
  std::optional<FiniteFamily> finite_symmetry;
};

ProblemFile parse_problem_file(const std::string& text, const std::string& filename);
ProblemFile load_problem_file(const std::string& path);

}  // namespace herglotz

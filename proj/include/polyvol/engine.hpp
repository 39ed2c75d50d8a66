#pragma once

// Driver tying the pieces together: text input -> cone -> one of the three
// volume algorithms -> renderable report.  Runs are attempted in the checked
// 64-bit word tier first and restarted from scratch with GMP integers if
// anything overflows, so callers never see Overflow.

#include <cstddef>
#include <cstdint>
#include <string>

#include "polyvol/input.hpp"
#include "polyvol/report.hpp"

namespace polyvol {

enum class Algorithm { Auto, Primal, Descent, Lawrence };
enum class ArithChoice { Auto, Word, Big };

const char* algorithm_name(Algorithm a);

// Deterministic algorithm choice from cone statistics.  Lawrence wants few
// support forms; descent tolerates moderately many, and is the natural pick
// for constraint input; the primal triangulation is the fallback for
// vertex-heavy input.
Algorithm auto_select_counts(size_t cone_dim, size_t n_forms, size_t n_rays,
                             bool vertices_mode);

struct RunOptions {
  Algorithm algorithm = Algorithm::Auto;
  ArithChoice arith = ArithChoice::Auto;
  bool fixed = false;        // fixed-precision accumulation (lawrence only)
  unsigned digits = 100;     // fractional digits in fixed mode
  int threads = 0;           // 0: leave the OpenMP default alone
  uint64_t seed = 0;         // generic-direction and verification sampling
  unsigned pattern_depth = 1;
  bool euclidean = false;
  uint64_t verify_samples = 0;        // 0: no verification
  std::string export_triangulation;   // output path; empty: off
};

// Throws Error on any failure; exit codes follow Error::exit_code().
ReportData run_problem(const ProblemInput& pi, const RunOptions& opt);

}  // namespace polyvol

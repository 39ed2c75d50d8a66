#pragma once

// Text format for polytope descriptions.  A file is a sequence of keyword
// blocks; '#' starts a comment, tokens are whitespace-separated and rows may
// wrap across lines:
//
//   amb_space n          ambient dimension, must come first
//   vertices r           r rows of n rationals ("a" or "a/b")
//   inequalities r       r rows of n+1 integers (a, b) meaning a.x + b >= 0
//   equations r          r rows of n+1 integers (a, b) meaning a.x + b  = 0
//   grading              one row of n+1 integers (degree of (x, 1))
//
// A file gives either vertices or constraints, never both.  Numbers are kept
// verbatim as strings here; spec_from_input converts them into a concrete
// integer tier, so oversized literals simply overflow the word tier and get
// picked up by the arbitrary-precision restart.

#include <cstddef>
#include <string>
#include <vector>

#include "polyvol/arith.hpp"
#include "polyvol/cone.hpp"
#include "polyvol/matrix.hpp"

namespace polyvol {

struct ProblemInput {
  bool vertices_mode = true;
  size_t ambient_n = 0;
  std::vector<std::vector<std::string>> vertices;      // r x n
  std::vector<std::vector<std::string>> inequalities;  // r x (n+1)
  std::vector<std::vector<std::string>> equations;     // r x (n+1)
  std::vector<std::string> grading;                    // empty or n+1 wide
  bool operator==(const ProblemInput&) const = default;
};

// Throws Error(ParseError) with a line number for malformed text and
// Error(InconsistentDimensions) when vertices are mixed with constraints.
ProblemInput parse_input(const std::string& text);

// Inverse of parse_input up to comments and whitespace: parsing the output
// reproduces the ProblemInput exactly.
std::string serialize_input(const ProblemInput& pi);

// Convert the validated text form into concrete integers.  Vertex rows are
// homogenized by clearing denominators per row: (a_1/b_1, ..., a_n/b_n)
// becomes (a_1 s/b_1, ..., a_n s/b_n, s) with s = lcm(b_j).
template <class Int>
PolytopeSpec<Int> spec_from_input(const ProblemInput& pi) {
  using Ops = IntOps<Int>;
  const size_t n = pi.ambient_n;
  const size_t w = n + 1;
  PolytopeSpec<Int> spec;
  spec.vertices_mode = pi.vertices_mode;
  spec.ambient_n = n;
  spec.gens = Matrix<Int>(0, w);
  spec.ineqs = Matrix<Int>(0, w);
  spec.eqs = Matrix<Int>(0, w);

  for (const auto& row : pi.vertices) {
    std::vector<Int> num(n), den(n);
    Int s = Ops::one();
    for (size_t j = 0; j < n; ++j) {
      const std::string& t = row[j];
      size_t slash = t.find('/');
      if (slash == std::string::npos) {
        num[j] = Ops::from_string(t);
        den[j] = Ops::one();
      } else {
        num[j] = Ops::from_string(t.substr(0, slash));
        den[j] = Ops::from_string(t.substr(slash + 1));
      }
      s = s / Ops::gcd(s, den[j]) * den[j];
    }
    Vec<Int> g(w);
    for (size_t j = 0; j < n; ++j) g[j] = num[j] * (s / den[j]);
    g[n] = s;
    spec.gens.append_row(g);
  }

  auto fill = [&](Matrix<Int>& m,
                  const std::vector<std::vector<std::string>>& rows) {
    for (const auto& row : rows) {
      Vec<Int> g(w);
      for (size_t j = 0; j < w; ++j) g[j] = Ops::from_string(row[j]);
      m.append_row(g);
    }
  };
  fill(spec.ineqs, pi.inequalities);
  fill(spec.eqs, pi.equations);

  Vec<Int> dflt(w, Ops::zero());
  dflt[n] = Ops::one();
  if (pi.grading.empty()) {
    spec.grading = dflt;
    spec.default_grading = true;
  } else {
    spec.grading.resize(w);
    for (size_t j = 0; j < w; ++j) spec.grading[j] = Ops::from_string(pi.grading[j]);
    spec.default_grading = (spec.grading == dflt);
  }
  return spec;
}

}  // namespace polyvol

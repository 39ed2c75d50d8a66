#pragma once

// Rendering of run results as text or JSON.  ReportData is deliberately
// tier-free (strings and counters only) so one renderer serves both integer
// tiers; the driver fills it from whichever result type the run produced.

#include <cstdint>
#include <string>
#include <vector>

#include "polyvol/rational.hpp"

namespace polyvol {

// Integer string of 10^-digits units -> plain decimal, truncation untouched:
// ("1234", 2) -> "12.34", ("-5", 3) -> "-0.005".
std::string fixed_point_string(const std::string& units, unsigned digits);

// Decimal rendering of a rational, truncated toward zero, with `sig`
// significant digits in total; at least one fractional digit always remains
// so exactness loss stays visible.
template <class Int>
std::string decimal_string(const Rational<Int>& v, size_t sig = 30) {
  using Big = IntOps<BigInt>;
  if (v.is_zero()) return "0";
  // The 10^frac scaling easily exceeds the word tier, so render through GMP
  // regardless of the tier the value was computed in.
  Rational<BigInt> a(Big::from_string(IntOps<Int>::str(v.num())),
                     Big::from_string(IntOps<Int>::str(v.den())));
  a = a.abs();
  std::string ipart = Big::str(a.truncate_scaled(0));
  size_t m = ipart == "0" ? 0 : ipart.size();
  unsigned frac = static_cast<unsigned>(m + 1 >= sig ? 1 : sig - m);
  std::string s = fixed_point_string(Big::str(a.truncate_scaled(frac)), frac);
  return v.sign() < 0 ? "-" + s : s;
}

struct ReportData {
  std::string algorithm;  // primal | descent | lawrence
  std::string arith;      // word | big | big(restarted)
  bool fixed_mode = false;

  // Exact mode: numerator/denominator strings plus a decimal rendering.
  std::string vol_num, vol_den, vol_decimal;
  std::string pyr_num, pyr_den;

  // Fixed mode: already-rendered decimals with exactly p fractional digits.
  std::string vol_fixed, vol_err;
  std::string pyr_fixed, pyr_err;

  std::string grading_denominator;

  bool have_euclidean = false;
  std::string euclid_num, euclid_den, euclid_decimal;

  bool have_cells = false;
  uint64_t triangulation_cells = 0;
  bool have_hollow = false;
  uint64_t hollow_facets = 0;
  bool have_generic = false;
  uint32_t generic_retries = 0;
  uint32_t reshuffles = 0;
  bool have_layers = false;
  std::vector<uint64_t> descent_layers;

  bool verify_ran = false;
  uint64_t verify_samples = 0;

  std::vector<std::string> notes;
  int64_t wall_ms = 0;
};

std::string render_text(const ReportData& rd);
std::string render_json(const ReportData& rd);

}  // namespace polyvol

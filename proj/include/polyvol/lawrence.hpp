#pragma once

// Volume through a signed decomposition of the polytope indicator.  The dual
// cone is triangulated; every facet of that triangulation lying on the
// boundary spawns one simplicial cone over a generic interior direction, and
// each such cone contributes a simplex volume with a sign.  The signed sum
// telescopes to the polytope volume, and the certificate (cell list plus
// signs) can be re-checked by random point sampling.

#include <atomic>
#include <bit>
#include <cstdint>
#include <exception>
#include <map>
#include <set>
#include <unordered_map>
#include <utility>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "polyvol/cone.hpp"
#include "polyvol/pyramid.hpp"
#include "polyvol/triangulation.hpp"
#include "polyvol/volume_primal.hpp"

namespace polyvol {

struct LawrenceOptions {
  uint64_t seed = 0;
  unsigned pattern_depth = 1;  // facet key prefix length for chunked counting
  bool fixed = false;          // accumulate truncated units instead of exact sums
  unsigned digits = 100;       // fixed mode: decimal digits after the point
  bool collect_verify = false; // keep the decomposition for later sampling
};

struct LawrenceDiag {
  uint64_t triangulation_cells = 0;
  uint64_t hollow_facets = 0;  // also the number of signed summands
  uint32_t generic_retries = 0;
  uint32_t reshuffles = 0;
};

// One simplicial cone of the decomposition: d-1 support form indices plus the
// generic direction as the implicit last matrix row; eps holds the signs of
// the grading values on the dual basis, one per row.
struct VerifCell {
  std::vector<uint32_t> lam;
  std::vector<int8_t> eps;
};

template <class Int>
struct SignedDecomposition {
  Vec<Int> omega;
  std::vector<VerifCell> cells;
};

template <class Int>
struct LawrenceResult {
  bool fixed_mode = false;
  Rational<Int> vol_pyramid;
  Rational<Int> vol_polytope;
  Int fixed_units_pyramid = IntOps<Int>::zero();
  Int fixed_units_polytope = IntOps<Int>::zero();
  Int fixed_error_pyramid = IntOps<Int>::zero();   // in units of 10^-digits
  Int fixed_error_polytope = IntOps<Int>::zero();
  LawrenceDiag diag;
  SignedDecomposition<Int> decomposition;
};

namespace detail {

struct SplitMix64 {
  uint64_t state;
  explicit SplitMix64(uint64_t seed) : state(seed) {}
  uint64_t next() {
    uint64_t z = (state += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }
  uint64_t below(uint64_t n) {
    return static_cast<uint64_t>((static_cast<unsigned __int128>(next()) * n) >> 64);
  }
};

// std::shuffle is implementation defined, this one reproduces across builds
inline void fisher_yates(std::vector<uint32_t>& v, SplitMix64& rng) {
  for (size_t i = v.size(); i > 1; --i)
    std::swap(v[i - 1], v[rng.below(i)]);
}

// For every cell the positions whose opposite facet lies on the cone
// boundary, i.e. is covered by exactly one cell.  Facets are bucketed by the
// first pattern_depth entries of their key so that the counting table only
// ever holds one bucket.
inline std::vector<std::pair<uint32_t, uint64_t>> hollow_triangulation(
    const std::vector<TriCell>& cells, size_t d, unsigned depth) {
  if (d > 64)
    throw Error(ErrorKind::Internal, "facet mask wider than 64 bits");
  const size_t plen = std::min<size_t>(depth, d == 0 ? 0 : d - 1);

  std::map<std::vector<uint32_t>, std::vector<std::pair<uint32_t, uint32_t>>> chunks;
  std::vector<uint32_t> key;
  for (uint32_t t = 0; t < cells.size(); ++t) {
    const auto& rays = cells[t].rays;
    for (uint32_t j = 0; j < d; ++j) {
      key.clear();
      for (uint32_t r = 0; r < d && key.size() < plen; ++r)
        if (r != j) key.push_back(rays[r]);
      chunks[key].emplace_back(t, j);
    }
  }

  std::map<uint32_t, uint64_t> masks;
  std::unordered_map<std::vector<uint32_t>, int, U32VecHash> count;
  std::vector<uint32_t> facet;
  auto facet_of = [&](uint32_t t, uint32_t j) {
    facet.clear();
    const auto& rays = cells[t].rays;
    for (uint32_t r = 0; r < d; ++r)
      if (r != j) facet.push_back(rays[r]);
  };
  for (const auto& [prefix, members] : chunks) {
    count.clear();
    for (auto [t, j] : members) {
      facet_of(t, j);
      ++count[facet];
    }
    for (auto [t, j] : members) {
      facet_of(t, j);
      const int c = count[facet];
      if (c == 1)
        masks[t] |= uint64_t{1} << j;
      else if (c > 2)
        throw Error(ErrorKind::Internal, "facet shared by more than two cells");
    }
  }
  return {masks.begin(), masks.end()};
}

// t paired with every column of n
template <class Int>
Vec<Int> column_values(const Vec<Int>& t, const Matrix<Int>& n) {
  Vec<Int> out(n.cols(), IntOps<Int>::zero());
  for (size_t r = 0; r < n.rows(); ++r)
    for (size_t j = 0; j < n.cols(); ++j) out[j] += t[r] * n(r, j);
  return out;
}

// Values of a covector on the dual basis of the neighbouring cell where row
// pos is swapped for the covector mu, derived from the values vt on the
// current cell without touching the matrix.  The result is uniformly scaled:
// entry pos by -s, the others by -s*D with s the sign of vmu[pos] and D the
// current denominator, so value signs and ratios survive the transfer.
template <class Int>
Vec<Int> transfer_values(const Vec<Int>& vt, const Vec<Int>& vmu, size_t pos) {
  Vec<Int> kv(vt.size(), IntOps<Int>::zero());
  for (size_t i = 0; i < vt.size(); ++i) {
    if (i == pos)
      kv[i] = -vt[pos];
    else
      kv[i] = vmu[i] * vt[pos] - vmu[pos] * vt[i];
  }
  return kv;
}

template <class Int>
struct StarEval {
  Rational<Int> total;
  Int fixed_units = IntOps<Int>::zero();
  uint64_t terms = 0;
  std::vector<VerifCell> cells;
  std::vector<Rational<Int>> magnitudes;
};

template <class Int>
struct GenericDirection {
  Vec<Int> omega;
  uint32_t retries = 0;
};

// Every value that the evaluation divides by or takes the sign of is the
// pairing of omega with a dual basis vector of some scan cell (the d-1 facet
// forms completed by the grading row), so collecting all those columns gives
// the exact list of hyperplanes omega has to avoid.
template <class Int>
GenericDirection<Int> find_generic(const ConeModel<Int>& cm,
                                   const std::vector<TriCell>& cells,
                                   const std::vector<std::pair<uint32_t, uint64_t>>& groups,
                                   uint64_t seed) {
  const size_t d = cm.dim;
  const Matrix<Int>& forms = cm.support_forms;

  const int nw = worker_count();
  std::vector<std::vector<Vec<Int>>> crit(groups.size());
  std::vector<std::exception_ptr> errs(nw);
  std::atomic<bool> bad{false};
  const long ng = static_cast<long>(groups.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
  for (long gi = 0; gi < ng; ++gi) {
    if (bad.load(std::memory_order_relaxed)) continue;
    try {
      const auto& del = cells[groups[gi].first].rays;
      const uint64_t mask = groups[gi].second;
      for (size_t q = 0; q < d; ++q) {
        if (!((mask >> q) & 1)) continue;
        Matrix<Int> scan(0, d);
        for (size_t j = 0; j < d; ++j)
          if (j != q) scan.append_row(forms.row_vec(del[j]));
        scan.append_row(cm.grading);
        std::pair<Matrix<Int>, Int> nd;
        try {
          nd = invert_with_denominator(scan);
        } catch (const Error& e) {
          if (e.kind() == ErrorKind::SingularMatrix)
            throw Error(ErrorKind::DegenerateGrading,
                        "grading lies in the span of a boundary facet");
          throw;
        }
        for (size_t c = 0; c < d; ++c) {
          Vec<Int> col(d);
          for (size_t r = 0; r < d; ++r) col[r] = nd.first(r, c);
          crit[gi].push_back(std::move(col));
        }
      }
    } catch (...) {
      errs[worker_id()] = std::current_exception();
      bad.store(true, std::memory_order_relaxed);
    }
  }
  if (bad.load())
    for (auto& e : errs)
      if (e) std::rethrow_exception(e);

  // Two random interior vectors span a plane; on that plane each critical
  // hyperplane forbids at most one integer tilt a, so the smallest free a
  // gives a valid omega = a*w1 + w2.  Both vectors vanishing on the same
  // critical column is the only failure, then the pair is redrawn wider.
  SplitMix64 rng(seed);
  for (uint32_t attempt = 0; attempt < 10; ++attempt) {
    const uint64_t range = 10ull << attempt;
    auto draw = [&]() {
      Vec<Int> w(d, IntOps<Int>::zero());
      for (size_t i = 0; i < forms.rows(); ++i) {
        Int c = IntOps<Int>::from_i64(static_cast<int64_t>(rng.below(range)) + 1);
        for (size_t j = 0; j < d; ++j) w[j] += c * forms(i, j);
      }
      return w;
    };
    Vec<Int> w1 = draw();
    Vec<Int> w2 = draw();
    std::set<Int> forbidden;
    bool pair_fail = false;
    for (const auto& cols : crit) {
      for (const auto& m : cols) {
        Int x = dot(w1, m);
        Int y = dot(w2, m);
        if (sgn(x) == 0) {
          if (sgn(y) == 0) {
            pair_fail = true;
            break;
          }
          continue;
        }
        Int q = y / x;
        if (q * x == y && sgn(q) < 0) forbidden.insert(-q);
      }
      if (pair_fail) break;
    }
    if (pair_fail) continue;

    Int a1 = IntOps<Int>::one();
    for (int64_t k = 1; forbidden.count(a1) != 0; ++k)
      a1 = IntOps<Int>::from_i64(k + 1);
    GenericDirection<Int> out;
    out.retries = attempt;
    out.omega.assign(d, IntOps<Int>::zero());
    for (size_t j = 0; j < d; ++j) out.omega[j] = a1 * w1[j] + w2[j];
    return out;
  }
  throw Error(ErrorKind::ExhaustedCandidates,
              "no generic direction found after 10 attempts");
}

// Evaluate the signed sum over all star cells.  Within a group (one
// triangulation cell, all its hollow positions) only the first cell is
// inverted; the remaining ones reuse it through value transfers.
template <class Int>
StarEval<Int> evaluate_star(const ConeModel<Int>& cm, const std::vector<TriCell>& cells,
                            const std::vector<std::pair<uint32_t, uint64_t>>& groups,
                            const Vec<Int>& omega, bool fixed, unsigned digits,
                            bool collect) {
  using Ops = IntOps<Int>;
  using Q = Rational<Int>;
  const size_t d = cm.dim;
  const Matrix<Int>& forms = cm.support_forms;

  StarEval<Int> ev;
  for (const auto& [tc, mask] : groups) ev.terms += std::popcount(mask);

  const int nw = worker_count();
  std::vector<AdditionPyramid<Int>> pyr(nw);
  std::vector<Int> units(nw, Ops::zero());
  std::vector<std::exception_ptr> errs(nw);
  std::atomic<bool> bad{false};
  std::vector<std::vector<VerifCell>> cell_buf(collect ? groups.size() : 0);
  std::vector<std::vector<Q>> mag_buf(collect ? groups.size() : 0);

  const long ng = static_cast<long>(groups.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
  for (long gi = 0; gi < ng; ++gi) {
    if (bad.load(std::memory_order_relaxed)) continue;
    const int w = worker_id();
    try {
      const auto& del = cells[groups[gi].first].rays;
      const uint64_t mask = groups[gi].second;
      std::vector<uint32_t> qs;
      for (uint32_t q = 0; q < d; ++q)
        if ((mask >> q) & 1) qs.push_back(q);

      auto emit = [&](size_t e, const Q& mag) {
        if (fixed) {
          Int u = mag.truncate_scaled(digits);
          if (e & 1)
            units[w] -= u;
          else
            units[w] += u;
        } else {
          pyr[w].add((e & 1) ? -mag : mag);
        }
      };

      const uint32_t q1 = qs[0];
      Matrix<Int> base(0, d);
      for (size_t j = 0; j < d; ++j)
        if (j != q1) base.append_row(forms.row_vec(del[j]));
      base.append_row(omega);
      auto [n, den] = invert_with_denominator(base);
      Vec<Int> vdeg = column_values(cm.grading, n);
      size_t e = 0;
      for (const Int& v : vdeg) {
        int s = sgn(v);
        if (s == 0)
          throw Error(ErrorKind::GenericityViolated, "direction hit a degree hyperplane");
        if (s < 0) ++e;
      }
      Q mag(Ops::one(), den);
      for (const Int& v : vdeg) mag *= Q(den, Ops::abs(v));
      emit(e, mag);
      if (collect) {
        VerifCell vc;
        for (size_t j = 0; j < d; ++j)
          if (j != q1) vc.lam.push_back(del[j]);
        for (const Int& v : vdeg) vc.eps.push_back(static_cast<int8_t>(sgn(v)));
        cell_buf[gi].push_back(std::move(vc));
        mag_buf[gi].push_back(mag);
      }

      if (qs.size() > 1) {
        Vec<Int> mu = forms.row_vec(del[q1]);
        Vec<Int> vmu = column_values(mu, n);
        for (size_t qi = 1; qi < qs.size(); ++qi) {
          const uint32_t qj = qs[qi];
          const size_t pos = qj - 1;
          const int smu = sgn(vmu[pos]);
          if (smu == 0)
            throw Error(ErrorKind::GenericityViolated, "direction lies in a facet span");
          Vec<Int> kdeg = transfer_values(vdeg, vmu, pos);
          size_t raw = 0;
          for (const Int& v : kdeg) {
            int s = sgn(v);
            if (s == 0)
              throw Error(ErrorKind::GenericityViolated, "direction hit a degree hyperplane");
            if (s < 0) ++raw;
          }
          const size_t e2 = smu > 0 ? d - raw : raw;
          Int a = Ops::abs(vmu[pos]) * den;
          Q mag2(Ops::one(), Ops::abs(kdeg[pos]));
          for (size_t i = 0; i < d; ++i)
            if (i != pos) mag2 *= Q(a, Ops::abs(kdeg[i]));
          emit(e2, mag2);

          if (collect) {
            // invert the cell directly: the certificate must not lean on the
            // transfer it is meant to certify
            VerifCell vc;
            Matrix<Int> m2(0, d);
            for (size_t j = 0; j < d; ++j)
              if (j != qj) {
                vc.lam.push_back(del[j]);
                m2.append_row(forms.row_vec(del[j]));
              }
            m2.append_row(omega);
            auto [n2, den2] = invert_with_denominator(m2);
            if (den2 != Ops::abs(vmu[pos]))
              throw Error(ErrorKind::Internal, "transfer denominator mismatch");
            Vec<Int> vdeg2 = column_values(cm.grading, n2);
            const int flip = smu > 0 ? -1 : 1;
            for (size_t r = 0; r < d; ++r) {
              // row r of the sorted cell sits at p in the transferred order
              size_t p = r;
              if (r < d - 1 && r >= q1) p = (r == q1) ? pos : (r <= pos ? r - 1 : r);
              if (sgn(vdeg2[r]) != flip * sgn(kdeg[p]))
                throw Error(ErrorKind::Internal, "transferred signs disagree with inversion");
              vc.eps.push_back(static_cast<int8_t>(sgn(vdeg2[r])));
            }
            cell_buf[gi].push_back(std::move(vc));
            mag_buf[gi].push_back(mag2);
          }
        }
      }
    } catch (...) {
      errs[w] = std::current_exception();
      bad.store(true, std::memory_order_relaxed);
    }
  }
  if (bad.load())
    for (auto& ep : errs)
      if (ep) std::rethrow_exception(ep);

  if (fixed) {
    for (const Int& u : units) ev.fixed_units += u;
  } else {
    for (auto& p : pyr) ev.total += p.total();
  }
  if (collect) {
    for (size_t gi = 0; gi < cell_buf.size(); ++gi) {
      for (auto& vc : cell_buf[gi]) ev.cells.push_back(std::move(vc));
      for (auto& m : mag_buf[gi]) ev.magnitudes.push_back(std::move(m));
    }
  }
  return ev;
}

}  // namespace detail

template <class Int>
LawrenceResult<Int> volume_lawrence(const ConeModel<Int>& cm, const LawrenceOptions& opts) {
  LawrenceResult<Int> res;
  res.fixed_mode = opts.fixed;

  std::vector<uint32_t> order = lex_order(cm.support_forms);
  detail::SplitMix64 shuffler(opts.seed ^ 0xC2B2AE3D27D4EB4Full);
  for (uint32_t attempt = 0;; ++attempt) {
    try {
      auto tri = placing_triangulation_ordered(cm.support_forms, order);
      auto groups = detail::hollow_triangulation(tri.cells, cm.dim, opts.pattern_depth);
      auto gd = detail::find_generic(cm, tri.cells, groups, opts.seed);
      auto ev = detail::evaluate_star(cm, tri.cells, groups, gd.omega, opts.fixed,
                                      opts.digits, opts.collect_verify);
      res.diag.triangulation_cells = tri.cells.size();
      res.diag.hollow_facets = ev.terms;
      res.diag.generic_retries = gd.retries;
      res.diag.reshuffles = attempt;
      const Int& k = cm.grading_denominator;
      if (opts.fixed) {
        res.fixed_units_pyramid = ev.fixed_units;
        res.fixed_units_polytope = ev.fixed_units * k;
        res.fixed_error_pyramid = IntOps<Int>::from_i64(static_cast<int64_t>(ev.terms));
        res.fixed_error_polytope = res.fixed_error_pyramid * k;
      } else {
        res.vol_pyramid = ev.total;
        res.vol_polytope = ev.total * Rational<Int>(k);
      }
      if (opts.collect_verify) {
        res.decomposition.omega = std::move(gd.omega);
        res.decomposition.cells = std::move(ev.cells);
      }
      return res;
    } catch (const Error& e) {
      // a grading inside a boundary facet span spoils the scan cells for
      // this particular triangulation; try another placing order
      if (e.kind() != ErrorKind::DegenerateGrading || attempt >= 9) throw;
      detail::fisher_yates(order, shuffler);
    }
  }
}

// Monte Carlo check of the signed indicator identity: for random integer
// points, membership in the cone over the polytope must equal the signed
// count of decomposition cones containing the point.  Samples touching any
// of the finitely many exceptional hyperplanes are redrawn.
template <class Int>
void verify_decomposition(const ConeModel<Int>& cm, const SignedDecomposition<Int>& sd,
                          uint64_t samples, uint64_t seed) {
  using Ops = IntOps<Int>;
  const size_t d = cm.dim;
  const Matrix<Int>& forms = cm.support_forms;
  if (sd.omega.size() != d)
    throw Error(ErrorKind::VerificationFailed, "decomposition direction has wrong width");

  std::vector<Matrix<Int>> mats;
  std::vector<int> signs;
  mats.reserve(sd.cells.size());
  for (const auto& vc : sd.cells) {
    if (vc.lam.size() + 1 != d || vc.eps.size() != d)
      throw Error(ErrorKind::VerificationFailed, "malformed decomposition cell");
    Matrix<Int> m(0, d);
    for (uint32_t f : vc.lam) {
      if (f >= forms.rows())
        throw Error(ErrorKind::VerificationFailed, "cell references unknown support form");
      m.append_row(forms.row_vec(f));
    }
    m.append_row(sd.omega);
    mats.push_back(std::move(m));
    int s = 1;
    for (int8_t e : vc.eps) {
      if (e != 1 && e != -1)
        throw Error(ErrorKind::VerificationFailed, "cell sign vector is not a sign vector");
      s *= e;
    }
    signs.push_back(s);
  }

  detail::SplitMix64 rng(seed ^ 0x9E3779B97F4A7C15ull);
  const int64_t box = 1000000;
  uint64_t done = 0, draws = 0;
  Vec<Int> y(d, Ops::zero());
  while (done < samples) {
    if (++draws > 64 * samples + 256)
      throw Error(ErrorKind::Internal, "sampling kept hitting exceptional hyperplanes");
    for (auto& c : y)
      c = Ops::from_i64(static_cast<int64_t>(rng.below(2 * box + 1)) - box);
    const int sg = sgn(dot(cm.grading, y));
    if (sg == 0) continue;

    bool degenerate = false;
    int lhs = 1;
    for (size_t i = 0; i < forms.rows() && !degenerate; ++i) {
      const int s = sgn(dot_row(forms, i, y)) * sg;
      if (s == 0) degenerate = true;
      if (s < 0) lhs = 0;
    }
    int rhs = 0;
    for (size_t c = 0; c < mats.size() && !degenerate; ++c) {
      int member = 1;
      for (size_t r = 0; r < d; ++r) {
        const int s = sgn(dot_row(mats[c], r, y)) * sg * sd.cells[c].eps[r];
        if (s == 0) {
          degenerate = true;
          break;
        }
        if (s < 0) member = 0;
      }
      if (member == 1) rhs += signs[c];
    }
    if (degenerate) continue;
    if (lhs != rhs)
      throw Error(ErrorKind::VerificationFailed,
                  "sampled point violates the signed indicator identity");
    ++done;
  }
}

}  // namespace polyvol

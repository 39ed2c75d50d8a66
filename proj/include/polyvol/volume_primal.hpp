#pragma once

#include <atomic>
#include <cstdint>
#include <exception>
#include <vector>

#include "polyvol/cone.hpp"
#include "polyvol/pyramid.hpp"
#include "polyvol/triangulation.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace polyvol {

inline int worker_count() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

inline int worker_id() {
#ifdef _OPENMP
  return omp_get_thread_num();
#else
  return 0;
#endif
}

// Normalized volume of the pyramid over a homogeneous simplex: |det| of the
// ray matrix divided by the product of the ray degrees.
template <class Int>
Rational<Int> simplex_volume_homogeneous(const Matrix<Int>& rays, const Vec<Int>& grading) {
  Int det = det_bareiss(rays);
  if (sgn(det) == 0)
    throw Error(ErrorKind::DegenerateSimplex, "simplex rays are linearly dependent");
  Rational<Int> v(IntOps<Int>::abs(det));
  for (size_t i = 0; i < rays.rows(); ++i) {
    Int g = dot_row(rays, i, grading);
    if (sgn(g) <= 0)
      throw Error(ErrorKind::NonPositiveDegree, "simplex ray with non-positive degree");
    v *= Rational<Int>(IntOps<Int>::one(), g);
  }
  return v;
}

template <class Int>
struct PrimalResult {
  Rational<Int> vol_pyramid;   // Vol of conv(0, P) in the embedded lattice
  Rational<Int> vol_polytope;  // Vol P = grading denominator times the above
  uint64_t cells = 0;
};

// Stream the placing triangulation and sum the simplex volumes.  Cells are
// buffered in batches and their determinants evaluated in parallel; each
// worker owns an addition pyramid and the exact partial sums are merged at
// the end, so the result does not depend on the thread count.
template <class Int, class CellHook>
PrimalResult<Int> volume_primal_hooked(const ConeModel<Int>& cm, CellHook&& hook) {
  const size_t d = cm.dim;
  const Matrix<Int>& rays = cm.rays;
  const size_t batch_cells = 8192;

  const int nw = worker_count();
  std::vector<AdditionPyramid<Int>> pyr(nw);
  std::vector<std::exception_ptr> errs(nw);
  std::atomic<bool> bad{false};

  std::vector<uint32_t> buf;
  buf.reserve(batch_cells * d);
  uint64_t cells = 0;

  auto flush = [&]() {
    const long n = static_cast<long>(buf.size() / d);
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
    for (long i = 0; i < n; ++i) {
      if (bad.load(std::memory_order_relaxed)) continue;
      const int t = worker_id();
      try {
        Matrix<Int> m(d, d);
        for (size_t r = 0; r < d; ++r) {
          const uint32_t g = buf[static_cast<size_t>(i) * d + r];
          for (size_t c = 0; c < d; ++c) m(r, c) = rays(g, c);
        }
        pyr[t].add(simplex_volume_homogeneous(m, cm.grading));
      } catch (...) {
        errs[t] = std::current_exception();
        bad.store(true, std::memory_order_relaxed);
      }
    }
    if (bad.load()) {
      for (auto& e : errs)
        if (e) std::rethrow_exception(e);
    }
    buf.clear();
  };

  std::vector<uint32_t> order = lex_order(rays);
  placing_triangulation_stream(rays, order, [&](const std::vector<uint32_t>& cell) {
    hook(cell);
    buf.insert(buf.end(), cell.begin(), cell.end());
    ++cells;
    if (buf.size() >= batch_cells * d) flush();
  });
  flush();

  PrimalResult<Int> res;
  for (auto& p : pyr) res.vol_pyramid += p.total();
  res.vol_polytope = res.vol_pyramid * Rational<Int>(cm.grading_denominator);
  res.cells = cells;
  return res;
}

template <class Int>
PrimalResult<Int> volume_primal(const ConeModel<Int>& cm) {
  return volume_primal_hooked(cm, [](const std::vector<uint32_t>&) {});
}

}  // namespace polyvol

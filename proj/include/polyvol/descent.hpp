#pragma once

#include <atomic>
#include <cstdint>
#include <exception>
#include <limits>
#include <map>
#include <set>
#include <utility>
#include <vector>

#include "polyvol/cone.hpp"
#include "polyvol/pyramid.hpp"
#include "polyvol/volume_primal.hpp"

namespace polyvol {

struct DescentLayerStat {
  size_t cone_dim = 0;
  uint64_t faces = 0;
  size_t max_coeff_bits = 0;
};

template <class Int>
struct DescentResult {
  Rational<Int> vol_pyramid;
  Rational<Int> vol_polytope;
  std::vector<DescentLayerStat> layers;
};

namespace detail {

// Apex heuristic: the ray lying on the most facets spawns the fewest
// children.  Ties go to the smallest ray index, which keeps runs
// reproducible.
inline uint32_t select_vertex(const Bitset& rays, const std::vector<Bitset>& facets) {
  uint32_t best = 0;
  size_t best_opp = std::numeric_limits<size_t>::max();
  for (size_t v = rays.find_first(); v != Bitset::npos; v = rays.find_next(v)) {
    size_t opp = 0;
    for (const auto& f : facets)
      if (!f.test(v)) ++opp;
    if (opp < best_opp) {
      best_opp = opp;
      best = static_cast<uint32_t>(v);
    }
  }
  if (best_opp == std::numeric_limits<size_t>::max())
    throw Error(ErrorKind::EmptyFace, "descent reached a face without extreme rays");
  return best;
}

inline std::vector<uint32_t> bitset_indices(const Bitset& b) {
  std::vector<uint32_t> idx;
  idx.reserve(b.count());
  for (size_t i = b.find_first(); i != Bitset::npos; i = b.find_next(i))
    idx.push_back(static_cast<uint32_t>(i));
  return idx;
}

// Facets of the face spanned by the rays in w: cut with every support form
// that neither vanishes on the whole face nor misses it, dedupe the cuts,
// and keep those of rank cone_dim - 1.  Every facet of a face is exposed by
// some global support form, and any lower-dimensional cut fails the rank
// test, so this is exact.
template <class Int>
std::vector<Bitset> face_facets(const ConeModel<Int>& cm, const Bitset& w, size_t cone_dim) {
  std::set<Bitset> seen;
  std::vector<Bitset> out;
  for (size_t j = 0; j < cm.support_forms.rows(); ++j) {
    Bitset r = w & cm.form_rays[j];
    if (!r.any() || r == w) continue;
    if (r.count() < cone_dim - 1) continue;
    if (!seen.insert(r).second) continue;
    if (rank(cm.rays.selected_rows(bitset_indices(r))) == cone_dim - 1)
      out.push_back(std::move(r));
  }
  return out;
}

// Degree-normalized lattice height of vertex ray v over the affine hull of
// the facet g, seen inside the degree-1 slice.  With p_i = r_i / deg(r_i)
// the difference p_v - p_w and the facet directions p_i - p_w are cleared
// to integer vectors first; the denominators cancel into deg(v) * deg(w).
template <class Int>
Rational<Int> pyramid_height(const ConeModel<Int>& cm, uint32_t v, const Bitset& g) {
  const size_t d = cm.dim;
  const size_t w = g.find_first();
  const Int& gw = cm.ray_degrees[w];
  const Int& gv = cm.ray_degrees[v];
  Vec<Int> x(d);
  for (size_t c = 0; c < d; ++c) x[c] = gw * cm.rays(v, c) - gv * cm.rays(w, c);
  Matrix<Int> h(0, d);
  for (size_t i = g.find_next(w); i != Bitset::npos; i = g.find_next(i)) {
    Vec<Int> row(d);
    for (size_t c = 0; c < d; ++c) row[c] = gw * cm.rays(i, c) - cm.ray_degrees[i] * cm.rays(w, c);
    h.append_row(row);
  }
  return Rational<Int>(lattice_height(x, h), gv * gw);
}

// Normalized volume of the degree-1 slice of a simplicial face, measured in
// the lattice of its own span: |det| of the rays in a basis of the span
// lattice, divided by the ray degrees, times the grading content on that
// lattice.
template <class Int>
Rational<Int> face_simplex_volume(const ConeModel<Int>& cm, const std::vector<uint32_t>& idx) {
  Matrix<Int> sel = cm.rays.selected_rows(idx);
  Matrix<Int> b = lattice_basis_of_span(sel);
  Matrix<Int> t(0, b.rows());
  for (size_t i = 0; i < sel.rows(); ++i) t.append_row(express_in_basis(b, sel.row_vec(i)));
  Int det = det_bareiss(t);
  if (sgn(det) == 0)
    throw Error(ErrorKind::Internal, "descent: simplicial face with dependent rays");
  Rational<Int> vol(IntOps<Int>::abs(det));
  vol *= Rational<Int>(grading_denominator_on(cm.grading, b));
  for (uint32_t i : idx) vol *= Rational<Int>(IntOps<Int>::one(), cm.ray_degrees[i]);
  return vol;
}

}  // namespace detail

// Volume by descent in the face lattice.  Each layer holds faces of equal
// cone dimension keyed by their extreme-ray set, with a rational pyramid
// coefficient merged over all parents.  A face either closes (simplicial:
// its slice volume times the coefficient enters the total) or is replaced
// by the facets opposite a chosen vertex, weighted by the vertex height.
// All arithmetic is exact, so the merge order cannot change any value.
template <class Int>
DescentResult<Int> volume_descent(const ConeModel<Int>& cm) {
  using Q = Rational<Int>;
  const size_t nr = cm.rays.rows();

  std::map<Bitset, Q> layer;
  Bitset top(nr);
  top.set();
  layer.emplace(std::move(top), Q(IntOps<Int>::one()));

  DescentResult<Int> res;
  AdditionPyramid<Int> total;
  size_t cone_dim = cm.dim;

  struct FaceOut {
    Q closed;
    std::vector<std::pair<Bitset, Q>> children;
  };

  while (!layer.empty()) {
    if (cone_dim == 0)
      throw Error(ErrorKind::Internal, "descent passed the bottom of the face lattice");

    DescentLayerStat stat;
    stat.cone_dim = cone_dim;
    stat.faces = layer.size();
    for (const auto& [w, c] : layer) {
      stat.max_coeff_bits = std::max(stat.max_coeff_bits, IntOps<Int>::bits(c.num()));
      stat.max_coeff_bits = std::max(stat.max_coeff_bits, IntOps<Int>::bits(c.den()));
    }
    res.layers.push_back(stat);

    std::vector<std::pair<const Bitset*, const Q*>> faces;
    faces.reserve(layer.size());
    for (const auto& [w, c] : layer) faces.emplace_back(&w, &c);

    const long n = static_cast<long>(faces.size());
    std::vector<FaceOut> out(faces.size());
    std::vector<std::exception_ptr> errs(worker_count());
    std::atomic<bool> bad{false};

#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
    for (long i = 0; i < n; ++i) {
      if (bad.load(std::memory_order_relaxed)) continue;
      try {
        const Bitset& w = *faces[i].first;
        const Q& coeff = *faces[i].second;
        std::vector<uint32_t> idx = detail::bitset_indices(w);
        if (idx.size() == cone_dim) {
          out[i].closed = coeff * detail::face_simplex_volume(cm, idx);
        } else {
          std::vector<Bitset> facets = detail::face_facets(cm, w, cone_dim);
          uint32_t v = detail::select_vertex(w, facets);
          for (Bitset& g : facets) {
            if (g.test(v)) continue;
            Q h = coeff * detail::pyramid_height(cm, v, g);
            out[i].children.emplace_back(std::move(g), std::move(h));
          }
        }
      } catch (...) {
        errs[worker_id()] = std::current_exception();
        bad.store(true, std::memory_order_relaxed);
      }
    }
    if (bad.load()) {
      for (auto& e : errs)
        if (e) std::rethrow_exception(e);
    }

    std::map<Bitset, Q> next;
    for (auto& fo : out) {
      if (!fo.closed.is_zero()) total.add(fo.closed);
      for (auto& [g, q] : fo.children) {
        auto [it, fresh] = next.emplace(std::move(g), q);
        if (!fresh) it->second += q;
      }
    }
    layer = std::move(next);
    --cone_dim;
  }

  res.vol_polytope = total.total();
  res.vol_pyramid = res.vol_polytope / Q(cm.grading_denominator);
  return res;
}

}  // namespace polyvol

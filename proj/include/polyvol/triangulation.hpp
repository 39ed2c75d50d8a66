#pragma once

// Placing (beneath-beyond) triangulation.  Generators are inserted one at a
// time; each insertion cones the new generator over the boundary simplices
// it sees.  Visibility is decided by the inward facet forms of the partial
// hull, maintained incrementally by double description, so no determinant
// is ever computed here.  Cells are streamed to a sink; consumers that need
// them stored use the collecting wrapper.

#include <algorithm>
#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "polyvol/cone.hpp"
#include "polyvol/dd.hpp"

namespace polyvol {

struct TriCell {
  std::vector<uint32_t> rays;  // ascending generator indices, size d
};

template <class Int>
struct Triangulation {
  Matrix<Int> gens;
  std::vector<TriCell> cells;
};

template <class Int>
std::vector<uint32_t> lex_order(const Matrix<Int>& gens) {
  std::vector<uint32_t> idx(gens.rows());
  for (size_t i = 0; i < idx.size(); ++i) idx[i] = static_cast<uint32_t>(i);
  std::sort(idx.begin(), idx.end(), [&](uint32_t a, uint32_t b) {
    return lex_less(gens.row_vec(a), gens.row_vec(b));
  });
  return idx;
}

namespace detail {

struct U32VecHash {
  size_t operator()(const std::vector<uint32_t>& v) const {
    size_t h = 1469598103934665603ull;
    for (uint32_t x : v) {
      h ^= x;
      h *= 1099511628211ull;
    }
    return h;
  }
};

}  // namespace detail

// Core streaming algorithm.  `order` lists generator row indices; the cone
// they generate must be pointed and full-dimensional.  The sink receives
// each cell as a sorted index vector.
template <class Int, class Sink>
void placing_triangulation_stream(const Matrix<Int>& gens,
                                  const std::vector<uint32_t>& order, Sink&& sink) {
  const size_t d = gens.cols();
  if (order.empty() || d == 0) throw Error(ErrorKind::ZeroCone, "no generators to triangulate");
  std::vector<uint32_t> basis = independent_prefix(gens, order);
  if (basis.size() < d)
    throw Error(ErrorKind::NotFullDim, "generators do not span; embed before triangulating");

  DoubleDescription<Int> dd(gens);
  dd.init_simplex(basis);

  std::vector<uint32_t> cell0 = basis;
  std::sort(cell0.begin(), cell0.end());
  sink(static_cast<const std::vector<uint32_t>&>(cell0));

  const size_t stride = d - 1;
  // Boundary (d-1)-simplices of the triangulated region, bucketed under the
  // hull facet (arena id) they lie on; flat storage, `stride` indices each.
  std::vector<std::vector<uint32_t>> bucket(dd.arena_size());
  for (size_t j = 0; j < d; ++j) {
    uint32_t id = dd.alive()[j];
    std::vector<uint32_t>& b = bucket[id];
    for (size_t i = 0; i < d; ++i)
      if (i != j) b.push_back(basis[i]);
    std::sort(b.begin(), b.end());
  }

  std::vector<bool> in_basis(gens.rows(), false);
  for (uint32_t b : basis) in_basis[b] = true;

  std::vector<uint32_t> cell(d), cand;
  std::unordered_map<std::vector<uint32_t>, uint32_t, detail::U32VecHash> cnt;

  for (uint32_t k : order) {
    if (in_basis[k]) continue;
    auto rep = dd.add_constraint(k);
    if (rep.died.empty()) continue;  // inside or on the boundary: no new cells

    if (stride == 0)
      throw Error(ErrorKind::Internal,
                  "one-dimensional cone saw a visible facet; generators not pointed");
    cnt.clear();
    for (uint32_t f : rep.died) {
      std::vector<uint32_t>& b = bucket[f];
      for (size_t off = 0; off < b.size(); off += stride) {
        // cell = facet + k, kept sorted
        cell.assign(b.begin() + off, b.begin() + off + stride);
        cell.insert(std::lower_bound(cell.begin(), cell.end(), k), k);
        sink(static_cast<const std::vector<uint32_t>&>(cell));
        // candidate new boundary facets: drop one old vertex, keep k
        for (size_t p = 0; p < d; ++p) {
          if (cell[p] == k) continue;
          cand.clear();
          for (size_t i = 0; i < d; ++i)
            if (i != p) cand.push_back(cell[i]);
          ++cnt[cand];
        }
      }
      b.clear();
      b.shrink_to_fit();
    }

    bucket.resize(dd.arena_size());
    std::vector<uint32_t> hosts = rep.born;
    hosts.insert(hosts.end(), rep.touched_zero.begin(), rep.touched_zero.end());
    for (const auto& [key, c] : cnt) {
      if (c != 1) continue;  // shared by two new cells: interior
      uint32_t host = UINT32_MAX;
      for (uint32_t h : hosts) {
        const Bitset& inc = dd.form(h).inc;
        bool all = true;
        for (uint32_t i : key)
          if (!inc.test(i)) {
            all = false;
            break;
          }
        if (all) {
          if (host != UINT32_MAX)
            throw Error(ErrorKind::Internal, "boundary facet on two hull facets");
          host = h;
        }
      }
      if (host == UINT32_MAX)
        throw Error(ErrorKind::Internal, "boundary facet lost its hull facet");
      bucket[host].insert(bucket[host].end(), key.begin(), key.end());
    }
  }
}

template <class Int>
Triangulation<Int> placing_triangulation_ordered(const Matrix<Int>& gens,
                                                 const std::vector<uint32_t>& order) {
  Triangulation<Int> t;
  t.gens = gens;
  placing_triangulation_stream(gens, order, [&](const std::vector<uint32_t>& c) {
    t.cells.push_back(TriCell{c});
  });
  return t;
}

// Canonical form: insertion in lexicographic generator order.
template <class Int>
Triangulation<Int> placing_triangulation(const Matrix<Int>& gens) {
  return placing_triangulation_ordered(gens, lex_order(gens));
}

template <class Int>
std::string triangulation_to_text(const Triangulation<Int>& t) {
  std::string out;
  for (size_t i = 0; i < t.cells.size(); ++i) {
    out += "T " + std::to_string(i + 1) + ":";
    for (uint32_t r : t.cells[i].rays) out += " " + std::to_string(r + 1);
    out += "\n";
  }
  return out;
}

}  // namespace polyvol

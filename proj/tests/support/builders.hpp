#pragma once

// Shared polytope constructions for tests: vertex/constraint specs for the
// usual suspects (cubes, cross polytopes, simplices, Birkhoff) plus random
// lattice and rational polytopes.

#include <cstdint>
#include <vector>

#include "polyvol/cone.hpp"

namespace builders {

template <class Int>
polyvol::PolytopeSpec<Int> from_points(const std::vector<std::vector<int64_t>>& pts) {
    polyvol::PolytopeSpec<Int> s;
    s.vertices_mode = true;
    s.ambient_n = pts[0].size();
    s.gens = polyvol::Matrix<Int>(0, s.ambient_n + 1);
    for (const auto& p : pts) {
        polyvol::Vec<Int> v;
        for (int64_t x : p) v.push_back(polyvol::IntOps<Int>::from_i64(x));
        v.push_back(polyvol::IntOps<Int>::one());
        s.gens.append_row(v);
    }
    s.grading.assign(s.ambient_n + 1, polyvol::IntOps<Int>::zero());
    s.grading.back() = polyvol::IntOps<Int>::one();
    return s;
}

inline std::vector<std::vector<int64_t>> cube_points(size_t d) {
    std::vector<std::vector<int64_t>> pts;
    for (size_t m = 0; m < (size_t{1} << d); ++m) {
        std::vector<int64_t> p(d);
        for (size_t j = 0; j < d; ++j) p[j] = (m >> j) & 1;
        pts.push_back(p);
    }
    return pts;
}

inline std::vector<std::vector<int64_t>> cross_points(size_t d) {
    std::vector<std::vector<int64_t>> pts;
    for (size_t j = 0; j < d; ++j) {
        std::vector<int64_t> p(d, 0);
        p[j] = 1;
        pts.push_back(p);
        p[j] = -1;
        pts.push_back(p);
    }
    return pts;
}

// conv(0, e_1, ..., e_d), normalized volume 1
inline std::vector<std::vector<int64_t>> simplex_points(size_t d) {
    std::vector<std::vector<int64_t>> pts(1, std::vector<int64_t>(d, 0));
    for (size_t j = 0; j < d; ++j) {
        std::vector<int64_t> p(d, 0);
        p[j] = 1;
        pts.push_back(p);
    }
    return pts;
}

// 0/1 cube by constraints: x_i >= 0 and 1 - x_i >= 0
template <class Int>
polyvol::PolytopeSpec<Int> cube_constraints(size_t d) {
    polyvol::PolytopeSpec<Int> s;
    s.vertices_mode = false;
    s.ambient_n = d;
    s.gens = polyvol::Matrix<Int>(0, d + 1);
    s.ineqs = polyvol::Matrix<Int>(2 * d, d + 1);
    for (size_t j = 0; j < d; ++j) {
        s.ineqs(2 * j, j) = polyvol::IntOps<Int>::one();
        s.ineqs(2 * j + 1, j) = polyvol::IntOps<Int>::from_i64(-1);
        s.ineqs(2 * j + 1, d) = polyvol::IntOps<Int>::one();
    }
    s.eqs = polyvol::Matrix<Int>(0, d + 1);
    s.grading.assign(d + 1, polyvol::IntOps<Int>::zero());
    s.grading.back() = polyvol::IntOps<Int>::one();
    return s;
}

// doubly stochastic n x n matrices: entries nonnegative, row/column sums 1
template <class Int>
polyvol::PolytopeSpec<Int> birkhoff_spec(size_t n) {
    const size_t m = n * n;
    polyvol::PolytopeSpec<Int> s;
    s.vertices_mode = false;
    s.ambient_n = m;
    s.gens = polyvol::Matrix<Int>(0, m + 1);
    s.ineqs = polyvol::Matrix<Int>(m, m + 1);
    for (size_t i = 0; i < m; ++i) s.ineqs(i, i) = polyvol::IntOps<Int>::one();
    s.eqs = polyvol::Matrix<Int>(0, m + 1);
    for (size_t r = 0; r < n; ++r) {
        polyvol::Vec<Int> row(m + 1, polyvol::IntOps<Int>::zero());
        for (size_t c = 0; c < n; ++c) row[n * r + c] = polyvol::IntOps<Int>::one();
        row[m] = polyvol::IntOps<Int>::from_i64(-1);
        s.eqs.append_row(row);
    }
    for (size_t c = 0; c < n; ++c) {
        polyvol::Vec<Int> col(m + 1, polyvol::IntOps<Int>::zero());
        for (size_t r = 0; r < n; ++r) col[n * r + c] = polyvol::IntOps<Int>::one();
        col[m] = polyvol::IntOps<Int>::from_i64(-1);
        s.eqs.append_row(col);
    }
    s.grading.assign(m + 1, polyvol::IntOps<Int>::zero());
    s.grading.back() = polyvol::IntOps<Int>::one();
    return s;
}

}  // namespace builders

// Independent reference implementations used to cross-check the library.
// Everything here is deliberately written in the most naive way possible and
// shares no code with the implementation under test.
#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

#include <gmpxx.h>

namespace oracle {

// Determinant by cofactor expansion along the first row. Exponential, only
// for small matrices with small entries (callers keep |entries| tiny so that
// intermediates fit in int64 comfortably).
inline int64_t det_cofactor(const std::vector<std::vector<int64_t>>& m) {
    size_t n = m.size();
    if (n == 0) return 1;
    if (n == 1) return m[0][0];
    int64_t acc = 0;
    for (size_t j = 0; j < n; ++j) {
        if (m[0][j] == 0) continue;
        std::vector<std::vector<int64_t>> minor(n - 1, std::vector<int64_t>(n - 1));
        for (size_t r = 1; r < n; ++r) {
            size_t cc = 0;
            for (size_t c = 0; c < n; ++c) {
                if (c == j) continue;
                minor[r - 1][cc++] = m[r][c];
            }
        }
        int64_t term = m[0][j] * det_cofactor(minor);
        acc += (j % 2 == 0) ? term : -term;
    }
    return acc;
}

// Determinant by plain fraction Gaussian elimination over mpq. Independent of
// any fraction-free scheme.
inline mpq_class det_gauss_mpq(std::vector<std::vector<mpq_class>> m) {
    size_t n = m.size();
    mpq_class det = 1;
    for (size_t col = 0; col < n; ++col) {
        size_t piv = col;
        while (piv < n && m[piv][col] == 0) ++piv;
        if (piv == n) return 0;
        if (piv != col) {
            std::swap(m[piv], m[col]);
            det = -det;
        }
        det *= m[col][col];
        for (size_t r = col + 1; r < n; ++r) {
            if (m[r][col] == 0) continue;
            mpq_class f = m[r][col] / m[col][col];
            for (size_t c = col; c < n; ++c) m[r][c] -= f * m[col][c];
        }
    }
    return det;
}

inline mpq_class det_gauss_i64(const std::vector<std::vector<int64_t>>& m) {
    std::vector<std::vector<mpq_class>> q(m.size());
    for (size_t i = 0; i < m.size(); ++i)
        for (auto v : m[i]) q[i].push_back(mpq_class(static_cast<long>(v)));
    return det_gauss_mpq(q);
}

inline size_t rank_gauss_i64(std::vector<std::vector<int64_t>> m) {
    if (m.empty()) return 0;
    std::vector<std::vector<mpq_class>> q(m.size());
    for (size_t i = 0; i < m.size(); ++i)
        for (auto v : m[i]) q[i].push_back(mpq_class(static_cast<long>(v)));
    size_t rows = q.size(), cols = q[0].size(), rank = 0;
    for (size_t col = 0; col < cols && rank < rows; ++col) {
        size_t piv = rank;
        while (piv < rows && q[piv][col] == 0) ++piv;
        if (piv == rows) continue;
        std::swap(q[piv], q[rank]);
        for (size_t r = rank + 1; r < rows; ++r) {
            if (q[r][col] == 0) continue;
            mpq_class f = q[r][col] / q[rank][col];
            for (size_t c = col; c < cols; ++c) q[r][c] -= f * q[rank][c];
        }
        ++rank;
    }
    return rank;
}

// All facet normals of the pointed full-dimensional cone spanned by gens,
// found by brute force: every (d-1)-subset of generators of rank d-1 spans a
// candidate hyperplane; its normal is computed from (d-1)x(d-1) cofactors and
// kept if all generators lie weakly on one side. Returns primitive inward
// normals, deduplicated, sorted. Entries must stay small.
inline std::vector<std::vector<int64_t>> dual_facets_brute(
    const std::vector<std::vector<int64_t>>& gens) {
    if (gens.empty()) throw std::runtime_error("no generators");
    size_t d = gens[0].size();
    std::vector<std::vector<int64_t>> out;
    std::vector<size_t> idx(gens.size());
    for (size_t i = 0; i < idx.size(); ++i) idx[i] = i;

    std::vector<size_t> pick;
    auto normal_of = [&](const std::vector<size_t>& rows) {
        // cofactor expansion of det with an indeterminate last row
        std::vector<int64_t> nrm(d, 0);
        for (size_t j = 0; j < d; ++j) {
            std::vector<std::vector<int64_t>> minor;
            for (size_t r : rows) {
                std::vector<int64_t> row;
                for (size_t c = 0; c < d; ++c)
                    if (c != j) row.push_back(gens[r][c]);
                minor.push_back(row);
            }
            int64_t cof = det_cofactor(minor);
            nrm[j] = ((d - 1 + j) % 2 == 0) ? cof : -cof;
        }
        return nrm;
    };

    std::vector<bool> mask(gens.size(), false);
    // enumerate (d-1)-subsets
    std::vector<size_t> comb(d - 1);
    auto emit = [&](const std::vector<size_t>& rows) {
        auto nrm = normal_of(rows);
        bool all_zero = true;
        for (auto v : nrm) all_zero &= (v == 0);
        if (all_zero) return;
        int side = 0;
        for (const auto& g : gens) {
            int64_t s = 0;
            for (size_t c = 0; c < d; ++c) s += nrm[c] * g[c];
            if (s == 0) continue;
            int sg = s > 0 ? 1 : -1;
            if (side == 0) side = sg;
            else if (side != sg) return;  // cuts through the cone
        }
        if (side == 0) return;
        if (side < 0)
            for (auto& v : nrm) v = -v;
        int64_t g = 0;
        for (auto v : nrm) g = std::gcd(g, v < 0 ? -v : v);
        for (auto& v : nrm) v /= g;
        out.push_back(nrm);
    };
    // simple recursive subset enumeration
    std::vector<size_t> cur;
    auto rec = [&](auto&& self, size_t start) -> void {
        if (cur.size() == d - 1) {
            emit(cur);
            return;
        }
        for (size_t i = start; i < gens.size(); ++i) {
            cur.push_back(i);
            self(self, i + 1);
            cur.pop_back();
        }
    };
    if (d >= 1) rec(rec, 0);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

// Left-to-right fold of rationals, the reference for the addition pyramid.
inline mpq_class naive_sum(const std::vector<mpq_class>& xs) {
    mpq_class acc = 0;
    for (const auto& x : xs) acc += x;
    return acc;
}

inline std::mt19937_64 rng(uint64_t seed) { return std::mt19937_64(seed); }

inline int64_t uniform(std::mt19937_64& g, int64_t lo, int64_t hi) {
    return std::uniform_int_distribution<int64_t>(lo, hi)(g);
}

}  // namespace oracle

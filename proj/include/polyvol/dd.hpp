#pragma once

// Incremental double description: maintains the extreme rays of
// {lambda : lambda(g) >= 0 for all inserted generators g} together with
// exact incidence data.  Used in two roles: dualizing a cone given by
// generators, and tracking the hull facets during the placing triangulation
// (where the "rays" are inward facet forms of the partial hull).

#include <cstdint>
#include <vector>

#include <boost/dynamic_bitset.hpp>

#include "polyvol/matrix.hpp"

namespace polyvol {

using Bitset = boost::dynamic_bitset<>;

template <class Int>
class DoubleDescription {
public:
  struct Form {
    Vec<Int> v;
    Bitset inc;  // generator slots this form vanishes on (inserted ones only)
    bool alive = true;
  };

  struct StepReport {
    std::vector<uint32_t> died;          // forms strictly negative on the new generator
    std::vector<uint32_t> born;          // fresh combinations
    std::vector<uint32_t> touched_zero;  // kept forms vanishing on the new generator
  };

  // gens must outlive this object.
  explicit DoubleDescription(const Matrix<Int>& gens) : gens_(&gens) {}

  // Start from d independent generator rows.  The initial forms are the
  // columns of the scaled inverse: column j is positive on basis[j] and
  // vanishes on the other basis members, i.e. the facet form opposite
  // basis[j].
  void init_simplex(const std::vector<uint32_t>& basis) {
    const size_t d = gens_->cols();
    auto [n, den] = invert_with_denominator(gens_->selected_rows(basis));
    (void)den;
    for (size_t j = 0; j < d; ++j) {
      Form f;
      f.v.resize(d);
      for (size_t i = 0; i < d; ++i) f.v[i] = n(i, j);
      primitivize(f.v);
      f.inc.resize(gens_->rows());
      for (size_t i = 0; i < d; ++i)
        if (i != j) f.inc.set(basis[i]);
      arena_.push_back(std::move(f));
      alive_.push_back(static_cast<uint32_t>(arena_.size() - 1));
    }
    inserted_.assign(basis.begin(), basis.end());
  }

  // Insert the halfspace {lambda : lambda(g_slot) >= 0}.
  StepReport add_constraint(uint32_t slot) {
    StepReport rep;
    Vec<Int> g = gens_->row_vec(slot);
    std::vector<uint32_t> pos, neg;
    std::vector<Int> val(arena_.size(), IntOps<Int>::zero());
    for (uint32_t id : alive_) {
      val[id] = dot(arena_[id].v, g);
      int s = sgn(val[id]);
      if (s > 0) {
        pos.push_back(id);
      } else if (s < 0) {
        neg.push_back(id);
      } else {
        arena_[id].inc.set(slot);
        rep.touched_zero.push_back(id);
      }
    }
    if (!neg.empty()) {
      for (uint32_t p : pos) {
        for (uint32_t q : neg) {
          if (!adjacent(p, q)) continue;
          Form f;
          f.v.resize(g.size());
          for (size_t i = 0; i < g.size(); ++i)
            f.v[i] = val[p] * arena_[q].v[i] - val[q] * arena_[p].v[i];
          primitivize(f.v);
          // Exact incidence by evaluation; the combinatorial parent
          // intersection can miss accidental vanishing.
          f.inc.resize(gens_->rows());
          for (uint32_t j : inserted_) {
            if (sgn(dot_row(*gens_, j, f.v)) == 0) f.inc.set(j);
          }
          f.inc.set(slot);
          arena_.push_back(std::move(f));
          rep.born.push_back(static_cast<uint32_t>(arena_.size() - 1));
        }
      }
      for (uint32_t q : neg) {
        arena_[q].alive = false;
        arena_[q].v.clear();
        arena_[q].inc.clear();
        rep.died.push_back(q);
      }
      std::vector<uint32_t> next_alive;
      next_alive.reserve(alive_.size() + rep.born.size());
      for (uint32_t id : alive_)
        if (arena_[id].alive) next_alive.push_back(id);
      for (uint32_t id : rep.born) next_alive.push_back(id);
      alive_.swap(next_alive);
    }
    inserted_.push_back(slot);
    return rep;
  }

  const std::vector<uint32_t>& alive() const { return alive_; }
  const Form& form(uint32_t id) const { return arena_[id]; }
  size_t arena_size() const { return arena_.size(); }

  Matrix<Int> alive_matrix() const {
    Matrix<Int> m(0, gens_->cols());
    for (uint32_t id : alive_) m.append_row(arena_[id].v);
    return m;
  }

private:
  // Combinatorial adjacency: p and q span a 2-face iff no third extreme
  // form's incidence set contains inc(p) & inc(q).  Exact for pointed
  // cones, which we have as soon as the inserted generators span.
  bool adjacent(uint32_t p, uint32_t q) const {
    Bitset common = arena_[p].inc & arena_[q].inc;
    for (uint32_t t : alive_) {
      if (t == p || t == q) continue;
      if (common.is_subset_of(arena_[t].inc)) return false;
    }
    return true;
  }

  const Matrix<Int>* gens_;
  std::vector<Form> arena_;
  std::vector<uint32_t> alive_;
  std::vector<uint32_t> inserted_;
};

}  // namespace polyvol

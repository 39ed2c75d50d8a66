#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

#include "polyvol/dd.hpp"
#include "polyvol/matrix.hpp"

namespace polyvol {

template <class Int>
bool lex_less(const Vec<Int>& a, const Vec<Int>& b) {
  for (size_t i = 0; i < a.size() && i < b.size(); ++i) {
    if (a[i] < b[i]) return true;
    if (b[i] < a[i]) return false;
  }
  return a.size() < b.size();
}

// Greedy prefix of row indices forming a maximal independent set, in the
// given order.
template <class Int>
std::vector<uint32_t> independent_prefix(const Matrix<Int>& m,
                                         const std::vector<uint32_t>& order) {
  std::vector<uint32_t> basis;
  Matrix<Int> sel(0, m.cols());
  for (uint32_t k : order) {
    if (basis.size() == m.cols()) break;
    Matrix<Int> cand = sel;
    cand.append_row(m.row_vec(k));
    if (rank(cand) == basis.size() + 1) {
      sel = std::move(cand);
      basis.push_back(k);
    }
  }
  return basis;
}

// Extreme rays of {lambda : lambda(g) >= 0 for all generator rows}, each
// primitive, lexicographically sorted.  Requires the generators to span;
// lower-dimensional cones must be re-embedded by the caller first.  Under
// that precondition the result cone is pointed, and conversely the input
// cone is pointed iff the result spans.
template <class Int>
Matrix<Int> dualize(const Matrix<Int>& gens) {
  const size_t d = gens.cols();
  std::vector<uint32_t> nonzero;
  for (size_t i = 0; i < gens.rows(); ++i) {
    bool z = true;
    for (size_t j = 0; j < d && z; ++j) z = sgn(gens(i, j)) == 0;
    if (!z) nonzero.push_back(static_cast<uint32_t>(i));
  }
  if (nonzero.empty()) throw Error(ErrorKind::ZeroCone, "cone has no nonzero generators");
  std::vector<uint32_t> basis = independent_prefix(gens, nonzero);
  if (basis.size() < d)
    throw Error(ErrorKind::NotFullDim,
                "generators do not span the space; embed into the span lattice first");
  DoubleDescription<Int> dd(gens);
  dd.init_simplex(basis);
  std::vector<bool> used(gens.rows(), false);
  for (uint32_t b : basis) used[b] = true;
  for (uint32_t k : nonzero)
    if (!used[k]) dd.add_constraint(k);
  Matrix<Int> forms = dd.alive_matrix();
  std::vector<uint32_t> idx(forms.rows());
  for (size_t i = 0; i < idx.size(); ++i) idx[i] = static_cast<uint32_t>(i);
  std::sort(idx.begin(), idx.end(), [&](uint32_t a, uint32_t b) {
    return lex_less(forms.row_vec(a), forms.row_vec(b));
  });
  return forms.selected_rows(idx);
}

// Indices of generators that are extreme rays: g is extreme iff the forms
// vanishing on it cut out a one-dimensional face, i.e. have rank d-1.
template <class Int>
std::vector<uint32_t> extreme_ray_indices(const Matrix<Int>& gens,
                                          const Matrix<Int>& forms) {
  const size_t d = gens.cols();
  std::vector<uint32_t> out;
  for (size_t g = 0; g < gens.rows(); ++g) {
    Matrix<Int> z(0, d);
    Vec<Int> gv = gens.row_vec(g);
    for (size_t f = 0; f < forms.rows(); ++f)
      if (sgn(dot_row(forms, f, gv)) == 0) z.append_row(forms.row_vec(f));
    if (rank(z) == d - 1) out.push_back(static_cast<uint32_t>(g));
  }
  return out;
}

// Lattice height of x over the hyperplane spanned by the rows of h, inside
// the lattice of span(h, x): the value at x of the primitive linear form
// vanishing on h.  Integer because x is integer; rational points are
// handled by scaling (the height is homogeneous of degree 1).
template <class Int>
Int lattice_height(const Vec<Int>& x, const Matrix<Int>& h) {
  Matrix<Int> hx = h;
  hx.append_row(x);
  Matrix<Int> b = lattice_basis_of_span(hx);
  size_t rh = rank(h);
  if (b.rows() != rh + 1)
    throw Error(ErrorKind::DegenerateSpan, "x lies in the span of h");
  Matrix<Int> hc(0, b.rows());
  for (size_t i = 0; i < h.rows(); ++i)
    hc.append_row(express_in_basis(b, h.row_vec(i)));
  Vec<Int> xc = express_in_basis(b, x);
  Matrix<Int> ker = kernel_basis(hc);
  if (ker.rows() != 1)
    throw Error(ErrorKind::Internal, "lattice_height: kernel not one-dimensional");
  return IntOps<Int>::abs(dot(ker.row_vec(0), xc));
}

// Same, for a rational point: heights are homogeneous of degree one, so the
// point is cleared of denominators first and the integer height rescaled.
template <class Int>
Rational<Int> lattice_height_rational(const std::vector<Rational<Int>>& x,
                                      const Matrix<Int>& h) {
  Int scale = IntOps<Int>::one();
  for (const auto& q : x) scale *= q.den() / IntOps<Int>::gcd(scale, q.den());
  Vec<Int> u(x.size());
  for (size_t i = 0; i < x.size(); ++i) u[i] = x[i].num() * (scale / x[i].den());
  return Rational<Int>(lattice_height(u, h), scale);
}

// Gcd of the values of the grading covector on a basis of the lattice it is
// evaluated over.  For the standard lattice the basis is the identity and
// this is just the content.
template <class Int>
Int grading_denominator_on(const Vec<Int>& deg, const Matrix<Int>& basis) {
  Vec<Int> vals(basis.rows());
  for (size_t j = 0; j < basis.rows(); ++j) vals[j] = dot_row(basis, j, deg);
  Int k = content(vals);
  if (sgn(k) == 0)
    throw Error(ErrorKind::ZeroGrading, "grading vanishes on the whole lattice");
  return k;
}

// Homogenized polytope data, width n+1 (affine coordinate last).
template <class Int>
struct PolytopeSpec {
  bool vertices_mode = true;
  bool default_grading = true;
  size_t ambient_n = 0;
  Matrix<Int> gens;   // vertices mode: primitive integer vectors (v, 1) * scale
  Matrix<Int> ineqs;  // constraints mode: rows (a, b) meaning a.x + b >= 0
  Matrix<Int> eqs;    //                   rows (a, b) meaning a.x + b  = 0
  Vec<Int> grading;   // covector of width n+1
};

template <class Int>
struct ConeModel {
  size_t dim = 0;       // dimension of the full-dimensional embedded cone
  size_t ambient_n = 0; // user-facing ambient dimension
  bool vertices_mode = true;
  bool default_grading = true;
  bool embedded = false;          // true if a proper span embedding happened
  Matrix<Int> rays;               // extreme rays: primitive, lex-sorted
  Matrix<Int> support_forms;      // irredundant, primitive, lex-sorted
  Matrix<Int> embedding;          // dim x (n+1), rows = span lattice basis
  Vec<Int> grading;               // grading covector in embedded coordinates
  Vec<Int> ray_degrees;
  Int grading_denominator = IntOps<Int>::one();
  std::vector<Bitset> form_rays;  // per form: rays it vanishes on
  std::vector<Bitset> ray_forms;  // per ray: forms vanishing on it
};

namespace detail {

template <class Int>
Matrix<Int> sorted_unique_primitive_rows(const Matrix<Int>& m) {
  std::vector<Vec<Int>> rows;
  rows.reserve(m.rows());
  for (size_t i = 0; i < m.rows(); ++i) {
    Vec<Int> v = m.row_vec(i);
    primitivize(v);
    rows.push_back(std::move(v));
  }
  std::sort(rows.begin(), rows.end(), lex_less<Int>);
  rows.erase(std::unique(rows.begin(), rows.end()), rows.end());
  Matrix<Int> out(0, m.cols());
  for (auto& r : rows) out.append_row(r);
  return out;
}

// Restrict a covector to the row basis b: component j is sigma(b_j).
template <class Int>
Vec<Int> restrict_covector(const Vec<Int>& sigma, const Matrix<Int>& b) {
  Vec<Int> out(b.rows());
  for (size_t j = 0; j < b.rows(); ++j) out[j] = dot_row(b, j, sigma);
  return out;
}

template <class Int>
bool is_zero_vec(const Vec<Int>& v) {
  for (const Int& x : v)
    if (sgn(x) != 0) return false;
  return true;
}

template <class Int>
void finish_model(ConeModel<Int>& cm, const Matrix<Int>& rays, const Matrix<Int>& forms,
                  const Vec<Int>& grading) {
  cm.rays = sorted_unique_primitive_rows(rays);
  cm.support_forms = sorted_unique_primitive_rows(forms);
  cm.grading = grading;
  if (is_zero_vec(grading))
    throw Error(ErrorKind::ZeroGrading, "grading vanishes on the polytope's span");
  cm.ray_degrees.resize(cm.rays.rows());
  for (size_t i = 0; i < cm.rays.rows(); ++i) {
    cm.ray_degrees[i] = dot_row(cm.rays, i, grading);
    if (sgn(cm.ray_degrees[i]) <= 0) {
      if (cm.default_grading)
        throw Error(ErrorKind::UnboundedPolytope,
                    "recession ray found; the polytope is unbounded or empty");
      throw Error(ErrorKind::NonPositiveDegree,
                  "grading is not positive on all extreme rays");
    }
  }
  cm.grading_denominator = content(grading);
  const size_t nr = cm.rays.rows(), nf = cm.support_forms.rows();
  cm.form_rays.assign(nf, Bitset(nr));
  cm.ray_forms.assign(nr, Bitset(nf));
  for (size_t f = 0; f < nf; ++f) {
    Vec<Int> fv = cm.support_forms.row_vec(f);
    for (size_t r = 0; r < nr; ++r) {
      Int v = dot_row(cm.rays, r, fv);
      int s = sgn(v);
      if (s < 0) throw Error(ErrorKind::Internal, "support form negative on a ray");
      if (s == 0) {
        cm.form_rays[f].set(r);
        cm.ray_forms[r].set(f);
      }
    }
  }
}

}  // namespace detail

// Build the common cone model: homogenize, eliminate equations, embed into
// the span lattice so the cone is full-dimensional, and compute both
// descriptions plus the grading data.
template <class Int>
ConeModel<Int> build_cone(const PolytopeSpec<Int>& spec) {
  using Ops = IntOps<Int>;
  ConeModel<Int> cm;
  cm.ambient_n = spec.ambient_n;
  cm.vertices_mode = spec.vertices_mode;
  cm.default_grading = spec.default_grading;
  const size_t w = spec.ambient_n + 1;

  if (spec.vertices_mode) {
    Matrix<Int> g0 = detail::sorted_unique_primitive_rows(spec.gens);
    if (g0.rows() == 0) throw Error(ErrorKind::ZeroCone, "no vertices given");
    Matrix<Int> basis = lattice_basis_of_span(g0);
    cm.dim = basis.rows();
    cm.embedding = basis;
    cm.embedded = !(basis == Matrix<Int>::identity(w));
    Matrix<Int> g(0, cm.dim);
    for (size_t i = 0; i < g0.rows(); ++i)
      g.append_row(cm.embedded ? express_in_basis(basis, g0.row_vec(i)) : g0.row_vec(i));
    Vec<Int> grading = cm.embedded ? detail::restrict_covector(spec.grading, basis)
                                   : spec.grading;
    Matrix<Int> forms = dualize(g);
    if (rank(forms) < cm.dim)
      throw Error(ErrorKind::NotPointed, "cone over the input is not pointed");
    std::vector<uint32_t> ext = extreme_ray_indices(g, forms);
    detail::finish_model(cm, g.selected_rows(ext), forms, grading);
    return cm;
  }

  // Constraints mode.  Inequality rows plus the homogenizing t >= 0; the
  // equations are eliminated by passing to their solution lattice.
  Matrix<Int> sig(0, w);
  for (size_t i = 0; i < spec.ineqs.rows(); ++i) sig.append_row(spec.ineqs.row_vec(i));
  {
    Vec<Int> t_row(w, Ops::zero());
    t_row[w - 1] = Ops::one();
    sig.append_row(t_row);
  }

  Matrix<Int> b1 = Matrix<Int>::identity(w);
  bool have_eqs = spec.eqs.rows() > 0;
  if (have_eqs) {
    b1 = kernel_basis(spec.eqs);
    if (b1.rows() == 0)
      throw Error(ErrorKind::ZeroCone, "equations admit no nonzero solutions");
  }
  const size_t m = b1.rows();

  Matrix<Int> sig_r(0, m);
  for (size_t i = 0; i < sig.rows(); ++i) {
    Vec<Int> s = have_eqs ? detail::restrict_covector(sig.row_vec(i), b1) : sig.row_vec(i);
    if (!detail::is_zero_vec(s)) sig_r.append_row(s);
  }
  if (sig_r.rows() == 0 || rank(sig_r) < m)
    throw Error(ErrorKind::UnboundedPolytope,
                "constraints leave a line unconstrained; the polytope is unbounded");

  Matrix<Int> rays0 = dualize(sig_r);
  if (rays0.rows() == 0) throw Error(ErrorKind::ZeroCone, "constraints have no solution");

  Vec<Int> grading1 = have_eqs ? detail::restrict_covector(spec.grading, b1) : spec.grading;

  Matrix<Int> sub = lattice_basis_of_span(rays0);
  cm.dim = sub.rows();
  Matrix<Int> rays = rays0;
  Vec<Int> grading = grading1;
  Matrix<Int> forms_src = sig_r;
  bool resliced = !(sub == Matrix<Int>::identity(m));
  if (resliced) {
    Matrix<Int> re(0, cm.dim);
    for (size_t i = 0; i < rays0.rows(); ++i)
      re.append_row(express_in_basis(sub, rays0.row_vec(i)));
    rays = std::move(re);
    grading = detail::restrict_covector(grading1, sub);
    Matrix<Int> fs(0, cm.dim);
    for (size_t i = 0; i < sig_r.rows(); ++i) {
      // Form on the sublattice: value on basis vector b_j.  Rows that
      // become zero are implicit equalities, dropped.
      Vec<Int> f = detail::restrict_covector(sig_r.row_vec(i), sub);
      if (!detail::is_zero_vec(f)) fs.append_row(f);
    }
    forms_src = std::move(fs);
  }

  // Irredundancy filter: a constraint supports a facet iff the rays it
  // vanishes on have rank dim-1.  That is the extreme-ray test with the
  // roles of rays and forms swapped.
  Matrix<Int> forms_prim = detail::sorted_unique_primitive_rows(forms_src);
  std::vector<uint32_t> keep = extreme_ray_indices(forms_prim, rays);
  Matrix<Int> forms = forms_prim.selected_rows(keep);

  // Compose the embedding back to homogenized ambient coordinates.
  Matrix<Int> emb(0, w);
  if (resliced) {
    for (size_t i = 0; i < cm.dim; ++i) {
      Vec<Int> row(w, Ops::zero());
      for (size_t j = 0; j < m; ++j)
        for (size_t c = 0; c < w; ++c) row[c] += sub(i, j) * b1(j, c);
      emb.append_row(row);
    }
  } else {
    emb = b1;
  }
  cm.embedding = emb;
  cm.embedded = !(emb == Matrix<Int>::identity(w));

  detail::finish_model(cm, rays, forms, grading);
  return cm;
}

}  // namespace polyvol

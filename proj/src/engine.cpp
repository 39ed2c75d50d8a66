#include "polyvol/engine.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "polyvol/cone.hpp"
#include "polyvol/descent.hpp"
#include "polyvol/errors.hpp"
#include "polyvol/lawrence.hpp"
#include "polyvol/triangulation.hpp"
#include "polyvol/volume_primal.hpp"

namespace polyvol {

const char* algorithm_name(Algorithm a) {
  switch (a) {
    case Algorithm::Primal:
      return "primal";
    case Algorithm::Descent:
      return "descent";
    case Algorithm::Lawrence:
      return "lawrence";
    default:
      return "auto";
  }
}

Algorithm auto_select_counts(size_t cone_dim, size_t n_forms, size_t n_rays,
                             bool vertices_mode) {
  if (n_forms <= std::max(2 * cone_dim, cone_dim + 30)) return Algorithm::Lawrence;
  if (!vertices_mode || n_forms <= 8 * n_rays) return Algorithm::Descent;
  return Algorithm::Primal;
}

namespace {

void validate(const RunOptions& opt) {
  if (opt.fixed && opt.algorithm != Algorithm::Auto &&
      opt.algorithm != Algorithm::Lawrence)
    throw Error(ErrorKind::ParseError,
                "fixed precision is only available with --algorithm=lawrence");
  if (opt.fixed && (opt.digits < 1 || opt.digits > 100000))
    throw Error(ErrorKind::ParseError,
                "fixed precision digits must be in [1, 100000]");
  if (opt.pattern_depth < 1)
    throw Error(ErrorKind::ParseError, "pattern depth must be at least 1");
}

template <class Int>
void export_cells(const std::string& path, const Matrix<Int>& gens) {
  auto tri = placing_triangulation(gens);
  std::ofstream out(path);
  if (!out)
    throw Error(ErrorKind::Internal, "cannot open '" + path + "' for writing");
  out << "# cells " << tri.cells.size() << "\n";
  for (const auto& c : tri.cells) {
    for (size_t i = 0; i < c.rays.size(); ++i)
      out << (i ? " " : "") << c.rays[i];
    out << "\n";
  }
}

template <class Int>
ReportData run_tier(const ProblemInput& pi, const RunOptions& opt,
                    const char* arith) {
  using Q = Rational<Int>;
  using Ops = IntOps<Int>;

  PolytopeSpec<Int> spec = spec_from_input<Int>(pi);
  ConeModel<Int> cm = build_cone(spec);

  Algorithm alg = opt.algorithm;
  if (alg == Algorithm::Auto)
    alg = opt.fixed ? Algorithm::Lawrence
                    : auto_select_counts(cm.dim, cm.support_forms.rows(),
                                         cm.rays.rows(), cm.vertices_mode);

  ReportData rd;
  rd.algorithm = algorithm_name(alg);
  rd.arith = arith;
  rd.fixed_mode = opt.fixed;
  rd.grading_denominator = Ops::str(cm.grading_denominator);

  Q vol_pyr, vol_poly;
  LawrenceResult<Int> lr;
  bool have_lr = false;

  switch (alg) {
    case Algorithm::Primal: {
      auto r = volume_primal(cm);
      vol_pyr = r.vol_pyramid;
      vol_poly = r.vol_polytope;
      rd.have_cells = true;
      rd.triangulation_cells = r.cells;
      break;
    }
    case Algorithm::Descent: {
      auto r = volume_descent(cm);
      vol_pyr = r.vol_pyramid;
      vol_poly = r.vol_polytope;
      rd.have_layers = true;
      for (const auto& st : r.layers) rd.descent_layers.push_back(st.faces);
      break;
    }
    default: {
      LawrenceOptions lo;
      lo.seed = opt.seed;
      lo.pattern_depth = opt.pattern_depth;
      lo.fixed = opt.fixed;
      lo.digits = opt.digits;
      lo.collect_verify = opt.verify_samples > 0;
      lr = volume_lawrence(cm, lo);
      have_lr = true;
      vol_pyr = lr.vol_pyramid;
      vol_poly = lr.vol_polytope;
      rd.have_cells = true;
      rd.triangulation_cells = lr.diag.triangulation_cells;
      rd.have_hollow = true;
      rd.hollow_facets = lr.diag.hollow_facets;
      rd.have_generic = true;
      rd.generic_retries = lr.diag.generic_retries;
      rd.reshuffles = lr.diag.reshuffles;
      break;
    }
  }

  if (opt.fixed) {
    rd.vol_fixed = fixed_point_string(Ops::str(lr.fixed_units_polytope), opt.digits);
    rd.vol_err = fixed_point_string(Ops::str(lr.fixed_error_polytope), opt.digits);
    rd.pyr_fixed = fixed_point_string(Ops::str(lr.fixed_units_pyramid), opt.digits);
    rd.pyr_err = fixed_point_string(Ops::str(lr.fixed_error_pyramid), opt.digits);
  } else {
    rd.vol_num = Ops::str(vol_poly.num());
    rd.vol_den = Ops::str(vol_poly.den());
    rd.vol_decimal = decimal_string(vol_poly);
    rd.pyr_num = Ops::str(vol_pyr.num());
    rd.pyr_den = Ops::str(vol_pyr.den());
  }

  if (opt.euclidean) {
    if (opt.fixed) {
      rd.notes.push_back("euclidean volume requires exact mode");
    } else if (cm.embedded) {
      rd.notes.push_back(
          "euclidean volume omitted: polytope is not full-dimensional");
    } else if (!cm.default_grading) {
      rd.notes.push_back("euclidean volume omitted: non-default grading");
    } else {
      Q f(Ops::one());
      for (size_t i = 2; i < cm.dim; ++i)
        f *= Q(Ops::from_i64(static_cast<int64_t>(i)));
      Q e = vol_poly / f;
      rd.have_euclidean = true;
      rd.euclid_num = Ops::str(e.num());
      rd.euclid_den = Ops::str(e.den());
      rd.euclid_decimal = decimal_string(e);
    }
  }

  if (opt.verify_samples > 0) {
    const SignedDecomposition<Int>* sd;
    LawrenceResult<Int> aux;
    if (have_lr) {
      sd = &lr.decomposition;
    } else {
      LawrenceOptions lo;
      lo.seed = opt.seed;
      lo.collect_verify = true;
      aux = volume_lawrence(cm, lo);
      sd = &aux.decomposition;
    }
    verify_decomposition(cm, *sd, opt.verify_samples, opt.seed);
    if (!opt.fixed) {
      Q cross = have_lr ? volume_primal(cm).vol_polytope : aux.vol_polytope;
      if (!(cross == vol_poly))
        throw Error(ErrorKind::VerificationFailed,
                    "algorithms disagree on the volume: " + vol_poly.str() +
                        " vs " + cross.str());
    }
    rd.verify_ran = true;
    rd.verify_samples = opt.verify_samples;
  }

  if (!opt.export_triangulation.empty()) {
    if (alg == Algorithm::Descent)
      rd.notes.push_back("descent produces no triangulation; export skipped");
    else
      export_cells(opt.export_triangulation,
                   alg == Algorithm::Primal ? cm.rays : cm.support_forms);
  }

  return rd;
}

}  // namespace

ReportData run_problem(const ProblemInput& pi, const RunOptions& opt) {
  validate(opt);
#ifdef _OPENMP
  if (opt.threads > 0) omp_set_num_threads(opt.threads);
#endif
  auto t0 = std::chrono::steady_clock::now();
  ReportData rd;
  switch (opt.arith) {
    case ArithChoice::Word:
      try {
        rd = run_tier<SmallInt>(pi, opt, "word");
      } catch (const Overflow&) {
        throw Error(ErrorKind::Internal,
                    "word-tier arithmetic overflowed; rerun with --arith=auto "
                    "or --arith=big");
      }
      break;
    case ArithChoice::Big:
      rd = run_tier<BigInt>(pi, opt, "big");
      break;
    default:
      try {
        rd = run_tier<SmallInt>(pi, opt, "word");
      } catch (const Overflow&) {
        rd = run_tier<BigInt>(pi, opt, "big(restarted)");
      }
  }
  rd.wall_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                   std::chrono::steady_clock::now() - t0)
                   .count();
  return rd;
}

}  // namespace polyvol

#include <cstdio>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "doctest.h"
#include "json.hpp"
#include "polyvol/engine.hpp"
#include "polyvol/errors.hpp"
#include "polyvol/input.hpp"
#include "polyvol/report.hpp"

using polyvol::Algorithm;
using polyvol::ArithChoice;
using polyvol::Error;
using polyvol::ErrorKind;
using polyvol::ReportData;
using polyvol::RunOptions;
using polyvol::auto_select_counts;
using polyvol::parse_input;
using polyvol::run_problem;

namespace {

ReportData run_text(const std::string& text, const RunOptions& opt = {}) {
  return run_problem(parse_input(text), opt);
}

int exit_code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.exit_code();
  } catch (const polyvol::Overflow&) {
    return -1;
  }
  return 0;
}

std::string strip_wall(const std::string& s) {
  std::istringstream is(s);
  std::ostringstream out;
  std::string line;
  while (std::getline(is, line))
    if (line.find("wall_ms") == std::string::npos) out << line << "\n";
  return out.str();
}

const char* kSquare =
    "amb_space 2\nvertices 4\n0 0\n1 0\n0 1\n1 1\n";
const char* kCross3 =
    "amb_space 3\nvertices 6\n"
    "1 0 0\n-1 0 0\n0 1 0\n0 -1 0\n0 0 1\n0 0 -1\n";
const char* kSquareDoubled =
    "amb_space 2\nvertices 4\n0 0\n1 0\n0 1\n1 1\ngrading\n0 0 2\n";
const char* kBigSimplex =
    "amb_space 2\nvertices 3\n0 0\n4000000000000000 0\n0 4000000000000000\n";

}  // namespace

TEST_CASE("square volume agrees across all algorithms") {
  for (Algorithm a : {Algorithm::Primal, Algorithm::Descent, Algorithm::Lawrence}) {
    RunOptions opt;
    opt.algorithm = a;
    ReportData rd = run_text(kSquare, opt);
    CHECK(rd.vol_num == "2");
    CHECK(rd.vol_den == "1");
    CHECK(rd.pyr_num == "2");
    CHECK(rd.pyr_den == "1");
    CHECK(rd.grading_denominator == "1");
    CHECK(rd.arith == "word");
    CHECK(!rd.fixed_mode);
  }
  ReportData rd = run_text(kSquare);
  CHECK(rd.algorithm == "lawrence");  // 4 support forms, well under the cap
  CHECK(rd.have_cells);
  CHECK(rd.triangulation_cells == 2);
  CHECK(rd.have_hollow);
  CHECK(rd.hollow_facets == 4);
  CHECK(rd.have_generic);
  CHECK(rd.reshuffles == 0);

  RunOptions po;
  po.algorithm = Algorithm::Primal;
  ReportData pr = run_text(kSquare, po);
  CHECK(pr.algorithm == "primal");
  CHECK(pr.triangulation_cells == 2);
  CHECK(!pr.have_hollow);
  CHECK(!pr.have_generic);
  CHECK(!pr.have_layers);

  RunOptions dopt;
  dopt.algorithm = Algorithm::Descent;
  ReportData dr = run_text(kSquare, dopt);
  CHECK(dr.algorithm == "descent");
  CHECK(dr.have_layers);
  CHECK(dr.descent_layers == std::vector<uint64_t>{1, 2});
  CHECK(!dr.have_cells);
}

TEST_CASE("auto selection follows the published thresholds") {
  // dim-20 cube from constraints: 40 forms <= max(42, 51)
  CHECK(auto_select_counts(21, 40, 1048576, false) == Algorithm::Lawrence);
  // dim-20 cross polytope from vertices: 2^20 forms, way past every cap
  CHECK(auto_select_counts(21, 1048576, 40, true) == Algorithm::Primal);
  // simplices always stay under the form cap
  CHECK(auto_select_counts(6, 6, 6, true) == Algorithm::Lawrence);
  // constraints mode prefers descent once lawrence is out
  CHECK(auto_select_counts(5, 40, 10, false) == Algorithm::Descent);
  // vertex input with moderately many forms: descent while forms <= 8 * rays
  CHECK(auto_select_counts(5, 40, 10, true) == Algorithm::Descent);
  CHECK(auto_select_counts(5, 100, 10, true) == Algorithm::Primal);
  // boundary cases around max(2 dim, dim + 30)
  CHECK(auto_select_counts(5, 35, 1, true) == Algorithm::Lawrence);
  CHECK(auto_select_counts(5, 36, 1, true) == Algorithm::Primal);
  CHECK(auto_select_counts(20, 50, 5, true) == Algorithm::Lawrence);
}

TEST_CASE("fixed precision runs through lawrence") {
  RunOptions opt;
  opt.fixed = true;
  opt.digits = 4;
  ReportData rd = run_text(kSquare, opt);
  CHECK(rd.algorithm == "lawrence");
  CHECK(rd.fixed_mode);
  // per-summand truncation toward zero: within 4 units of 2.0000 either way
  auto units_of = [](std::string s) {
    s.erase(s.find('.'), 1);
    return std::stoll(s);
  };
  CHECK(units_of(rd.vol_fixed) <= 20004);
  CHECK(units_of(rd.vol_fixed) >= 19996);
  CHECK(rd.vol_err == "0.0004");  // 4 hollow facets, one unit each
  CHECK(rd.pyr_fixed == rd.vol_fixed);  // grading denominator is 1
  CHECK(rd.pyr_err == "0.0004");
  CHECK(run_text(kSquare, opt).vol_fixed == rd.vol_fixed);  // deterministic

  auto j = nlohmann::json::parse(polyvol::render_json(rd));
  CHECK(j["volume"]["decimal"] == rd.vol_fixed);
  CHECK(j["volume"]["error_bound"] == "0.0004");

  RunOptions bad = opt;
  bad.algorithm = Algorithm::Primal;
  CHECK(exit_code_of([&] { run_text(kSquare, bad); }) == 2);
  bad = opt;
  bad.digits = 0;
  CHECK(exit_code_of([&] { run_text(kSquare, bad); }) == 2);
  bad = opt;
  bad.pattern_depth = 0;
  CHECK(exit_code_of([&] { run_text(kSquare, bad); }) == 2);
}

TEST_CASE("word tier restarts into gmp on overflow") {
  ReportData rd = run_text(kBigSimplex);
  CHECK(rd.arith == "big(restarted)");
  CHECK(rd.vol_num == "16000000000000000000000000000000");
  CHECK(rd.vol_den == "1");

  RunOptions big;
  big.arith = ArithChoice::Big;
  ReportData rb = run_text(kBigSimplex, big);
  CHECK(rb.arith == "big");
  CHECK(rb.vol_num == rd.vol_num);
  CHECK(rb.vol_den == rd.vol_den);

  RunOptions word;
  word.arith = ArithChoice::Word;
  try {
    run_text(kBigSimplex, word);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Internal);
    CHECK(e.exit_code() == 3);
  }
}

TEST_CASE("doubled grading keeps the pyramid identity") {
  for (Algorithm a : {Algorithm::Primal, Algorithm::Descent, Algorithm::Lawrence}) {
    RunOptions opt;
    opt.algorithm = a;
    ReportData rd = run_text(kSquareDoubled, opt);
    CHECK(rd.grading_denominator == "2");
    CHECK(rd.vol_num == "1");
    CHECK(rd.vol_den == "2");
    CHECK(rd.pyr_num == "1");
    CHECK(rd.pyr_den == "4");
  }
}

TEST_CASE("euclidean volume only for full-dimensional default gradings") {
  RunOptions opt;
  opt.euclidean = true;
  ReportData rd = run_text(kSquare, opt);
  CHECK(rd.have_euclidean);
  CHECK(rd.euclid_num == "1");
  CHECK(rd.euclid_den == "1");

  // [0,3]^3: lattice volume 162, euclidean 27
  std::string dilated = "amb_space 3\nvertices 8\n";
  for (int v = 0; v < 8; ++v) {
    dilated += std::to_string(3 * (v & 1));
    dilated += " " + std::to_string(3 * ((v >> 1) & 1));
    dilated += " " + std::to_string(3 * ((v >> 2) & 1)) + "\n";
  }
  ReportData rc = run_text(dilated, opt);
  CHECK(rc.vol_num == "162");
  CHECK(rc.euclid_num == "27");
  CHECK(rc.euclid_den == "1");

  // custom grading: no euclidean output, but an explanatory note
  ReportData rg = run_text(kSquareDoubled, opt);
  CHECK(!rg.have_euclidean);
  CHECK(rg.notes.size() == 1);

  // lower-dimensional polytope: same
  ReportData re = run_text(
      "amb_space 2\nvertices 2\n2 0\n0 2\n", opt);
  CHECK(!re.have_euclidean);
  CHECK(re.notes.size() == 1);

  // fixed mode has no exact rational to divide
  RunOptions fixed = opt;
  fixed.fixed = true;
  fixed.digits = 3;
  ReportData rf = run_text(kSquare, fixed);
  CHECK(!rf.have_euclidean);
  CHECK(rf.notes.size() == 1);
}

TEST_CASE("verification wiring covers every algorithm choice") {
  for (Algorithm a : {Algorithm::Primal, Algorithm::Descent, Algorithm::Lawrence}) {
    RunOptions opt;
    opt.algorithm = a;
    opt.verify_samples = 200;
    ReportData rd = run_text(kCross3, opt);
    CHECK(rd.verify_ran);
    CHECK(rd.verify_samples == 200);
    CHECK(rd.vol_num == "8");
  }
  RunOptions fixed;
  fixed.fixed = true;
  fixed.digits = 2;
  fixed.verify_samples = 100;
  ReportData rf = run_text(kSquare, fixed);
  CHECK(rf.verify_ran);
}

TEST_CASE("reports are bit identical across threads and depths") {
#ifdef _OPENMP
  int saved = omp_get_max_threads();
#endif
  for (Algorithm a : {Algorithm::Primal, Algorithm::Descent, Algorithm::Lawrence}) {
    std::string base;
    for (int threads : {1, 2, 8}) {
      RunOptions opt;
      opt.algorithm = a;
      opt.threads = threads;
      ReportData rd = run_text(kCross3, opt);
      std::string text = strip_wall(polyvol::render_text(rd));
      std::string json = strip_wall(polyvol::render_json(rd));
      if (base.empty()) {
        base = text + json;
      } else {
        CHECK(base == text + json);
      }
    }
  }
  {
    std::string base;
    for (unsigned depth : {1u, 2u}) {
      RunOptions opt;
      opt.algorithm = Algorithm::Lawrence;
      opt.pattern_depth = depth;
      ReportData rd = run_text(kCross3, opt);
      std::string text = strip_wall(polyvol::render_text(rd));
      if (base.empty())
        base = text;
      else
        CHECK(base == text);
    }
  }
  // different seeds may pick different generic elements but never change
  // the volume
  RunOptions s1, s2;
  s1.seed = 0;
  s2.seed = 12345;
  CHECK(run_text(kCross3, s1).vol_num == run_text(kCross3, s2).vol_num);
#ifdef _OPENMP
  omp_set_num_threads(saved);
#endif
}

TEST_CASE("geometric and parse failures keep their exit codes") {
  CHECK(exit_code_of([] {
          run_text("amb_space 1\ninequalities 1\n1 0\n");
        }) == 3);
  CHECK(exit_code_of([] { run_text("amb_space 2\nnonsense 1\n"); }) == 2);
  CHECK(exit_code_of([] { run_text(kSquare); }) == 0);
}

TEST_CASE("triangulation export writes ray index rows") {
  const char* path = "engine_export_test.txt";
  std::remove(path);
  RunOptions opt;
  opt.algorithm = Algorithm::Primal;
  opt.export_triangulation = path;
  run_text(kSquare, opt);
  std::ifstream in(path);
  REQUIRE(in.good());
  std::string header;
  std::getline(in, header);
  CHECK(header == "# cells 2");
  int rows = 0;
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    int idx, cnt = 0;
    while (ls >> idx) {
      CHECK(idx >= 0);
      CHECK(idx < 4);
      ++cnt;
    }
    CHECK(cnt == 3);
    ++rows;
  }
  CHECK(rows == 2);
  std::remove(path);

  // descent has no triangulation to export; the report says so
  RunOptions dopt;
  dopt.algorithm = Algorithm::Descent;
  dopt.export_triangulation = path;
  ReportData rd = run_text(kSquare, dopt);
  CHECK(rd.notes.size() == 1);
  std::ifstream gone(path);
  CHECK(!gone.good());
}

#include <charconv>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "polyvol/engine.hpp"
#include "polyvol/errors.hpp"
#include "polyvol/input.hpp"
#include "polyvol/report.hpp"

namespace {

polyvol::Algorithm parse_algorithm(const std::string& s) {
  if (s == "primal") return polyvol::Algorithm::Primal;
  if (s == "descent") return polyvol::Algorithm::Descent;
  if (s == "lawrence") return polyvol::Algorithm::Lawrence;
  return polyvol::Algorithm::Auto;
}

polyvol::ArithChoice parse_arith(const std::string& s) {
  if (s == "word") return polyvol::ArithChoice::Word;
  if (s == "big") return polyvol::ArithChoice::Big;
  return polyvol::ArithChoice::Auto;
}

void parse_precision(const std::string& s, polyvol::RunOptions& opt) {
  if (s == "exact") return;
  if (s == "fixed") {
    opt.fixed = true;  // default digit count from RunOptions
    return;
  }
  if (s.rfind("fixed:", 0) == 0) {
    const char* b = s.data() + 6;
    const char* e = s.data() + s.size();
    unsigned digits = 0;
    auto [p, ec] = std::from_chars(b, e, digits);
    if (ec == std::errc() && p == e) {
      opt.fixed = true;
      opt.digits = digits;
      return;
    }
  }
  throw polyvol::Error(polyvol::ErrorKind::ParseError,
                       "bad --precision value '" + s +
                           "': expected exact or fixed:<digits>");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"lattice-normalized volumes of rational polytopes, exactly"};
  std::string input_path;
  std::string algorithm = "auto", precision = "exact", report = "text";
  std::string arith = "auto", export_path;
  uint64_t seed = 0, verify_samples = 0;
  int threads = 0;
  unsigned pattern_depth = 1;
  bool euclidean = false;

  app.add_option("input", input_path, "polytope description file")->required();
  app.add_option("--algorithm", algorithm,
                 "volume algorithm (auto, primal, descent, lawrence)")
      ->check(CLI::IsMember({"auto", "primal", "descent", "lawrence"}));
  app.add_option("--precision", precision,
                 "exact or fixed:<digits> (fixed defaults to 100 digits)");
  app.add_option("--threads", threads, "worker thread count")
      ->check(CLI::Range(1, 4096));
  app.add_flag("--verify{1000}", verify_samples,
               "sample the signed decomposition and cross-check a second "
               "algorithm; optional sample count");
  app.add_flag("--euclidean", euclidean, "also report the euclidean volume");
  app.add_option("--seed", seed, "seed for the generic-direction search");
  app.add_option("--report", report, "output format")
      ->check(CLI::IsMember({"text", "json"}));
  app.add_option("--arith", arith, "integer tier (auto, word, big)")
      ->check(CLI::IsMember({"auto", "word", "big"}));
  app.add_option("--pattern-depth", pattern_depth,
                 "chunking depth of the hollow triangulation scan");
  app.add_option("--export-triangulation", export_path,
                 "write triangulation cells to this file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    std::ifstream in(input_path);
    if (!in)
      throw polyvol::Error(polyvol::ErrorKind::ParseError,
                           "cannot open '" + input_path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();

    polyvol::RunOptions opt;
    opt.algorithm = parse_algorithm(algorithm);
    opt.arith = parse_arith(arith);
    parse_precision(precision, opt);
    opt.threads = threads;
    opt.seed = seed;
    opt.pattern_depth = pattern_depth;
    opt.euclidean = euclidean;
    opt.verify_samples = verify_samples;
    opt.export_triangulation = export_path;

    polyvol::ReportData rd = polyvol::run_problem(polyvol::parse_input(buf.str()), opt);
    std::cout << (report == "json" ? polyvol::render_json(rd)
                                   : polyvol::render_text(rd));
    return 0;
  } catch (const polyvol::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.exit_code();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}

#include "polyvol/report.hpp"

#include <sstream>

#include "json.hpp"

namespace polyvol {

std::string fixed_point_string(const std::string& units, unsigned digits) {
  bool neg = !units.empty() && units[0] == '-';
  std::string mag = neg ? units.substr(1) : units;
  if (mag.size() < digits + 1) mag.insert(0, digits + 1 - mag.size(), '0');
  if (digits) mag.insert(mag.size() - digits, ".");
  return neg ? "-" + mag : mag;
}

namespace {

std::string ratio(const std::string& num, const std::string& den) {
  return den == "1" ? num : num + "/" + den;
}

}  // namespace

std::string render_text(const ReportData& rd) {
  std::ostringstream o;
  o << "algorithm: " << rd.algorithm << "\n";
  o << "arith: " << rd.arith << "\n";
  if (rd.fixed_mode) {
    o << "volume: " << rd.vol_fixed << "\n";
    o << "volume_error_bound: " << rd.vol_err << "\n";
    o << "volume_cone_pyramid: " << rd.pyr_fixed << "\n";
    o << "volume_cone_pyramid_error_bound: " << rd.pyr_err << "\n";
  } else {
    o << "volume: " << ratio(rd.vol_num, rd.vol_den) << "\n";
    o << "volume_decimal: " << rd.vol_decimal << "\n";
    o << "volume_cone_pyramid: " << ratio(rd.pyr_num, rd.pyr_den) << "\n";
  }
  o << "grading_denominator: " << rd.grading_denominator << "\n";
  if (rd.have_euclidean) {
    o << "euclidean_volume: " << ratio(rd.euclid_num, rd.euclid_den) << "\n";
    o << "euclidean_volume_decimal: " << rd.euclid_decimal << "\n";
  }
  if (rd.have_cells) o << "triangulation_cells: " << rd.triangulation_cells << "\n";
  if (rd.have_hollow) o << "hollow_facets: " << rd.hollow_facets << "\n";
  if (rd.have_generic) {
    o << "generic_retries: " << rd.generic_retries << "\n";
    o << "reshuffles: " << rd.reshuffles << "\n";
  }
  if (rd.have_layers) {
    o << "descent_layers:";
    for (uint64_t n : rd.descent_layers) o << " " << n;
    o << "\n";
  }
  if (rd.verify_ran)
    o << "verify: pass (" << rd.verify_samples << " samples)\n";
  for (const auto& n : rd.notes) o << "note: " << n << "\n";
  o << "wall_ms: " << rd.wall_ms << "\n";
  return o.str();
}

std::string render_json(const ReportData& rd) {
  nlohmann::ordered_json j;
  j["algorithm"] = rd.algorithm;
  if (rd.fixed_mode) {
    j["volume"] = {{"decimal", rd.vol_fixed}, {"error_bound", rd.vol_err}};
    j["volume_cone_pyramid"] = {{"decimal", rd.pyr_fixed},
                                {"error_bound", rd.pyr_err}};
  } else {
    j["volume"] = {{"num", rd.vol_num}, {"den", rd.vol_den}};
    j["volume_cone_pyramid"] = {{"num", rd.pyr_num}, {"den", rd.pyr_den}};
  }
  j["grading_denominator"] = rd.grading_denominator;
  if (rd.have_euclidean)
    j["euclidean_volume"] = {{"num", rd.euclid_num}, {"den", rd.euclid_den}};
  nlohmann::ordered_json& d = j["diagnostics"] = nlohmann::ordered_json::object();
  d["arith"] = rd.arith;
  if (rd.have_cells) d["triangulation_cells"] = rd.triangulation_cells;
  if (rd.have_hollow) d["hollow_facets"] = rd.hollow_facets;
  if (rd.have_generic) {
    d["generic_retries"] = rd.generic_retries;
    d["reshuffles"] = rd.reshuffles;
  }
  if (rd.have_layers) d["descent_layers"] = rd.descent_layers;
  if (rd.verify_ran)
    d["verify"] = {{"samples", rd.verify_samples}, {"status", "pass"}};
  if (!rd.notes.empty()) d["notes"] = rd.notes;
  d["wall_ms"] = rd.wall_ms;
  return j.dump(2) + "\n";
}

}  // namespace polyvol

#pragma once

// File formats: level CSV ("ell,energy_cm1"), branch-line CSV
// ("branch,ell,wavenumber_cm1"), fit results as JSON, residual tables as
// CSV.  Parsing is strict; malformed input raises DataError.

#include <cstdio>
#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>
#include <string>
#include <vector>

#include "qrot/fitting.hpp"

namespace qrot {

using Json = nlohmann::json;

namespace detail {

inline std::vector<std::string> split_csv_row(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream ss(line);
  while (std::getline(ss, field, ',')) {
    // trim spaces and a possible trailing CR
    const auto b = field.find_first_not_of(" \t\r");
    const auto e = field.find_last_not_of(" \t\r");
    out.push_back(b == std::string::npos ? std::string()
                                         : field.substr(b, e - b + 1));
  }
  return out;
}

inline double parse_double(const std::string& s, const char* what) {
  std::size_t pos = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &pos);
  } catch (const std::exception&) {
    throw DataError(std::string("cannot parse ") + what + " from '" + s + "'");
  }
  if (pos != s.size())
    throw DataError(std::string("trailing characters in ") + what + " '" + s +
                    "'");
  return v;
}

inline int parse_int(const std::string& s, const char* what) {
  std::size_t pos = 0;
  int v = 0;
  try {
    v = std::stoi(s, &pos);
  } catch (const std::exception&) {
    throw DataError(std::string("cannot parse ") + what + " from '" + s + "'");
  }
  if (pos != s.size())
    throw DataError(std::string("trailing characters in ") + what + " '" + s +
                    "'");
  return v;
}

}  // namespace detail

inline LevelDataset read_levels_csv(std::istream& in,
                                    const std::string& band = "v=0") {
  LevelDataset data;
  data.band = band;
  std::string line;
  bool header = true;
  while (std::getline(in, line)) {
    if (line.empty() || line == "\r") continue;
    const auto fields = detail::split_csv_row(line);
    if (header) {
      if (fields.size() != 2 || fields[0] != "ell" ||
          fields[1] != "energy_cm1")
        throw DataError("level CSV must start with header 'ell,energy_cm1'");
      header = false;
      continue;
    }
    if (fields.size() != 2)
      throw DataError("level CSV rows need exactly 2 fields");
    const int ell = detail::parse_int(fields[0], "ell");
    const double e = detail::parse_double(fields[1], "energy");
    if (!data.levels.empty()) {
      if (ell <= data.levels.back().first)
        throw DataError("level ells must be strictly increasing");
      if (e <= data.levels.back().second)
        throw DataError("level energies must be strictly increasing");
    }
    data.levels.emplace_back(ell, e);
  }
  if (header) throw DataError("level CSV is empty");
  return data;
}

inline LevelDataset read_levels_csv_file(const std::string& path,
                                         const std::string& band = "v=0") {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open level file '" + path + "'");
  return read_levels_csv(in, band);
}

inline void write_levels_csv(std::ostream& out, const LevelDataset& data) {
  out << "ell,energy_cm1\n";
  char buf[64];
  for (const auto& [ell, e] : data.levels) {
    std::snprintf(buf, sizeof buf, "%d,%.10f\n", ell, e);
    out << buf;
  }
}

inline std::vector<BranchLine> read_branch_csv(std::istream& in) {
  std::vector<BranchLine> lines;
  std::string line;
  bool header = true;
  while (std::getline(in, line)) {
    if (line.empty() || line == "\r") continue;
    const auto fields = detail::split_csv_row(line);
    if (header) {
      if (fields.size() != 3 || fields[0] != "branch" || fields[1] != "ell" ||
          fields[2] != "wavenumber_cm1")
        throw DataError(
            "branch CSV must start with header 'branch,ell,wavenumber_cm1'");
      header = false;
      continue;
    }
    if (fields.size() != 3)
      throw DataError("branch CSV rows need exactly 3 fields");
    BranchLine bl;
    if (fields[0] == "R")
      bl.branch = Branch::R;
    else if (fields[0] == "P")
      bl.branch = Branch::P;
    else
      throw DataError("branch must be 'R' or 'P', got '" + fields[0] + "'");
    bl.ell = detail::parse_int(fields[1], "ell");
    bl.wavenumber = detail::parse_double(fields[2], "wavenumber");
    lines.push_back(bl);
  }
  if (header) throw DataError("branch CSV is empty");
  return lines;
}

inline std::vector<BranchLine> read_branch_csv_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open branch file '" + path + "'");
  return read_branch_csv(in);
}

inline Json params_to_json(const ModelParams& p) {
  Json j;
  if (const auto* d = std::get_if<DeformedParams>(&p)) {
    j["A"] = d->A;
    j["tau"] = d->tau;
  } else if (const auto* r = std::get_if<RotorExpansionParams>(&p)) {
    j["A"] = r->A;
    j["B"] = r->B;
  } else if (const auto* h = std::get_if<HolmbergLipasParams>(&p)) {
    j["a"] = h->a;
    j["b"] = h->b;
  }
  return j;
}

inline Json fit_result_to_json(const FitResult& r) {
  Json j;
  j["model"] = model_kind_name(r.kind);
  j["params"] = params_to_json(r.params);
  j["sigma_cm1"] = r.sigma;
  Json res = Json::array();
  for (const auto& [ell, d] : r.residuals)
    res.push_back(Json{{"ell", ell}, {"value", d}});
  j["residuals"] = res;
  j["converged"] = r.converged;
  j["iterations"] = r.iterations;
  return j;
}

// Residual table for plotting: ell, measured, model, difference.
inline void write_residual_csv(std::ostream& out, const LevelDataset& data,
                               const FitResult& r) {
  out << "ell,exp_cm1,model_cm1,residual_cm1\n";
  char buf[128];
  for (std::size_t i = 0; i < data.levels.size(); ++i) {
    const auto [ell, e] = data.levels[i];
    const double d = r.residuals[i].second;
    std::snprintf(buf, sizeof buf, "%d,%.10f,%.10f,%.10f\n", ell, e, e - d, d);
    out << buf;
  }
}

}  // namespace qrot

// Command-line front end: algebra verification, spectrum generation,
// expansion dumps, branch-line ingestion, model fitting, and the
// model-comparison report for the HF v=0 band.
//
// Exit codes: 0 success, 1 verification failure, 2 input error,
// 3 fit non-convergence.

#include <CLI11.hpp>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>

#include "qrot/qrot.hpp"

#ifndef QROT_DEFAULT_DATA_DIR
#define QROT_DEFAULT_DATA_DIR "."
#endif

namespace {

using qrot::Json;

constexpr double kInvarianceThreshold = 1e-12;
constexpr double kEigenvalueThreshold = 1e-10;
constexpr double kNoncommutationFloor = 1e-6;

std::string data_dir() {
  if (const char* env = std::getenv("QROTOR_DATA_DIR")) return env;
  return QROT_DEFAULT_DATA_DIR;
}

std::string resolve_levels_path(const std::string& arg) {
  if (arg.empty() || arg == "hf") return data_dir() + "/hf_v0_levels.csv";
  return arg;
}

std::string resolve_branches_path(const std::string& arg) {
  if (arg.empty() || arg == "hf") return data_dir() + "/hf_branch_lines.csv";
  return arg;
}

std::vector<int> parse_ell_range(const std::string& range) {
  std::vector<int> out;
  int from = 0, to = 0, step = 1;
  if (std::sscanf(range.c_str(), "%d:%d:%d", &from, &to, &step) == 3) {
    if (step <= 0) throw qrot::DataError("ell range step must be positive");
    for (int l = from; l <= to; l += step) out.push_back(l);
    return out;
  }
  if (std::sscanf(range.c_str(), "%d:%d", &from, &to) == 2) {
    for (int l = from; l <= to; ++l) out.push_back(l);
    return out;
  }
  std::stringstream ss(range);
  std::string tok;
  while (std::getline(ss, tok, ','))
    out.push_back(qrot::detail::parse_int(tok, "ell"));
  return out;
}

std::ostream& open_or_stdout(const std::string& path, std::ofstream& file) {
  if (path.empty()) return std::cout;
  file.open(path);
  if (!file) throw qrot::DataError("cannot open output file '" + path + "'");
  return file;
}

// ---------------------------------------------------------------- verify --

struct CheckRow {
  int two_ell;
  double tau;
  std::string regime;
  std::string name;
  double residual;
  double threshold;
  bool exceed;  // noncommutation checks must exceed, others must stay below
  bool required;
  bool pass;
};

void collect_checks(int two_ell, const qrot::DeformationParameter& p,
                    std::vector<CheckRow>& rows) {
  const qrot::SpinLabel ell(two_ell);
  for (const auto& [name, value] : qrot::commutator_residuals(ell, p)) {
    CheckRow row{two_ell, p.tau(), qrot::regime_name(p.regime()),
                 name,    value,   kInvarianceThreshold,
                 false,   true,    true};
    if (qrot::is_noncommutation_check(name)) {
      row.exceed = true;
      row.threshold = kNoncommutationFloor;
      row.required = qrot::cross_noncommutation_applies(ell, p);
      row.pass = !row.required || value > kNoncommutationFloor;
    } else {
      row.pass = value <= kInvarianceThreshold;
    }
    rows.push_back(row);
  }
  if (p.regime() == qrot::Regime::Real) {
    for (const auto& [name, value] : qrot::ito_residuals(ell, p)) {
      const double thr = name == "hamiltonian_eigen_closed"
                             ? kEigenvalueThreshold
                             : kInvarianceThreshold;
      rows.push_back(CheckRow{two_ell, p.tau(),
                              qrot::regime_name(p.regime()), name, value, thr,
                              false, true, value <= thr});
    }
  }
}

void dump_generators(std::ostream& os, int two_ell,
                     const qrot::DeformationParameter& p) {
  const qrot::SpinLabel ell(two_ell);
  const auto L = qrot::suq2_generators(ell, p);
  const auto l = qrot::su2_generators(ell);
  const auto c2 = qrot::casimir_q(ell, p);
  const std::pair<const char*, const qrot::OperatorMatrix*> mats[] = {
      {"L_plus", &L.plus},   {"L_minus", &L.minus}, {"L_zero", &L.zero},
      {"l_plus", &l.plus},   {"l_minus", &l.minus}, {"l_zero", &l.zero},
      {"casimir_q", &c2}};
  for (const auto& [name, m] : mats) {
    os << "# " << name << " two_ell=" << two_ell << " tau=" << p.tau()
       << " regime=" << qrot::regime_name(p.regime()) << '\n';
    qrot::dump_matrix(os, *m);
  }
}

int run_verify(int ell_max, const std::vector<double>& taus,
               const std::string& out_path, const std::string& dump_path) {
  std::vector<CheckRow> rows;
  std::ofstream dump_file;
  std::ostream* dump = nullptr;
  if (!dump_path.empty()) {
    dump_file.open(dump_path);
    if (!dump_file)
      throw qrot::DataError("cannot open dump file '" + dump_path + "'");
    dump = &dump_file;
  }
  for (double tau : taus) {
    const auto real = qrot::DeformationParameter::real(tau);
    const auto phase = qrot::DeformationParameter::phase(tau, ell_max);
    for (int two_ell = 0; two_ell <= 2 * ell_max; ++two_ell) {
      collect_checks(two_ell, real, rows);
      collect_checks(two_ell, phase, rows);
      if (dump) {
        dump_generators(*dump, two_ell, real);
        dump_generators(*dump, two_ell, phase);
      }
    }
  }
  Json report;
  report["ell_max"] = ell_max;
  report["taus"] = taus;
  Json checks = Json::array();
  bool all_pass = true;
  const CheckRow* worst = nullptr;
  for (const auto& r : rows) {
    checks.push_back(Json{{"two_ell", r.two_ell},
                          {"tau", r.tau},
                          {"regime", r.regime},
                          {"name", r.name},
                          {"residual", r.residual},
                          {"threshold", r.threshold},
                          {"kind", r.exceed ? "noncommutation" : "invariance"},
                          {"required", r.required},
                          {"pass", r.pass}});
    if (!r.pass) {
      all_pass = false;
      if (!worst) worst = &r;
    }
  }
  report["checks"] = checks;
  report["pass"] = all_pass;
  std::ofstream out_file;
  open_or_stdout(out_path, out_file) << report.dump(2) << '\n';
  if (!all_pass && worst) {
    std::cerr << "verification failed: " << worst->name
              << " (two_ell=" << worst->two_ell << ", tau=" << worst->tau
              << ", regime=" << worst->regime << ") residual "
              << worst->residual << (worst->exceed ? " below floor "
                                                   : " above threshold ")
              << worst->threshold << '\n';
    return 1;
  }
  return 0;
}

// -------------------------------------------------------------- spectrum --

qrot::ModelParams build_params(qrot::ModelKind kind, std::optional<double> A,
                               std::optional<double> tau,
                               std::optional<double> B,
                               std::optional<double> a,
                               std::optional<double> b) {
  using qrot::ModelKind;
  if (qrot::is_deformed(kind)) {
    if (!A || !tau)
      throw qrot::DataError("model " + qrot::model_kind_name(kind) +
                            " needs --A and --tau");
    return qrot::DeformedParams{*A, *tau};
  }
  if (kind == ModelKind::III) {
    if (!A || !B) throw qrot::DataError("model III needs --A and --B");
    return qrot::RotorExpansionParams{*A, *B, 0.0, 0.0};
  }
  if (!a || !b) throw qrot::DataError("model IV needs --a and --b");
  return qrot::HolmbergLipasParams{*a, *b};
}

int run_spectrum(const std::string& model, std::optional<double> A,
                 std::optional<double> tau, std::optional<double> B,
                 std::optional<double> a, std::optional<double> b,
                 const std::string& ells_spec, bool as_json,
                 const std::string& out_path) {
  const qrot::ModelKind kind = qrot::parse_model_kind(model);
  const qrot::ModelParams params = build_params(kind, A, tau, B, a, b);
  const std::vector<int> ells = parse_ell_range(ells_spec);
  const auto table = qrot::spectrum_table(kind, params, ells);
  std::ofstream out_file;
  std::ostream& out = open_or_stdout(out_path, out_file);
  if (as_json) {
    Json j;
    j["model"] = qrot::model_kind_name(kind);
    j["params"] = qrot::params_to_json(params);
    Json levels = Json::array();
    for (const auto& [ell, e] : table)
      levels.push_back(Json{{"ell", ell}, {"energy_cm1", e}});
    j["levels"] = levels;
    out << j.dump(2) << '\n';
  } else {
    out << "ell,energy_cm1\n";
    char buf[64];
    for (const auto& [ell, e] : table) {
      std::snprintf(buf, sizeof buf, "%d,%.10f\n", ell, e);
      out << buf;
    }
  }
  return 0;
}

// ---------------------------------------------------------------- expand --

int run_expand(const std::string& family, double tau, int terms,
               const std::string& out_path) {
  qrot::ExpansionCoefficients c;
  if (family == "suq2")
    c = qrot::suq2_exact_expansion(tau, terms);
  else if (family == "ito")
    c = qrot::ito_exact_expansion(tau, terms);
  else
    throw qrot::DataError("unknown expansion family '" + family +
                          "' (expected suq2 or ito)");
  std::ofstream out_file;
  std::ostream& out = open_or_stdout(out_path, out_file);
  out << "n,coefficient\n";
  char buf[64];
  for (std::size_t n = 0; n < c.coeffs.size(); ++n) {
    // fold the prefactor in: row n multiplies (l(l+1))^{n+1} in E/A
    std::snprintf(buf, sizeof buf, "%zu,%.17g\n", n,
                  c.prefactor * c.coeffs[n]);
    out << buf;
  }
  return 0;
}

// ---------------------------------------------------------------- ingest --

int run_ingest(const std::string& branches, const std::string& band,
               const std::string& out_path) {
  const auto lines = qrot::read_branch_csv_file(resolve_branches_path(branches));
  qrot::Band b;
  if (band == "v0")
    b = qrot::Band::v0;
  else if (band == "v1")
    b = qrot::Band::v1;
  else
    throw qrot::DataError("band must be v0 or v1");
  const qrot::LevelDataset data = qrot::reduce_branches(lines, b);
  std::ofstream out_file;
  qrot::write_levels_csv(open_or_stdout(out_path, out_file), data);
  return 0;
}

// ------------------------------------------------------------------- fit --

void print_fit_table(std::ostream& out,
                     const std::vector<qrot::FitResult>& fits) {
  out << "model      A_cm1  10^2*tau    10^2*B      a_cm1     10^3*b  "
         "sigma_cm1\n";
  char buf[160];
  for (const auto& r : fits) {
    std::string c1 = "-", c2 = "-", c3 = "-", c4 = "-", c5 = "-";
    char tmp[40];
    if (const auto* d = std::get_if<qrot::DeformedParams>(&r.params)) {
      std::snprintf(tmp, sizeof tmp, "%.4f", d->A);
      c1 = tmp;
      std::snprintf(tmp, sizeof tmp, "%.4f", 100.0 * d->tau);
      c2 = tmp;
    } else if (const auto* p =
                   std::get_if<qrot::RotorExpansionParams>(&r.params)) {
      std::snprintf(tmp, sizeof tmp, "%.4f", p->A);
      c1 = tmp;
      std::snprintf(tmp, sizeof tmp, "%.4f", 100.0 * p->B);
      c3 = tmp;
    } else if (const auto* h =
                   std::get_if<qrot::HolmbergLipasParams>(&r.params)) {
      std::snprintf(tmp, sizeof tmp, "%.0f", h->a);
      c4 = tmp;
      std::snprintf(tmp, sizeof tmp, "%.4f", 1000.0 * h->b);
      c5 = tmp;
    }
    std::snprintf(buf, sizeof buf, "%-5s %10s %9s %9s %10s %10s %10.4f\n",
                  qrot::model_kind_name(r.kind).c_str(), c1.c_str(),
                  c2.c_str(), c3.c_str(), c4.c_str(), c5.c_str(), r.sigma);
    out << buf;
  }
}

int run_fit(const std::string& data_path, const std::string& model,
            const std::string& out_path, const std::string& residuals_path) {
  const qrot::LevelDataset data =
      qrot::read_levels_csv_file(resolve_levels_path(data_path));
  std::vector<qrot::FitResult> fits;
  if (model == "all") {
    for (auto kind :
         {qrot::ModelKind::I, qrot::ModelKind::Iprime, qrot::ModelKind::II,
          qrot::ModelKind::IIprime, qrot::ModelKind::III, qrot::ModelKind::IV})
      fits.push_back(qrot::fit(kind, data));
  } else {
    fits.push_back(qrot::fit(qrot::parse_model_kind(model), data));
  }

  if (model == "all") {
    print_fit_table(std::cout, fits);
    if (!out_path.empty()) {
      Json j = Json::array();
      for (const auto& r : fits) j.push_back(qrot::fit_result_to_json(r));
      std::ofstream out(out_path);
      if (!out)
        throw qrot::DataError("cannot open output file '" + out_path + "'");
      out << j.dump(2) << '\n';
    }
  } else {
    std::ofstream out_file;
    open_or_stdout(out_path, out_file)
        << qrot::fit_result_to_json(fits.front()).dump(2) << '\n';
  }
  if (!residuals_path.empty()) {
    std::ofstream rout(residuals_path);
    if (!rout)
      throw qrot::DataError("cannot open residual file '" + residuals_path +
                            "'");
    qrot::write_residual_csv(rout, data, fits.front());
  }
  for (const auto& r : fits)
    if (!r.converged) {
      std::cerr << "fit for model " << qrot::model_kind_name(r.kind)
                << " did not converge after " << r.iterations
                << " iterations\n";
      return 3;
    }
  return 0;
}

// ---------------------------------------------------------------- report --

std::string table_cell(double v) {
  char buf[32];
  // mixed precision: two decimals below 1000, one above
  std::snprintf(buf, sizeof buf, std::abs(v) < 1000.0 ? "%.2f" : "%.1f", v);
  return buf;
}

int run_report(const std::string& data_path, const std::string& csv_path) {
  const qrot::LevelDataset data =
      qrot::read_levels_csv_file(resolve_levels_path(data_path));
  const qrot::ModelKind kinds[] = {qrot::ModelKind::I, qrot::ModelKind::Iprime,
                                   qrot::ModelKind::II,
                                   qrot::ModelKind::IIprime,
                                   qrot::ModelKind::III, qrot::ModelKind::IV};
  std::vector<qrot::FitResult> fits;
  for (auto k : kinds) fits.push_back(qrot::fit(k, data));

  char buf[256];
  std::snprintf(buf, sizeof buf, "%5s %9s %9s %9s %9s %9s %9s %9s\n", "ell",
                "exp.", "I", "I'", "II", "II'", "III", "IV");
  std::cout << buf;
  for (const auto& [ell, e] : data.levels) {
    std::string cells[7];
    cells[0] = table_cell(e);
    for (int k = 0; k < 6; ++k)
      cells[k + 1] = table_cell(qrot::energy(kinds[k], fits[k].params, ell));
    std::snprintf(buf, sizeof buf, "%5d %9s %9s %9s %9s %9s %9s %9s\n", ell,
                  cells[0].c_str(), cells[1].c_str(), cells[2].c_str(),
                  cells[3].c_str(), cells[4].c_str(), cells[5].c_str(),
                  cells[6].c_str());
    std::cout << buf;
  }
  std::cout << '\n';
  print_fit_table(std::cout, fits);

  if (!csv_path.empty()) {
    std::ofstream out(csv_path);
    if (!out)
      throw qrot::DataError("cannot open CSV file '" + csv_path + "'");
    out << "ell,exp_cm1,I,Ip,II,IIp,III,IV\n";
    for (const auto& [ell, e] : data.levels) {
      std::snprintf(buf, sizeof buf, "%d,%.10f", ell, e);
      out << buf;
      for (int k = 0; k < 6; ++k) {
        std::snprintf(buf, sizeof buf, ",%.10f",
                      qrot::energy(kinds[k], fits[k].params, ell));
        out << buf;
      }
      out << '\n';
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"q-deformed rotational spectrum models: verification, "
               "spectra, expansions, and fits"};
  app.require_subcommand(1);

  // verify
  auto* verify = app.add_subcommand(
      "verify", "check the algebra and tensor-operator identities");
  int ell_max = 4;
  std::vector<double> taus;
  std::string v_out, v_dump;
  verify->add_option("--ell-max", ell_max, "largest ell to check")
      ->check(CLI::Range(0, 64))
      ->required();
  verify->add_option("--tau", taus, "deformation parameters")
      ->required()
      ->delimiter(',');
  verify->add_option("--output", v_out, "write the JSON report to a file");
  verify->add_option("--dump", v_dump, "write generator matrices to a file");

  // spectrum
  auto* spectrum =
      app.add_subcommand("spectrum", "evaluate a model on a range of ell");
  std::string s_model, s_ells = "2:18:2", s_out;
  bool s_json = false;
  std::optional<double> s_A, s_tau, s_B, s_a, s_b;
  spectrum->add_option("--model", s_model, "I|Ip|II|IIp|III|IV")->required();
  spectrum->add_option("--A", s_A, "A in cm^-1 (models I, Ip, II, IIp, III)");
  spectrum->add_option("--tau", s_tau, "deformation parameter");
  spectrum->add_option("--B", s_B, "quadratic coefficient (model III)");
  spectrum->add_option("--a", s_a, "scale a in cm^-1 (model IV)");
  spectrum->add_option("--b", s_b, "shape b (model IV)");
  spectrum->add_option("--ells", s_ells, "range from:to:step or comma list");
  spectrum->add_flag("--json", s_json, "emit JSON with model metadata");
  spectrum->add_option("--output", s_out, "output path (default stdout)");

  // expand
  auto* expand = app.add_subcommand(
      "expand", "emit l(l+1) expansion coefficients as CSV");
  std::string e_family, e_out;
  double e_tau = 0.0;
  int e_terms = 40;
  expand->add_option("--family", e_family, "suq2|ito")->required();
  expand->add_option("--tau", e_tau, "deformation parameter")->required();
  expand->add_option("--terms", e_terms, "number of coefficients")
      ->check(CLI::Range(1, 64));
  expand->add_option("--output", e_out, "output path (default stdout)");

  // ingest
  auto* ingest = app.add_subcommand(
      "ingest", "reduce R/P branch lines to band levels");
  std::string i_branches, i_band = "v0", i_out;
  ingest->add_option("--branches", i_branches, "branch CSV path (or 'hf')")
      ->required();
  ingest->add_option("--band", i_band, "v0|v1");
  ingest->add_option("--output", i_out, "output path (default stdout)");

  // fit
  auto* fit_cmd = app.add_subcommand("fit", "least-squares fit of a model");
  std::string f_data = "hf", f_model, f_out, f_res;
  fit_cmd->add_option("--data", f_data, "level CSV path (or 'hf')");
  fit_cmd->add_option("--model", f_model, "I|Ip|II|IIp|III|IV|all")
      ->required();
  fit_cmd->add_option("--output", f_out, "write FitResult JSON here");
  fit_cmd->add_option("--residuals", f_res, "write residual CSV here");

  // report
  auto* report = app.add_subcommand(
      "report", "fit all six models and print the comparison table");
  std::string r_data = "hf", r_csv;
  report->add_option("--data", r_data, "level CSV path (or 'hf')");
  report->add_option("--csv", r_csv, "also write the table as CSV");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (verify->parsed())
      return run_verify(ell_max, taus, v_out, v_dump);
    if (spectrum->parsed())
      return run_spectrum(s_model, s_A, s_tau, s_B, s_a, s_b, s_ells, s_json,
                          s_out);
    if (expand->parsed()) return run_expand(e_family, e_tau, e_terms, e_out);
    if (ingest->parsed()) return run_ingest(i_branches, i_band, i_out);
    if (fit_cmd->parsed()) return run_fit(f_data, f_model, f_out, f_res);
    if (report->parsed()) return run_report(r_data, r_csv);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}

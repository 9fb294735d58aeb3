// Command-line front end: suite verification, CSV exports, action inversion
// and label evolution.
//
//   gklandau verify <suite> [--json|--csv] [--out PATH] [flags]
//   gklandau export <wigner_grid|cs_amplitudes|spectrum> --out PATH [flags]
//   gklandau invert-action --J TARGET --beta B
//   gklandau evolve-label --t T [label flags]
//
// A flat key=value config file (--config PATH) supplies defaults; CLI flags
// override file values. Exit codes: 0 all checks pass, 1 failed or errored
// checks / numeric errors, 2 config parse errors, 3 I/O failures.

#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "gklandau/displacement.hpp"
#include "gklandau/gkcs.hpp"
#include "gklandau/hamiltonians.hpp"
#include "gklandau/suites.hpp"
#include "gklandau/wigner.hpp"

namespace {

struct Settings {
  gkl::RunConfig cfg;
  std::string out_path;
  gkl::ReportFormat format = gkl::ReportFormat::json;
  // export / evolve extras
  int n = 0;
  int n_lo = 0;
  int n_hi = 5;
  double alpha = 0.0;
  double t = 0.0;
  double target_action = 0.0;
};

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

void apply_config_key(Settings& s, const std::string& key,
                      const std::string& value) {
  auto num = [&value, &key]() {
    try {
      std::size_t used = 0;
      const double v = std::stod(value, &used);
      if (used != value.size()) throw std::invalid_argument(value);
      return v;
    } catch (const std::exception&) {
      throw ConfigError("config value for '" + key + "' is not a number: " +
                        value);
    }
  };
  if (key == "M") s.cfg.params.mass = num();
  else if (key == "omega_c") s.cfg.params.omega_c = num();
  else if (key == "lambda") s.cfg.params.lambda = num();
  else if (key == "hbar") s.cfg.params.hbar = num();
  else if (key == "beta") s.cfg.params.beta = num();
  else if (key == "J") s.cfg.J = num();
  else if (key == "gamma") s.cfg.gamma = num();
  else if (key == "Jp") s.cfg.Jp = num();
  else if (key == "gammap") s.cfg.gammap = num();
  else if (key == "l") s.cfg.l = static_cast<int>(num());
  else if (key == "K1") s.cfg.K1 = num();
  else if (key == "theta1") s.cfg.theta1 = num();
  else if (key == "n_max") s.cfg.n_max = static_cast<int>(num());
  else if (key == "dim") s.cfg.dim_single = static_cast<int>(num());
  else if (key == "dim_two") s.cfg.dim_two = static_cast<int>(num());
  else if (key == "tol") s.cfg.tol_override = num();
  else if (key == "wigner_points") s.cfg.wigner_points = static_cast<int>(num());
  else if (key == "wigner_range") s.cfg.wigner_range = num();
  else if (key == "wigner_max_index")
    s.cfg.wigner_max_index = static_cast<int>(num());
  else if (key == "out") s.out_path = value;
  else if (key == "format") {
    if (value == "json") s.format = gkl::ReportFormat::json;
    else if (value == "csv") s.format = gkl::ReportFormat::csv;
    else throw ConfigError("config format must be json or csv");
  } else {
    throw ConfigError("unknown config key: " + key);
  }
}

void load_config(Settings& s, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    const auto last = line.find_last_not_of(" \t\r");
    line = line.substr(first, last - first + 1);
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config line " + std::to_string(lineno) +
                        " is not key=value");
    std::string key = line.substr(0, eq);
    std::string value = line.substr(eq + 1);
    auto strip = [](std::string& t) {
      const auto b = t.find_first_not_of(" \t");
      const auto e = t.find_last_not_of(" \t");
      t = b == std::string::npos ? "" : t.substr(b, e - b + 1);
    };
    strip(key);
    strip(value);
    apply_config_key(s, key, value);
  }
}

// Writes either to --out or stdout; missing directories etc. exit 3.
int with_output(const std::string& path,
                const std::function<void(std::ostream&)>& writer) {
  if (path.empty()) {
    writer(std::cout);
    return 0;
  }
  std::ofstream out(path);
  if (!out) {
    std::cerr << "error: cannot open output file: " << path << "\n";
    return 3;
  }
  writer(out);
  out.flush();
  if (!out) {
    std::cerr << "error: write failed: " << path << "\n";
    return 3;
  }
  return 0;
}

gkl::GkCsLabel label_from(const Settings& s) {
  return {s.cfg.J,  s.cfg.gamma,  s.cfg.Jp,     s.cfg.gammap,
          s.cfg.l,  s.cfg.K1,     s.cfg.theta1, s.cfg.params.beta};
}

int run_verify(const Settings& s, const std::string& suite) {
  const std::vector<gkl::ReportEntry> entries = gkl::run_suite(suite, s.cfg);
  const int rc = with_output(s.out_path, [&](std::ostream& os) {
    gkl::write_report(entries, os, s.format);
  });
  if (rc != 0) return rc;
  int passed = 0;
  for (const auto& e : entries) passed += e.pass ? 1 : 0;
  std::cerr << "suite " << suite << ": " << passed << "/" << entries.size()
            << " checks passed\n";
  if (gkl::any_errored(entries)) return 1;
  return gkl::all_passed(entries) ? 0 : 1;
}

int run_export(const Settings& s, const std::string& kind) {
  if (kind == "wigner_grid") {
    const gkl::PhaseSpaceGrid grid = gkl::wigner_dyad(
        s.n, s.cfg.l, gkl::GridSpec{s.cfg.wigner_range, s.cfg.wigner_points});
    return with_output(s.out_path,
                       [&](std::ostream& os) { gkl::export_csv(grid, os); });
  }
  if (kind == "cs_amplitudes") {
    const gkl::GkCsLabel label = label_from(s);
    const gkl::CompositeCs cs = gkl::build_cs(label, s.cfg.n_max);
    const double norm = std::sqrt(cs.discrete.norm_sq());
    if (!(norm > 0.0)) {
      std::cerr << "error: member state has zero norm\n";
      return 1;
    }
    return with_output(s.out_path, [&](std::ostream& os) {
      os << "n,l,re,im,prob\n";
      for (int k = 0; k < cs.discrete.coeffs.size(); ++k) {
        const gkl::cplx a = cs.discrete.coeffs(k) / norm;
        if (label.J == 0.0 && k > 0) break;  // single surviving row
        os << k << ',' << label.l << ',' << gkl::format_double(a.real())
           << ',' << gkl::format_double(a.imag()) << ','
           << gkl::format_double(std::norm(a)) << '\n';
      }
    });
  }
  if (kind == "spectrum") {
    return with_output(s.out_path, [&](std::ostream& os) {
      os << "n,alpha,energy\n";
      for (int k = s.n_lo; k <= s.n_hi; ++k) {
        const gkl::SpectrumEntry se =
            gkl::spectrum_h1(k, s.alpha, s.cfg.params);
        os << k << ',' << gkl::format_double(se.alpha) << ','
           << gkl::format_double(se.energy) << '\n';
      }
    });
  }
  std::cerr << "error: unknown export kind: " << kind << "\n";
  return 2;
}

int run_invert_action(const Settings& s) {
  const double k1 = gkl::invert_action(s.target_action, s.cfg.params.beta);
  nlohmann::json j;
  j["K1"] = k1;
  j["action"] = gkl::action_continuous(k1, s.cfg.params.beta);
  j["beta"] = s.cfg.params.beta;
  j["target"] = s.target_action;
  return with_output(s.out_path,
                     [&](std::ostream& os) { os << j.dump() << "\n"; });
}

int run_evolve_label(const Settings& s) {
  const gkl::GkCsLabel evolved =
      gkl::evolve(label_from(s), s.t, s.cfg.params);
  if (s.format == gkl::ReportFormat::csv) {
    return with_output(s.out_path, [&](std::ostream& os) {
      os << "J,gamma,Jp,gammap,l,K1,theta1\n"
         << gkl::format_double(evolved.J) << ','
         << gkl::format_double(evolved.gamma) << ','
         << gkl::format_double(evolved.Jp) << ','
         << gkl::format_double(evolved.gammap) << ',' << evolved.l << ','
         << gkl::format_double(evolved.K1) << ','
         << gkl::format_double(evolved.theta1) << '\n';
    });
  }
  nlohmann::json j;
  j["J"] = evolved.J;
  j["gamma"] = evolved.gamma;
  j["Jp"] = evolved.Jp;
  j["gammap"] = evolved.gammap;
  j["l"] = evolved.l;
  j["K1"] = evolved.K1;
  j["theta1"] = evolved.theta1;
  j["t"] = s.t;
  return with_output(s.out_path,
                     [&](std::ostream& os) { os << j.dump() << "\n"; });
}

}  // namespace

int main(int argc, char** argv) {
  Settings s;

  // First pass: the config file supplies defaults that flags then override.
  for (int i = 1; i + 1 < argc; ++i) {
    if (std::string(argv[i]) == "--config") {
      try {
        load_config(s, argv[i + 1]);
      } catch (const ConfigError& ex) {
        std::cerr << "config error: " << ex.what() << "\n";
        return 2;
      }
      break;
    }
  }

  CLI::App app{"Landau-level coherent-state verification toolkit"};
  app.require_subcommand(1);
  std::string config_path;
  app.add_option("--config", config_path, "flat key=value config file");

  bool want_json = false, want_csv = false;
  app.add_flag("--json", want_json, "JSON-lines report output (default)");
  app.add_flag("--csv", want_csv, "CSV report output");
  app.add_option("--out", s.out_path, "output path (default stdout)");

  auto add_parameter_flags = [&s](CLI::App* cmd) {
    cmd->add_option("--M", s.cfg.params.mass, "mass");
    cmd->add_option("--omega-c", s.cfg.params.omega_c, "cyclotron frequency");
    cmd->add_option("--lambda", s.cfg.params.lambda, "field coupling");
    cmd->add_option("--hbar", s.cfg.params.hbar, "hbar");
    cmd->add_option("--beta", s.cfg.params.beta, "Gaussian width parameter");
    cmd->add_option("--K1", s.cfg.K1, "continuous label K1");
    cmd->add_option("--theta1", s.cfg.theta1, "continuous label theta1");
    cmd->add_option("--J", s.cfg.J, "discrete action label J");
    cmd->add_option("--gamma", s.cfg.gamma, "discrete angle label gamma");
    cmd->add_option("--Jp", s.cfg.Jp, "degeneracy action label J'");
    cmd->add_option("--gammap", s.cfg.gammap, "degeneracy angle label gamma'");
    cmd->add_option("--l", s.cfg.l, "degeneracy index l");
    cmd->add_option("--n-max", s.cfg.n_max, "series truncation");
    cmd->add_option("--dim", s.cfg.dim_single, "single-mode dimension");
    cmd->add_option("--tol", s.cfg.tol_override, "override check tolerance");
  };

  std::string suite;
  CLI::App* verify = app.add_subcommand("verify", "run a verification suite");
  verify->fallthrough();
  verify->add_option("suite", suite, "algebra|hamiltonians|wigner|gkcs|"
                                     "displacement|all")
      ->required();
  add_parameter_flags(verify);

  std::string kind;
  CLI::App* exp = app.add_subcommand("export", "export CSV data");
  exp->fallthrough();
  exp->add_option("kind", kind, "wigner_grid|cs_amplitudes|spectrum")
      ->required();
  exp->add_option("--n", s.n, "Wigner dyad first index");
  exp->add_option("--n-lo", s.n_lo, "spectrum: first level");
  exp->add_option("--n-hi", s.n_hi, "spectrum: last level");
  exp->add_option("--alpha", s.alpha, "spectrum: continuous quantum number");
  add_parameter_flags(exp);

  CLI::App* inv = app.add_subcommand("invert-action",
                                     "find K1 with the given action value");
  inv->fallthrough();
  inv->add_option("--J", s.target_action, "target action value")->required();
  inv->add_option("--beta", s.cfg.params.beta, "Gaussian width parameter");

  CLI::App* ev = app.add_subcommand("evolve-label",
                                    "apply the temporal-stability label map");
  ev->fallthrough();
  ev->add_option("--t", s.t, "evolution time")->required();
  add_parameter_flags(ev);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }
  if (want_csv) s.format = gkl::ReportFormat::csv;
  else if (want_json) s.format = gkl::ReportFormat::json;

  try {
    if (verify->parsed()) return run_verify(s, suite);
    if (exp->parsed()) return run_export(s, kind);
    if (inv->parsed()) return run_invert_action(s);
    if (ev->parsed()) return run_evolve_label(s);
  } catch (const gkl::ParameterError& ex) {
    std::cerr << "parameter error: " << ex.what() << "\n";
    return 2;
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return 1;
  }
  return 2;
}

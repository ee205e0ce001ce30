#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>

#include "kgspec/cli.hpp"
#include "kgspec/errors.hpp"

namespace kgspec::cli {

namespace {

struct RawFlags {
  std::string config_path;
  std::string scenario;
  double m = 0.0, chi = 0.0, b = 0.0, q = 0.0, detune = 0.0;
  std::string flux, l, k, n, format, out, branch;
  int threads = 0;
  bool oracle = false;
  bool absolute_units = false;
};

void add_flags(CLI::App& cmd, RawFlags& f) {
  cmd.add_option("--config", f.config_path, "JSON config file; flags override its values");
  cmd.add_option("--scenario", f.scenario, "free | coulomb | ab");
  cmd.add_option("--m", f.m, "rest mass m");
  cmd.add_option("--chi", f.chi, "torsion parameter chi");
  cmd.add_option("--b", f.b, "signed Coulomb strength b");
  cmd.add_option("--q", f.q, "charge q");
  cmd.add_option("--flux", f.flux, "q Phi_B / 2 pi: value or start:stop:step");
  cmd.add_option("--l", f.l, "angular momentum: value or lo..hi");
  cmd.add_option("--k", f.k, "longitudinal wavenumbers, comma separated");
  cmd.add_option("--n", f.n, "radial index: value or lo..hi");
  cmd.add_option("--format", f.format, "csv | json")->check(CLI::IsMember({"csv", "json"}));
  cmd.add_flag("--oracle", f.oracle, "add independent oracle columns");
  cmd.add_flag("--absolute-units", f.absolute_units, "report energies unscaled instead of in units of m");
  cmd.add_option("--out", f.out, "output path (default stdout)");
  cmd.add_option("--threads", f.threads, "worker threads (0: all cores)");
  cmd.add_option("--branch", f.branch, "energy branch for currents: plus | minus")
      ->check(CLI::IsMember({"plus", "minus"}));
  cmd.add_option("--detune", f.detune)->group("");
}

RunConfig build_config(const CLI::App& cmd, const RawFlags& f) {
  RunConfig c;
  if (cmd.count("--config")) {
    std::ifstream in(f.config_path);
    if (!in) throw UsageError("cannot read config file '" + f.config_path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    apply_json_config(c, buf.str());
  }
  if (cmd.count("--scenario")) c.scenario = parse_scenario(f.scenario);
  if (cmd.count("--m")) c.m = f.m;
  if (cmd.count("--chi")) c.chi = f.chi;
  if (cmd.count("--b")) c.b = f.b;
  if (cmd.count("--q")) c.q = f.q;
  if (cmd.count("--flux")) c.fluxes = parse_flux_sweep(f.flux);
  if (cmd.count("--l")) c.ls = parse_int_range(f.l);
  if (cmd.count("--k")) c.ks = parse_real_list(f.k);
  if (cmd.count("--n")) c.ns = parse_int_range(f.n);
  if (cmd.count("--format")) c.format = f.format == "json" ? OutputFormat::Json : OutputFormat::Csv;
  if (cmd.count("--oracle")) c.oracle = f.oracle;
  if (cmd.count("--absolute-units")) c.absolute_units = f.absolute_units;
  if (cmd.count("--out")) c.out = f.out;
  if (cmd.count("--threads")) c.threads = f.threads;
  if (cmd.count("--branch")) c.current_branch = f.branch == "minus" ? Branch::Minus : Branch::Plus;
  if (cmd.count("--detune")) c.detune = f.detune;
  c.normalize();
  return c;
}

}  // namespace

int run(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Bound-state spectra, slope quantization and persistent currents of a "
               "position-dependent-mass scalar particle in a dislocated spacetime"};
  app.require_subcommand(1);
  RawFlags spectrum_flags, current_flags, verify_flags;
  auto* spectrum = app.add_subcommand("spectrum", "tabulate quantized slopes and energies");
  auto* current = app.add_subcommand("current", "persistent currents over a flux sweep");
  auto* verify = app.add_subcommand("verify", "run the invariant checks, exit 3 on failure");
  add_flags(*spectrum, spectrum_flags);
  add_flags(*current, current_flags);
  add_flags(*verify, verify_flags);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kUsageError;
  }

  try {
    Table table;
    RunConfig config;
    if (spectrum->parsed()) {
      config = build_config(*spectrum, spectrum_flags);
      table = cmd_spectrum(config);
    } else if (current->parsed()) {
      config = build_config(*current, current_flags);
      table = cmd_current(config);
    } else {
      config = build_config(*verify, verify_flags);
      table = cmd_verify(config);
    }
    const std::string text = render(table, config.format);
    if (config.out) {
      std::ofstream file(*config.out, std::ios::binary);
      if (!file) {
        err << "error: cannot write '" << *config.out << "'\n";
        return kUsageError;
      }
      file << text;
    } else {
      out << text;
    }
    if (table.exit_code == kSolverError) err << "error: some rows have no solution (see status)\n";
    if (table.exit_code == kVerifyFailure) err << "error: verification failed\n";
    return table.exit_code;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsageError;
  } catch (const InvalidArgument& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsageError;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kSolverError;
  }
}

}  // namespace kgspec::cli

// Command-line front end: parameter sweeps, figure datasets, validation,
// and single-resource reports.

#include <cstdio>
#include <cstdlib>
#include <iostream>

#include <CLI11.hpp>

#include "fockport/selfcheck.hpp"

namespace {

std::uint64_t default_seed() {
  if (const char* env = std::getenv("FOCKPORT_SEED"))
    return std::strtoull(env, nullptr, 10);
  return 0;
}

void print_report(const fockport::TeleportReport& rep, bool as_csv,
                  std::ostream& out) {
  if (as_csv) {
    char buf[128];
    out << "l,lambda,probability,conditional_fidelity,"
           "conditional_negativity\n";
    for (const fockport::OutcomeSummary& o : rep.per_outcome) {
      std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g",
                    o.probability, o.conditional_fidelity,
                    o.conditional_negativity);
      out << o.label.l << ',' << o.label.lambda << ',' << buf << '\n';
    }
    return;
  }
  std::printf("average fidelity      : %.12f\n", rep.fidelity);
  std::printf("average entanglement  : %.12f\n", rep.avg_entanglement);
  std::printf("%6s %7s %14s %14s %14s\n", "l", "lambda", "probability",
              "cond. fidelity", "cond. negat.");
  for (const fockport::OutcomeSummary& o : rep.per_outcome)
    std::printf("%6d %7d %14.10f %14.10f %14.10f\n", o.label.l,
                o.label.lambda, o.probability, o.conditional_fidelity,
                o.conditional_negativity);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Teleportation of two-mode bosonic states: sweeps, figure "
               "datasets, validation"};
  app.require_subcommand(1);
  app.fallthrough();  // accept --seed/--samples after the subcommand too

  std::uint64_t seed = default_seed();
  long samples = -1;  // -1 = keep the config/default value
  app.add_option("--seed", seed,
                 "Master RNG seed (default: FOCKPORT_SEED env var or 0)");
  app.add_option("--samples", samples,
                 "Monte-Carlo samples per grid point; 0 disables Monte Carlo");

  auto* sweep_cmd = app.add_subcommand("sweep", "Run a sweep from a config file");
  std::string config_path, out_path;
  sweep_cmd->add_option("--config", config_path, "key = value config file")
      ->required();
  sweep_cmd->add_option("--out", out_path, "Output CSV (overrides config)");

  auto* preset_cmd =
      app.add_subcommand("preset", "Generate a built-in figure dataset");
  std::string preset_name, preset_out;
  preset_cmd->add_option("name", preset_name, "fig1 .. fig8")->required();
  preset_cmd->add_option("--out", preset_out, "Output CSV path")->required();

  auto* validate_cmd =
      app.add_subcommand("validate", "Run the full validation suite");

  auto* report_cmd = app.add_subcommand(
      "report", "Per-outcome report for one resource at one grid point");
  std::string kind_text = "maxent";
  int rep_n = 1, rep_nu = 1;
  bool rep_csv = false;
  report_cmd->add_option("--resource", kind_text,
                         "Resource kind, e.g. maxent or su2:xi=0.5,theta=0");
  report_cmd->add_option("--N", rep_n, "Particles in the teleported state")
      ->required();
  report_cmd->add_option("--nu", rep_nu, "Particles in the resource")
      ->required();
  report_cmd->add_flag("--csv", rep_csv, "Emit CSV instead of a table");

  CLI11_PARSE(app, argc, argv);

  try {
    if (sweep_cmd->parsed()) {
      fockport::SweepConfig cfg = fockport::parse_sweep_config_file(config_path);
      if (app.count("--seed")) cfg.seed = seed;
      if (samples >= 0) cfg.samples = samples;
      if (!out_path.empty()) cfg.output_path = out_path;
      if (cfg.output_path.empty())
        throw std::runtime_error("no output path (config `out` or --out)");
      fockport::write_csv_file(fockport::run_sweep(cfg), cfg.output_path);
      std::printf("wrote %s\n", cfg.output_path.c_str());
    } else if (preset_cmd->parsed()) {
      fockport::SweepConfig cfg = fockport::preset_config(preset_name, seed);
      if (samples >= 0) cfg.samples = samples;
      fockport::write_csv_file(fockport::run_sweep(cfg), preset_out);
      std::printf("wrote %s\n", preset_out.c_str());
    } else if (validate_cmd->parsed()) {
      const long n = samples >= 0 ? samples : 100000;
      bool all_ok = true;
      for (const fockport::CheckResult& c : fockport::run_selfchecks(n, seed)) {
        std::printf("[%s] %2d %-50s %s\n", c.passed ? "PASS" : "FAIL", c.id,
                    c.name.c_str(), c.detail.c_str());
        all_ok = all_ok && c.passed;
      }
      return all_ok ? 0 : 1;
    } else if (report_cmd->parsed()) {
      const fockport::KindSpec kind = fockport::detail::parse_kind(kind_text);
      const fockport::ResourceState resource =
          fockport::build_resource(kind.at(rep_nu));
      print_report(fockport::teleport_report(resource, rep_n), rep_csv,
                   std::cout);
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}

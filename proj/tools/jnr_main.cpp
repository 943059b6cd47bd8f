// Command-line front end: runs verification suites and emits JSON reports or
// CSV sweep data. Exit codes: 0 = all checks passed, 1 = a check failed or a
// numerical error occurred, 2 = usage error.

#include <CLI11.hpp>
#include <exception>
#include <iostream>
#include <string>

#include "jnr/errors.hpp"
#include "jnr/report.hpp"
#include "jnr/version.hpp"

namespace {

struct CliOptions {
  jnr::RunConfig cfg;
  std::string format = "json";
};

void add_common(CLI::App* sub, CliOptions& opt) {
  sub->add_option("--degree", opt.cfg.degree, "truncation degree N")
      ->check(CLI::NonNegativeNumber);
  sub->add_option("--budget", opt.cfg.budget, "direction samples");
  sub->add_option("--refine", opt.cfg.refine, "refinement steps per top sample");
  sub->add_option("--seed", opt.cfg.seed, "random seed");
  sub->add_option("--tol", opt.cfg.tol, "containment tolerance");
  sub->add_option("--format", opt.format, "output format: json|csv");
  sub->add_option("--out", opt.cfg.out, "output path (default: stdout)");
  sub->add_flag("--override-range", opt.cfg.override_range,
                "allow parameters outside the certified range");
}

void add_c(CLI::App* sub, CliOptions& opt) {
  sub->add_option("--c", opt.cfg.c, "coupling constant");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"verification workbench for truncated sphere-multiplication operator models"};
  app.set_version_flag("--version", jnr::kVersion);
  app.require_subcommand(1);

  CliOptions opt;
  using jnr::Command;

  auto* moments = app.add_subcommand("moments", "moment engine cross-checks");
  add_common(moments, opt);
  moments->add_option("--samples", opt.cfg.samples, "Monte Carlo samples per index");

  auto* integral = app.add_subcommand("integral", "the inverse-linear sphere integral");
  add_common(integral, opt);
  integral->add_option("--method", opt.cfg.method, "closed-form|quadrature|triple|mc|all");
  integral->add_option("--resolution", opt.cfg.resolution, "triple-quadrature resolution");
  integral->add_option("--samples", opt.cfg.samples, "Monte Carlo samples");

  auto* lemma0 = app.add_subcommand("lemma0", "plain-tuple ball containment margins");
  add_common(lemma0, opt);

  auto* lemma1 = app.add_subcommand("lemma1", "coupled-tuple containment and positivity");
  add_common(lemma1, opt);
  add_c(lemma1, opt);
  lemma1->add_option("--trials", opt.cfg.trials, "random admissible functions to test");

  auto* lemma2 = app.add_subcommand("lemma2", "one-sided coupling containment (5-tuple)");
  add_common(lemma2, opt);
  add_c(lemma2, opt);

  auto* identities = app.add_subcommand("identities", "compact-generation operator identities");
  add_common(identities, opt);
  add_c(identities, opt);

  auto* boundary = app.add_subcommand("boundary-norm", "the boundary norm inequality");
  add_common(boundary, opt);
  add_c(boundary, opt);

  auto* threshold = app.add_subcommand("threshold", "coupling threshold bisection (f = 1 + t1)");
  add_common(threshold, opt);
  threshold->add_option("--c-lo", opt.cfg.c_lo, "bracket lower end");
  threshold->add_option("--c-hi", opt.cfg.c_hi, "bracket upper end");
  threshold->add_option("--tol-c", opt.cfg.tol_c, "bisection tolerance");

  auto* sweep = app.add_subcommand("sweep", "raw support-function sweep (CSV capable)");
  add_common(sweep, opt);
  add_c(sweep, opt);
  sweep->add_option("--tuple", opt.cfg.tuple, "plain|coupled|tilde");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help / --version
    app.exit(e);
    return 2;
  }

  if (moments->parsed()) opt.cfg.command = Command::Moments;
  else if (integral->parsed()) opt.cfg.command = Command::Integral;
  else if (lemma0->parsed()) opt.cfg.command = Command::Lemma0;
  else if (lemma1->parsed()) opt.cfg.command = Command::Lemma1;
  else if (lemma2->parsed()) opt.cfg.command = Command::Lemma2;
  else if (identities->parsed()) opt.cfg.command = Command::Identities;
  else if (boundary->parsed()) opt.cfg.command = Command::BoundaryNorm;
  else if (threshold->parsed()) opt.cfg.command = Command::Threshold;
  else if (sweep->parsed()) opt.cfg.command = Command::Sweep;

  if (opt.format == "json") {
    opt.cfg.format = jnr::OutputFormat::Json;
  } else if (opt.format == "csv") {
    opt.cfg.format = jnr::OutputFormat::Csv;
  } else {
    std::cerr << "error: unknown format '" << opt.format << "'\n";
    return 2;
  }

  try {
    const jnr::Report report = jnr::run_command(opt.cfg);
    jnr::emit_report(report, opt.cfg.format, opt.cfg.out);
    std::cerr << "runtime_ms=" << report.runtime_ms << "\n";
    return report.pass ? 0 : 1;
  } catch (const jnr::UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

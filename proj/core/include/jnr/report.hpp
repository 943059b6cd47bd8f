#pragma once

#include <cstdint>
#include <string>

#include <json.hpp>

namespace jnr {

enum class Command {
  Moments,
  Integral,
  Lemma0,
  Lemma1,
  Lemma2,
  Identities,
  BoundaryNorm,
  Threshold,
  Sweep,
};

enum class OutputFormat { Json, Csv };

const char* command_name(Command c);

struct RunConfig {
  Command command = Command::Lemma0;
  int degree = 6;
  double c = 0.25;
  std::int64_t budget = 2000;
  int refine = 50;
  std::uint64_t seed = 42;
  double tol = 1e-9;
  OutputFormat format = OutputFormat::Json;
  std::string out;  // empty = stdout
  bool override_range = false;

  // command-specific knobs
  std::string method = "all";          // integral
  int resolution = 400;                // integral: triple quadrature resolution
  std::int64_t samples = 200'000;      // moments / integral: Monte Carlo samples
  int trials = 100;                    // lemma1: random admissible suite size
  double c_lo = 0.5;                   // threshold bracket
  double c_hi = 1.5;
  double tol_c = 1e-3;
  std::string tuple = "plain";         // sweep: plain | coupled | tilde
};

struct Report {
  std::string command;
  nlohmann::ordered_json params;
  nlohmann::ordered_json results;
  bool pass = false;
  std::string version;
  std::int64_t runtime_ms = 0;  // diagnostic only; not part of the serialized payload
  std::string csv;              // sweep sample rows when format = csv
};

// Executes the command. Throws UsageError for malformed or out-of-range
// configurations (without override_range), NumericalError for solver
// failures.
Report run_command(const RunConfig& cfg);

// Deterministic bytes: stable field order, floats with 17 significant digits.
// Identical configurations (including seed) produce identical output.
std::string serialize_report(const Report& report, OutputFormat format);

// Writes to `out` (stdout when empty). Returns the payload size.
std::size_t emit_report(const Report& report, OutputFormat format, const std::string& out);

}  // namespace jnr

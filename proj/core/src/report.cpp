#include "jnr/report.hpp"

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>

#include "jnr/errors.hpp"
#include "jnr/identities.hpp"
#include "jnr/moments.hpp"
#include "jnr/montecarlo.hpp"
#include "jnr/positivity.hpp"
#include "jnr/range.hpp"
#include "jnr/version.hpp"

namespace jnr {

namespace {

using Json = nlohmann::ordered_json;

// ---- deterministic serialization: fixed field order, %.17g floats ----

void dump_number(std::string& out, double v) {
  if (!std::isfinite(v)) {
    out += v > 0 ? "\"inf\"" : (v < 0 ? "\"-inf\"" : "\"nan\"");
    return;
  }
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  out += buf;
}

void dump_string(std::string& out, const std::string& s) {
  out += '"';
  for (char ch : s) {
    switch (ch) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      default:
        if (static_cast<unsigned char>(ch) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", ch);
          out += buf;
        } else {
          out += ch;
        }
    }
  }
  out += '"';
}

void dump_json(std::string& out, const Json& j) {
  switch (j.type()) {
    case Json::value_t::object: {
      out += '{';
      bool first = true;
      for (const auto& [key, value] : j.items()) {
        if (!first) out += ',';
        first = false;
        dump_string(out, key);
        out += ':';
        dump_json(out, value);
      }
      out += '}';
      break;
    }
    case Json::value_t::array: {
      out += '[';
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) out += ',';
        dump_json(out, j[i]);
      }
      out += ']';
      break;
    }
    case Json::value_t::string:
      dump_string(out, j.get_ref<const std::string&>());
      break;
    case Json::value_t::boolean:
      out += j.get<bool>() ? "true" : "false";
      break;
    case Json::value_t::number_integer:
      out += std::to_string(j.get<std::int64_t>());
      break;
    case Json::value_t::number_unsigned:
      out += std::to_string(j.get<std::uint64_t>());
      break;
    case Json::value_t::number_float:
      dump_number(out, j.get<double>());
      break;
    default:
      out += "null";
  }
}

// ---- helpers shared by command handlers ----

Json direction_json(const Direction& d) {
  Json arr = Json::array();
  for (int i = 0; i < d.components.size(); ++i) arr.push_back(d.components(i));
  return arr;
}

Json margin_json(const MarginReport& m) {
  Json j;
  j["max_support"] = m.range.max_support;
  j["margin"] = m.range.margin;
  j["argmax_direction"] = direction_json(m.range.argmax_direction);
  j["samples"] = m.range.samples;
  j["refinement_steps"] = m.range.refinement_steps;
  j["audited"] = m.audited;
  j["worst_chain_gap"] = m.worst_chain_gap;
  j["worst_quad_excess"] = m.worst_quad_excess;
  j["worst_sq_excess"] = m.worst_sq_excess;
  j["pass"] = m.pass;
  return j;
}

TupleVariant parse_variant(const std::string& name) {
  if (name == "plain") return TupleVariant::Plain;
  if (name == "coupled") return TupleVariant::Coupled;
  if (name == "tilde") return TupleVariant::Tilde;
  throw UsageError("unknown tuple variant '" + name + "' (plain|coupled|tilde)");
}

void check_lemma_range(Command cmd, double c, bool override_range) {
  if (override_range) return;
  if (cmd == Command::Lemma1 && !(c > 0.0 && c < 0.5))
    throw UsageError("lemma1 requires 0 < c < 1/2 (use --override-range to explore)");
  if (cmd == Command::Lemma2 && !(c > 0.0 && c < 1.0))
    throw UsageError("lemma2 requires 0 < c < 1 (use --override-range to explore)");
}

// ---- command handlers ----

void run_moments(const RunConfig& cfg, Report& rep) {
  SplitMix rng(cfg.seed);
  Json indices = Json::array();
  double max_abs_z = 0.0;
  bool ok = true;
  int generated = 0;
  while (generated < 25) {
    std::array<int, 4> a{};
    int total = 0;
    for (auto& e : a) {
      e = 2 * static_cast<int>(rng.next_u64() % 5);
      total += e;
    }
    if (total > 8) continue;
    ++generated;
    const MomentKey key{a};
    const double exact = to_double(exact_moment(key));
    const auto mc = mc_integral(
        [&](const std::array<double, 4>& t) {
          double v = 1.0;
          for (int i = 0; i < 4; ++i)
            for (int e = 0; e < a[i]; ++e) v *= t[i];
          return v;
        },
        McConfig{cfg.samples, cfg.seed + static_cast<std::uint64_t>(generated)});
    const double z = mc.std_error > 0 ? (mc.estimate - exact) / mc.std_error : 0.0;
    max_abs_z = std::max(max_abs_z, std::abs(z));
    ok = ok && std::abs(z) <= 4.0;
    Json entry;
    entry["key"] = a;
    entry["exact"] = exact;
    entry["mc"] = mc.estimate;
    entry["std_error"] = mc.std_error;
    entry["z"] = z;
    indices.push_back(entry);
  }

  const QuadratureRule1D rule = pushforward_rule(64);
  Json pure = Json::array();
  double max_quad_err = 0.0;
  for (int a = 0; a <= 8; a += 2) {
    const double exact = to_double(exact_moment(MomentKey{{a, 0, 0, 0}}));
    const double quad = rule.integrate([a](double t) { return std::pow(t, a); });
    const double err = std::abs(quad - exact);
    max_quad_err = std::max(max_quad_err, err);
    Json entry;
    entry["exponent"] = a;
    entry["exact"] = exact;
    entry["quadrature"] = quad;
    entry["abs_err"] = err;
    pure.push_back(entry);
  }
  ok = ok && max_quad_err <= 1e-10;

  rep.results["random_indices"] = indices;
  rep.results["max_abs_z"] = max_abs_z;
  rep.results["pure_t1"] = pure;
  rep.results["max_quadrature_err"] = max_quad_err;
  rep.pass = ok;
}

void run_integral(const RunConfig& cfg, Report& rep) {
  const bool all = cfg.method == "all";
  bool ok = true;
  double single = 0.0;

  if (all || cfg.method == "closed-form") {
    const double v = inverse_linear_integral(1.0, 1.0);
    rep.results["closed_form"] = v;
    ok = ok && std::abs(v - 2.0) <= 1e-12;
    single = v;
  }
  if (all || cfg.method == "quadrature") {
    const double v = pushforward_rule(64).integrate([](double t) { return 1.0 / (1.0 + t); });
    rep.results["quadrature"] = v;
    rep.results["quadrature_nodes"] = 64;
    ok = ok && std::abs(v - 2.0) <= 1e-10;
    single = v;
  }
  if (all || cfg.method == "triple") {
    const double v = triple_integral(cfg.resolution);
    rep.results["triple"] = v;
    rep.results["resolution"] = cfg.resolution;
    const double tol = cfg.resolution >= 400 ? 1e-8 : (cfg.resolution >= 50 ? 1e-3 : 1e-1);
    ok = ok && std::abs(v - 2.0) <= tol;
    single = v;
  }
  if (all || cfg.method == "mc") {
    const auto mc = mc_integral(
        [](const std::array<double, 4>& t) { return 1.0 / (1.0 + t[0]); },
        McConfig{cfg.samples, cfg.seed});
    rep.results["mc"] = mc.estimate;
    rep.results["mc_std_error"] = mc.std_error;
    rep.results["mc_samples"] = cfg.samples;
    ok = ok && std::abs(mc.estimate - 2.0) <= 4.0 * mc.std_error;
    single = mc.estimate;
  }
  if (!all && !rep.results.size())
    throw UsageError("unknown method '" + cfg.method +
                     "' (closed-form|quadrature|triple|mc|all)");
  if (!all) rep.results["result"] = single;
  rep.pass = ok;
}

void run_lemma0(const RunConfig& cfg, Report& rep) {
  const MarginReport m = ball_margin_report(TupleVariant::Plain, 0.0, cfg.degree, cfg.budget,
                                            cfg.refine, cfg.seed, cfg.tol);
  rep.results = margin_json(m);
  rep.pass = m.pass;
}

void run_lemma1(const RunConfig& cfg, Report& rep) {
  check_lemma_range(Command::Lemma1, cfg.c, cfg.override_range);
  const MarginReport m =
      ball_margin_report(TupleVariant::Coupled, cfg.c, cfg.degree, cfg.budget, cfg.refine,
                         cfg.seed, cfg.tol, cfg.override_range);
  rep.results["sweep"] = margin_json(m);

  const auto basis = shared_basis(cfg.degree);
  SplitMix rng(cfg.seed);
  int agreements = 0;
  bool suite_ok = true;
  double min_schur = std::numeric_limits<double>::infinity();
  double min_phi = min_schur;
  for (int t = 0; t < cfg.trials; ++t) {
    const AffineFunction f = random_admissible(rng);
    const PositivityReport pr = schur_min_eig(f, cfg.c, *basis);
    min_schur = std::min(min_schur, pr.min_eig_schur);
    min_phi = std::min(min_phi, pr.min_eig_phi);
    suite_ok = suite_ok && pr.passed;
    // the two PSD verdicts must agree instance by instance
    const double tol_here = psd_tolerance(std::abs(f.alpha) + f.omega.norm() + 1.0);
    if ((pr.min_eig_schur >= -tol_here) == (pr.min_eig_phi >= -tol_here)) ++agreements;
  }
  Json suite;
  suite["trials"] = cfg.trials;
  suite["c"] = cfg.c;
  suite["min_eig_schur"] = min_schur;
  suite["min_eig_phi"] = min_phi;
  suite["verdict_agreements"] = agreements;
  suite["all_passed"] = suite_ok;
  rep.results["schur_suite"] = suite;
  rep.pass = m.pass && suite_ok && agreements == cfg.trials;
}

void run_lemma2(const RunConfig& cfg, Report& rep) {
  check_lemma_range(Command::Lemma2, cfg.c, cfg.override_range);
  const MarginReport m =
      ball_margin_report(TupleVariant::Tilde, cfg.c, cfg.degree, cfg.budget, cfg.refine,
                         cfg.seed, cfg.tol, cfg.override_range);
  rep.results["sweep"] = margin_json(m);

  // Re of the one-sided coupling must equal the symmetric coupling at c/2
  const auto basis = shared_basis(cfg.degree);
  const auto [re, im] = hermitian_parts(one_sided_coupling(*basis, cfg.c));
  const OperatorTuple half = build_tuple(*basis, TupleVariant::Coupled, cfg.c / 2.0);
  const double resid =
      (re.entries - half.operators[0].entries).cwiseAbs().maxCoeff();
  rep.results["re_identity_residual"] = resid;
  rep.pass = m.pass && resid <= 1e-15;
}

void run_identities(const RunConfig& cfg, Report& rep) {
  if (!(cfg.c > 0.0)) throw UsageError("identities requires c > 0");
  const auto basis = shared_basis(cfg.degree);
  bool ok = true;

  const IdentityReport defect = defect_check(cfg.c, *basis);
  rep.results["defect_residual"] = defect.residual;
  ok = ok && defect.passed;

  Json chain = Json::array();
  for (const auto& r : identity_chain(cfg.c, *basis)) {
    Json entry;
    entry["name"] = r.identity_name;
    entry["residual"] = r.residual;
    entry["passed"] = r.passed;
    chain.push_back(entry);
    ok = ok && r.passed;
  }
  rep.results["chain"] = chain;

  const RankOneSuite suite = rank_one_suite(cfg.c, *basis, std::min(cfg.degree, 3));
  Json ro;
  ro["pq_degree"] = suite.pq_degree;
  ro["pairs"] = suite.pairs;
  ro["max_residual"] = suite.max_residual;
  ro["all_passed"] = suite.all_passed;
  rep.results["rank_one"] = ro;
  ok = ok && suite.all_passed;

  rep.results["all_passed"] = ok;
  rep.pass = ok;
}

void run_boundary_norm(const RunConfig& cfg, Report& rep) {
  if (!(cfg.c > 0.0)) throw UsageError("boundary-norm requires c > 0");
  const auto basis = shared_basis(cfg.degree);
  const BoundaryNorms b = boundary_norms(cfg.c, *basis);
  rep.results["norm_plain"] = b.norm_plain;
  rep.results["norm_tilde"] = b.norm_tilde;
  rep.results["norm_hermitian"] = b.norm_hermitian;
  rep.results["closed_form_tilde"] = boundary_norm_tilde_closed_form(cfg.c);
  rep.results["closed_form_hermitian"] = boundary_norm_hermitian_closed_form(cfg.c);
  rep.results["plain_deviation"] = std::abs(b.norm_plain - 1.0);
  rep.results["tilde_gap"] = b.norm_tilde - 1.0;
  rep.results["hermitian_gap"] = b.norm_hermitian - 1.0;

  bool ok = std::abs(b.norm_plain - 1.0) <= 1e-13 && b.norm_tilde > 1.0 &&
            b.norm_hermitian > 1.0;
  if (cfg.degree >= 2) {
    ok = ok && std::abs(b.norm_tilde - boundary_norm_tilde_closed_form(cfg.c)) <= 1e-10;
    ok = ok &&
         std::abs(b.norm_hermitian - boundary_norm_hermitian_closed_form(cfg.c)) <= 1e-10;
  }
  rep.pass = ok;
}

void run_threshold(const RunConfig& cfg, Report& rep) {
  AffineFunction f;
  f.alpha = 1.0;
  f.omega = Eigen::Vector4d(1.0, 0.0, 0.0, 0.0);
  const auto basis = shared_basis(cfg.degree);
  const ThresholdResult t = threshold_bisection(f, *basis, cfg.c_lo, cfg.c_hi, cfg.tol_c);
  rep.results["c_star"] = t.c_star;
  rep.results["limit_closed_form"] = t.limit;
  rep.results["c_lo"] = t.c_lo;
  rep.results["c_hi"] = t.c_hi;
  rep.results["tol_c"] = t.tol_c;
  rep.results["min_eig_lo"] = t.min_eig_lo;
  rep.results["min_eig_hi"] = t.min_eig_hi;
  rep.results["evaluations"] = t.evaluations;
  rep.pass = t.c_star >= t.limit - cfg.tol_c;
}

void run_sweep(const RunConfig& cfg, Report& rep) {
  const TupleVariant variant = parse_variant(cfg.tuple);
  if (variant == TupleVariant::Coupled)
    check_lemma_range(Command::Lemma1, cfg.c, cfg.override_range);
  if (variant == TupleVariant::Tilde)
    check_lemma_range(Command::Lemma2, cfg.c, cfg.override_range);

  const auto basis = shared_basis(cfg.degree);
  const OperatorTuple tuple =
      build_tuple(*basis, variant, variant == TupleVariant::Plain ? 0.0 : cfg.c);
  std::vector<SweepRecord> log;
  const RangeReport r = sweep_max_support(tuple, cfg.budget, cfg.refine, cfg.seed, &log);

  rep.results["max_support"] = r.max_support;
  rep.results["margin"] = r.margin;
  rep.results["argmax_direction"] = direction_json(r.argmax_direction);
  rep.results["samples"] = r.samples;
  rep.results["refinement_steps"] = r.refinement_steps;
  rep.results["rows"] = static_cast<std::int64_t>(log.size());
  rep.pass = r.max_support <= 1.0 + cfg.tol;

  if (cfg.format == OutputFormat::Csv) {
    std::ostringstream csv;
    write_sweep_csv(csv, log);
    rep.csv = csv.str();
  }
}

}  // namespace

const char* command_name(Command c) {
  switch (c) {
    case Command::Moments: return "moments";
    case Command::Integral: return "integral";
    case Command::Lemma0: return "lemma0";
    case Command::Lemma1: return "lemma1";
    case Command::Lemma2: return "lemma2";
    case Command::Identities: return "identities";
    case Command::BoundaryNorm: return "boundary-norm";
    case Command::Threshold: return "threshold";
    case Command::Sweep: return "sweep";
  }
  return "?";
}

Report run_command(const RunConfig& cfg) {
  if (cfg.degree < 0) throw UsageError("degree must be >= 0");
  if (cfg.budget < 1) throw UsageError("budget must be >= 1");
  if (!(cfg.tol > 0.0)) throw UsageError("tol must be positive");
  if (cfg.format == OutputFormat::Csv && cfg.command != Command::Sweep)
    throw UsageError("csv format is only available for the sweep command");

  const auto start = std::chrono::steady_clock::now();
  Report rep;
  rep.command = command_name(cfg.command);
  rep.version = kVersion;

  Json& p = rep.params;
  p["degree"] = cfg.degree;
  p["c"] = cfg.c;
  p["budget"] = cfg.budget;
  p["refine"] = cfg.refine;
  p["seed"] = cfg.seed;
  p["tol"] = cfg.tol;
  p["override_range"] = cfg.override_range;
  switch (cfg.command) {
    case Command::Moments:
      p["samples"] = cfg.samples;
      break;
    case Command::Integral:
      p["method"] = cfg.method;
      p["resolution"] = cfg.resolution;
      p["samples"] = cfg.samples;
      break;
    case Command::Lemma1:
      p["trials"] = cfg.trials;
      break;
    case Command::Threshold:
      p["c_lo"] = cfg.c_lo;
      p["c_hi"] = cfg.c_hi;
      p["tol_c"] = cfg.tol_c;
      break;
    case Command::Sweep:
      p["tuple"] = cfg.tuple;
      break;
    default:
      break;
  }

  switch (cfg.command) {
    case Command::Moments: run_moments(cfg, rep); break;
    case Command::Integral: run_integral(cfg, rep); break;
    case Command::Lemma0: run_lemma0(cfg, rep); break;
    case Command::Lemma1: run_lemma1(cfg, rep); break;
    case Command::Lemma2: run_lemma2(cfg, rep); break;
    case Command::Identities: run_identities(cfg, rep); break;
    case Command::BoundaryNorm: run_boundary_norm(cfg, rep); break;
    case Command::Threshold: run_threshold(cfg, rep); break;
    case Command::Sweep: run_sweep(cfg, rep); break;
  }

  rep.runtime_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                       std::chrono::steady_clock::now() - start)
                       .count();
  return rep;
}

std::string serialize_report(const Report& report, OutputFormat format) {
  if (format == OutputFormat::Csv) return report.csv;
  Json root;
  root["command"] = report.command;
  root["params"] = report.params;
  root["results"] = report.results;
  root["pass"] = report.pass;
  root["version"] = report.version;
  std::string out;
  dump_json(out, root);
  out += '\n';
  return out;
}

std::size_t emit_report(const Report& report, OutputFormat format, const std::string& out) {
  const std::string payload = serialize_report(report, format);
  if (out.empty()) {
    std::cout << payload;
    std::cout.flush();
  } else {
    std::ofstream f(out, std::ios::binary);
    if (!f) throw NumericalError("cannot open output file: " + out);
    f << payload;
    if (!f.good()) throw NumericalError("write failed: " + out);
  }
  return payload.size();
}

}  // namespace jnr

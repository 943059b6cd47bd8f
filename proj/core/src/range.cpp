#include "jnr/range.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <ostream>

#include "jnr/eig.hpp"
#include "jnr/errors.hpp"
#include "jnr/rng.hpp"

namespace jnr {

namespace {

Eigen::MatrixXcd direction_matrix(const OperatorTuple& tuple, const Eigen::VectorXd& theta) {
  Eigen::MatrixXcd M = Eigen::MatrixXcd::Zero(tuple.dim(), tuple.dim());
  for (int i = 0; i < tuple.arity(); ++i) M += theta(i) * tuple.operators[i].entries;
  return M;
}

double rayleigh(const TruncatedOperator& A, const Eigen::VectorXcd& x) {
  return (x.adjoint() * (A.entries * x))(0, 0).real();
}

Eigen::VectorXd rayleigh_vector(const OperatorTuple& tuple, const Eigen::VectorXcd& x) {
  Eigen::VectorXd z(tuple.arity());
  for (int i = 0; i < tuple.arity(); ++i) z(i) = rayleigh(tuple.operators[i], x);
  return z;
}

// smallest positive root of x^(d+1) = x + 1 ("generalized golden ratio")
double kronecker_base(int d) {
  double x = 1.5;
  for (int it = 0; it < 64; ++it) {
    const double f = std::pow(x, d + 1) - x - 1.0;
    const double df = (d + 1) * std::pow(x, d) - 1.0;
    x -= f / df;
  }
  return x;
}

// inverse CDF of the density proportional to sin^m on [0, pi], m in {1,2,3}
double inv_sin_power(int m, double u) {
  if (m == 1) return std::acos(1.0 - 2.0 * u);
  auto cdf = [m](double x) {
    if (m == 2) return (x - std::sin(x) * std::cos(x)) / M_PI;
    // m == 3: integral of sin^3 over [0,x] divided by 4/3
    const double c = std::cos(x);
    return (2.0 - 3.0 * c + c * c * c) / 4.0;
  };
  double lo = 0.0, hi = M_PI;
  for (int it = 0; it < 64; ++it) {
    const double mid = 0.5 * (lo + hi);
    (cdf(mid) < u ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

Eigen::VectorXd angles_to_sphere(int k, const std::vector<double>& u) {
  // u holds k-1 uniforms; angles phi_j with sin^(k-1-j) densities, last uniform
  Eigen::VectorXd x(k);
  double s = 1.0;
  for (int j = 0; j < k - 2; ++j) {
    const double phi = inv_sin_power(k - 2 - j, u[j]);
    x(j) = s * std::cos(phi);
    s *= std::sin(phi);
  }
  const double last = 2.0 * M_PI * u[k - 2];
  x(k - 2) = s * std::cos(last);
  x(k - 1) = s * std::sin(last);
  return x;
}

}  // namespace

Direction make_direction(Eigen::VectorXd v) {
  const double n = v.norm();
  if (!(n > 1e-14)) throw UsageError("make_direction: vector too close to zero");
  return Direction{v / n};
}

SupportSample support_function(const OperatorTuple& tuple, const Direction& theta) {
  if (theta.components.size() != tuple.arity())
    throw UsageError("support_function: direction arity mismatch");
  if (std::abs(theta.components.norm() - 1.0) > 1e-12)
    throw UsageError("support_function: direction is not a unit vector");
  SupportSample s;
  s.direction = theta;
  if (tuple.all_real()) {
    Eigen::MatrixXd M = Eigen::MatrixXd::Zero(tuple.dim(), tuple.dim());
    for (int i = 0; i < tuple.arity(); ++i)
      M += theta.components(i) * tuple.operators[i].entries.real();
    Eigen::VectorXd v;
    s.value = top_eigenpair_real(M, v);
    s.witness = v.cast<std::complex<double>>();
  } else {
    const Eigen::MatrixXcd M = direction_matrix(tuple, theta.components);
    s.value = top_eigenpair(M, s.witness);
  }
  return s;
}

std::vector<Eigen::VectorXd> sphere_directions(int k, std::int64_t count, std::uint64_t seed) {
  if (k < 1 || k > 5) throw UsageError("sphere_directions: arity must be in {1,...,5}");
  std::vector<Eigen::VectorXd> dirs;
  dirs.reserve(count);
  if (k == 1) {
    for (std::int64_t j = 0; j < count; ++j) {
      Eigen::VectorXd v(1);
      v(0) = (j % 2 == 0) ? 1.0 : -1.0;
      dirs.push_back(v);
    }
    return dirs;
  }
  const int d = k - 1;
  const double base = kronecker_base(d);
  std::vector<double> alpha(d), shift(d);
  double p = 1.0;
  for (int i = 0; i < d; ++i) {
    p /= base;
    alpha[i] = p;
    shift[i] = static_cast<double>(counter_u64(seed, i) >> 11) * 0x1p-53;
  }
  std::vector<double> u(d);
  for (std::int64_t j = 0; j < count; ++j) {
    for (int i = 0; i < d; ++i) {
      const double v = shift[i] + static_cast<double>(j + 1) * alpha[i];
      u[i] = v - std::floor(v);
    }
    dirs.push_back(angles_to_sphere(k, u));
  }
  return dirs;
}

RangeReport sweep_max_support(const OperatorTuple& tuple, std::int64_t budget, int refine,
                              std::uint64_t seed, std::vector<SweepRecord>* log,
                              const std::function<void(const SupportSample&)>& observer) {
  if (budget < 1) throw UsageError("sweep_max_support: budget must be >= 1");
  const int k = tuple.arity();
  const auto dirs = sphere_directions(k, budget, seed);

  std::vector<SupportSample> samples(budget);
#pragma omp parallel for schedule(dynamic, 8)
  for (std::int64_t j = 0; j < budget; ++j)
    samples[j] = support_function(tuple, make_direction(dirs[j]));

  RangeReport report;
  report.samples = budget;
  report.max_support = -std::numeric_limits<double>::infinity();
  for (std::int64_t j = 0; j < budget; ++j) {
    const auto& s = samples[j];
    if (log) log->push_back({s.direction.components, s.value});
    if (observer) observer(s);
    if (s.value > report.max_support) {
      report.max_support = s.value;
      report.argmax_direction = s.direction;
    }
  }

  // refine from the 10 best base samples
  std::vector<std::int64_t> order(budget);
  std::iota(order.begin(), order.end(), 0);
  const std::int64_t tops = std::min<std::int64_t>(10, budget);
  std::partial_sort(order.begin(), order.begin() + tops, order.end(),
                    [&](std::int64_t a, std::int64_t b) {
                      if (samples[a].value != samples[b].value)
                        return samples[a].value > samples[b].value;
                      return a < b;
                    });
  for (std::int64_t t = 0; t < tops; ++t) {
    Eigen::VectorXcd x = samples[order[t]].witness;
    for (int step = 0; step < refine; ++step) {
      const Eigen::VectorXd z = rayleigh_vector(tuple, x);
      if (z.norm() < 1e-300) break;  // stationary, direction undefined
      const SupportSample s = support_function(tuple, make_direction(z));
      ++report.refinement_steps;
      if (log) log->push_back({s.direction.components, s.value});
      if (observer) observer(s);
      if (s.value > report.max_support) {
        report.max_support = s.value;
        report.argmax_direction = s.direction;
      }
      x = s.witness;
    }
  }
  report.margin = 1.0 - report.max_support;
  return report;
}

FpiResult farthest_point_iteration(const OperatorTuple& tuple, const Eigen::VectorXcd& x0,
                                   int max_iter, double tol) {
  FpiResult r;
  r.witness = x0 / x0.norm();
  r.norm_z = rayleigh_vector(tuple, r.witness).norm();
  r.trace.push_back(r.norm_z);
  for (int it = 0; it < max_iter; ++it) {
    const Eigen::VectorXd z = rayleigh_vector(tuple, r.witness);
    if (z.norm() < 1e-300) {
      r.stationary = true;
      return r;
    }
    const SupportSample s = support_function(tuple, make_direction(z));
    const double next = rayleigh_vector(tuple, s.witness).norm();
    ++r.iterations;
    r.trace.push_back(next);
    const double gain = next - r.norm_z;
    r.witness = s.witness;
    r.norm_z = next;
    if (gain < tol) break;
  }
  return r;
}

CsAudit cs_audit(const OperatorTuple& tuple, const Eigen::VectorXcd& witness) {
  CsAudit a;
  for (const auto& op : tuple.operators) {
    const double zi = (witness.adjoint() * (op.entries * witness))(0, 0).real();
    a.sum_sq += zi * zi;
    a.sum_quad += (op.entries * witness).squaredNorm();
  }
  return a;
}

MarginReport ball_margin_report(TupleVariant variant, double c, int degree,
                                std::int64_t budget, int refine, std::uint64_t seed,
                                double tol, bool override_range) {
  if (variant == TupleVariant::Coupled && !override_range && !(c > 0.0 && c < 0.5))
    throw UsageError("coupled variant certifies 0 < c < 1/2; pass override_range to explore");
  if (variant == TupleVariant::Tilde && !override_range && !(c > 0.0 && c < 1.0))
    throw UsageError("one-sided variant certifies 0 < c < 1; pass override_range to explore");

  const auto basis = shared_basis(degree);
  const OperatorTuple tuple = build_tuple(*basis, variant, c);

  MarginReport m;
  m.variant = variant;
  m.c = (variant == TupleVariant::Plain) ? 0.0 : c;
  m.degree = degree;
  m.seed = seed;
  m.tol = tol;
  m.worst_chain_gap = -std::numeric_limits<double>::infinity();
  m.worst_quad_excess = -std::numeric_limits<double>::infinity();
  m.worst_sq_excess = -std::numeric_limits<double>::infinity();

  auto observer = [&](const SupportSample& s) {
    const CsAudit a = cs_audit(tuple, s.witness);
    m.worst_chain_gap = std::max(m.worst_chain_gap, a.sum_sq - a.sum_quad);
    m.worst_quad_excess = std::max(m.worst_quad_excess, a.sum_quad - 1.0);
    m.worst_sq_excess = std::max(m.worst_sq_excess, a.sum_sq - 1.0);
    ++m.audited;
  };
  m.range = sweep_max_support(tuple, budget, refine, seed, nullptr, observer);

  m.pass = m.range.max_support <= 1.0 + tol && m.worst_chain_gap <= 1e-9;
  if (variant == TupleVariant::Plain)
    m.pass = m.pass && m.worst_quad_excess <= 1e-12;
  return m;
}

void write_sweep_csv(std::ostream& os, const std::vector<SweepRecord>& records) {
  if (records.empty()) return;
  const int k = static_cast<int>(records.front().theta.size());
  for (int i = 1; i <= k; ++i) os << "theta_" << i << ",";
  os << "h,margin\n";
  char buf[32];
  auto put = [&](double v, char sep) {
    std::snprintf(buf, sizeof buf, "%.17g", v);
    os << buf << sep;
  };
  for (const auto& r : records) {
    for (int i = 0; i < k; ++i) put(r.theta(i), ',');
    put(r.h, ',');
    std::snprintf(buf, sizeof buf, "%.17g", 1.0 - r.h);
    os << buf << "\n";
  }
}

}  // namespace jnr

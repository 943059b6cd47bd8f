#include "jnr/moments.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <mutex>
#include <unordered_map>

#include "jnr/errors.hpp"

namespace jnr {

namespace {

BigInt double_factorial(int n) {
  BigInt r = 1;
  for (; n > 1; n -= 2) r *= n;
  return r;
}

std::uint32_t pack_key(const MomentKey& k) {
  return (static_cast<std::uint32_t>(k.exponents[0]) << 24) |
         (static_cast<std::uint32_t>(k.exponents[1]) << 16) |
         (static_cast<std::uint32_t>(k.exponents[2]) << 8) |
         static_cast<std::uint32_t>(k.exponents[3]);
}

}  // namespace

Rational exact_moment(const MomentKey& key) {
  for (int e : key.exponents)
    if (e < 0) throw UsageError("exact_moment: negative exponent");
  if (key.any_odd()) return Rational(0);
  BigInt num = 1;
  for (int e : key.exponents)
    if (e > 0) num *= double_factorial(e - 1);
  BigInt den = 1;
  for (int k = 4; k <= key.degree() + 2; k += 2) den *= k;
  return Rational(num, den);
}

Rational reduced_moment(const MomentKey& key) {
  if (key.exponents[3] <= 1) return exact_moment(key);
  // peel one t4^2 off and expand via the sphere relation
  MomentKey b = key;
  b.exponents[3] -= 2;
  Rational r = reduced_moment(b);
  for (int i = 0; i < 3; ++i) {
    MomentKey c = b;
    c.exponents[i] += 2;
    r -= reduced_moment(c);
  }
  return r;
}

Quad reduced_moment_q(const MomentKey& key) {
  static std::unordered_map<std::uint32_t, Quad> cache;
  static std::mutex mtx;
  if (key.any_odd()) return Quad(0);
  const std::uint32_t packed = pack_key(key);
  {
    std::lock_guard lock(mtx);
    auto it = cache.find(packed);
    if (it != cache.end()) return it->second;
  }
  Quad v = to_quad(reduced_moment(key));
  std::lock_guard lock(mtx);
  return cache.emplace(packed, v).first->second;
}

double QuadratureRule1D::integrate(const std::function<double(double)>& f) const {
  double acc = 0.0, comp = 0.0;  // Kahan
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const double term = weights[i] * f(nodes[i]) - comp;
    const double next = acc + term;
    comp = (next - acc) - term;
    acc = next;
  }
  return acc;
}

QuadratureRule1D pushforward_rule(int n) {
  if (n < 1) throw UsageError("pushforward_rule: need at least one node");
  // Golub-Welsch for the Jacobi weight (1-x)^(1/2) (1+x)^(-1/2), mu0 = pi.
  const double a = 0.5, b = -0.5;
  Eigen::MatrixXd J = Eigen::MatrixXd::Zero(n, n);
  for (int k = 0; k < n; ++k) {
    const double s = 2.0 * k + a + b;
    J(k, k) = (k == 0) ? (b - a) / (a + b + 2.0)
                       : (b * b - a * a) / (s * (s + 2.0));
    if (k > 0) {
      const double num = 4.0 * k * (k + a) * (k + b) * (k + a + b);
      const double den = s * s * (s + 1.0) * (s - 1.0);
      const double beta = num / den;
      J(k, k - 1) = J(k - 1, k) = std::sqrt(beta);
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J);
  QuadratureRule1D rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (int k = 0; k < n; ++k) {
    const double x = es.eigenvalues()(k);
    const double w_jacobi = M_PI * es.eigenvectors()(0, k) * es.eigenvectors()(0, k);
    rule.nodes[k] = x;
    // absorb (1+x) and the 2/pi normalization of the density
    rule.weights[k] = (2.0 / M_PI) * w_jacobi * (1.0 + x);
  }
  rule.exact_degree = 2 * n - 2;
  return rule;
}

double inverse_linear_integral(double alpha, double w) {
  if (!(alpha > 0.0) || w < 0.0 || alpha < w)
    throw std::domain_error("inverse_linear_integral: need alpha >= w >= 0, alpha > 0");
  if (w == 0.0) return 1.0 / alpha;
  if (alpha == w) return 2.0 / alpha;  // limit of the closed form
  return 2.0 * (alpha - std::sqrt(alpha * alpha - w * w)) / (w * w);
}

namespace {

// Gauss-Legendre on [-1,1] by Newton on Legendre polynomials.
void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w) {
  x.resize(n);
  w.resize(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double z = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 0; j < n; ++j) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j + 1.0) * z * p1 - j * p2) / (j + 1.0);
      }
      pp = n * (z * p0 - p1) / (z * z - 1.0);
      const double dz = p0 / pp;
      z -= dz;
      if (std::abs(dz) < 1e-15) break;
    }
    x[i] = -z;
    x[n - 1 - i] = z;
    w[i] = w[n - 1 - i] = 2.0 / ((1.0 - z * z) * pp * pp);
  }
}

}  // namespace

double spherical_integral(int resolution,
                          const std::function<double(double, double, double)>& h) {
  if (resolution < 2) throw UsageError("spherical_integral: resolution must be >= 2");
  std::vector<double> u, wu;
  gauss_legendre(resolution, u, wu);

  const double inv_norm = 1.0 / (2.0 * M_PI * M_PI);
  double total = 0.0;
  for (int ix = 0; ix < resolution; ++ix) {
    const double x = (u[ix] + 1.0) * (M_PI / 2.0);
    const double wx = wu[ix] * (M_PI / 2.0) * std::sin(x) * std::sin(x);
    for (int iy = 0; iy < resolution; ++iy) {
      const double y = (u[iy] + 1.0) * (M_PI / 2.0);
      const double wy = wu[iy] * (M_PI / 2.0) * std::sin(y);
      double zsum = 0.0;
      for (int iz = 0; iz < resolution; ++iz) {
        const double z = (u[iz] + 1.0) * M_PI;
        zsum += wu[iz] * M_PI * h(x, y, z);
      }
      total += wx * wy * zsum;
    }
  }
  return total * inv_norm;
}

double triple_integral(int resolution) {
  return spherical_integral(
      resolution, [](double x, double, double) { return 1.0 / (1.0 + std::cos(x)); });
}

}  // namespace jnr

#pragma once

#include <Eigen/Core>
#include <cmath>
#include <cstdint>
#include <random>

namespace convexkit {

/// Seeded generator with hand-rolled transforms so that streams are
/// reproducible independent of the standard library's distribution
/// implementations. All randomized suites draw exclusively from this.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t raw() { return eng_(); }

  /// Uniform in [0, 1).
  double uniform01() {
    return static_cast<double>(eng_() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  /// Uniform integer in [lo, hi] inclusive.
  long uniform_int(long lo, long hi) {
    const auto span = static_cast<std::uint64_t>(hi - lo + 1);
    return lo + static_cast<long>(eng_() % span);
  }

  double normal() {
    // Box-Muller; one value per call keeps replay simple.
    double u1 = uniform01();
    while (u1 <= 0.0) u1 = uniform01();
    const double u2 = uniform01();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
  }

  Eigen::VectorXd gaussian_vector(int dim) {
    Eigen::VectorXd v(dim);
    for (int i = 0; i < dim; ++i) v[i] = normal();
    return v;
  }

  Eigen::VectorXd unit_vector(int dim) {
    Eigen::VectorXd v = gaussian_vector(dim);
    double n = v.norm();
    while (n < 1e-12) {
      v = gaussian_vector(dim);
      n = v.norm();
    }
    return v / n;
  }

  Eigen::VectorXd in_box(const Eigen::VectorXd& lo, const Eigen::VectorXd& hi) {
    Eigen::VectorXd v(lo.size());
    for (Eigen::Index i = 0; i < lo.size(); ++i) v[i] = uniform(lo[i], hi[i]);
    return v;
  }

  /// Random point of the standard probability simplex.
  Eigen::VectorXd simplex_weights(int n) {
    Eigen::VectorXd w(n);
    double s = 0.0;
    for (int i = 0; i < n; ++i) {
      w[i] = -std::log(std::max(uniform01(), 1e-300));
      s += w[i];
    }
    return w / s;
  }

 private:
  std::mt19937_64 eng_;
};

}  // namespace convexkit

#include "qoper/sampling.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qoper {

double Sampler::uniform(double lo, double hi) {
  double u = static_cast<double>(rng_() >> 11) * 0x1.0p-53;
  return lo + (hi - lo) * u;
}

Complex Sampler::annulus(double rmin, double rmax) {
  double r = std::exp(uniform(std::log(rmin), std::log(rmax)));
  double th = uniform(0.0, 2.0 * std::numbers::pi);
  return std::polar(r, th);
}

Complex Sampler::unit_circle() { return std::polar(1.0, uniform(0.0, 2.0 * std::numbers::pi)); }

Complex Sampler::gaussian_complex(double sigma) {
  // Box-Muller on our own uniforms
  double u1 = uniform(1e-300, 1.0);
  double u2 = uniform();
  double r = sigma * std::sqrt(-2.0 * std::log(u1));
  return std::polar(r, 2.0 * std::numbers::pi * u2);
}

std::vector<Complex> Sampler::points(int n, Complex q, const std::function<bool(Complex)>& reject) {
  std::vector<Complex> out;
  out.reserve(n);
  Complex fixed = 1.0 / std::sqrt(q);
  int attempts = 0;
  while (static_cast<int>(out.size()) < n) {
    if (++attempts > 10 * n + 100) throw PoleError("could not draw sample points away from poles");
    Complex z = annulus();
    if (std::abs(z - fixed) < 1e-3 || std::abs(z + fixed) < 1e-3) continue;
    if (reject && reject(z)) continue;
    out.push_back(z);
  }
  return out;
}

bool near_pole(const std::vector<RationalFn>& fns, Complex z) {
  for (const auto& f : fns) {
    Complex d = eval(f.den, z);
    if (std::abs(d) < 1e3 * kPoleGuard * std::max(1.0, f.den.norm_inf())) return true;
    // also keep away from zeros so reciprocal ratios stay finite
    if (std::abs(eval(f.num, z)) < 1e3 * kPoleGuard * std::max(1.0, f.num.norm_inf())) return true;
  }
  return false;
}

}  // namespace qoper

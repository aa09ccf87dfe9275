#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include "qoper/laurent.hpp"

namespace qoper {

// Deterministic point source. Uses mt19937_64 with hand-rolled uniform
// conversion so streams are identical across standard libraries.
class Sampler {
 public:
  explicit Sampler(std::uint64_t seed = 0) : rng_(seed) {}

  double uniform(double lo = 0.0, double hi = 1.0);
  // log-uniform modulus in [rmin, rmax], uniform argument
  Complex annulus(double rmin = 0.3, double rmax = 3.0);
  Complex unit_circle();
  Complex gaussian_complex(double sigma = 1.0);

  // Annulus points avoiding +-q^{-1/2} (distance 1e-3) and any point where
  // `reject` returns true. Gives up after 10*n failed draws.
  std::vector<Complex> points(int n, Complex q,
                              const std::function<bool(Complex)>& reject = nullptr);

 private:
  std::mt19937_64 rng_;
};

// Twist-aware rejection: true when any component is within its pole guard
// (scaled by 1e3 for margin) at z.
bool near_pole(const std::vector<RationalFn>& fns, Complex z);

}  // namespace qoper

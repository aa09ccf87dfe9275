// Independent reference implementations used by the unit tests. They avoid
// the library's own arithmetic so that agreement is a real cross-check.
#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <numeric>
#include <random>
#include <vector>

namespace oracle {

using C = std::complex<double>;

struct Rng {
  std::mt19937_64 g;
  explicit Rng(unsigned long long seed) : g(seed) {}
  double u(double lo = 0.0, double hi = 1.0) { return std::uniform_real_distribution<double>(lo, hi)(g); }
  C c(double s = 1.0) { return {std::normal_distribution<double>(0.0, s)(g), std::normal_distribution<double>(0.0, s)(g)}; }
  // modulus in [lo, hi], uniform argument
  C ring(double lo = 0.5, double hi = 2.0) { return std::polar(u(lo, hi), u(0.0, 2.0 * M_PI)); }
};

// sum c_e z^e with std::pow
inline C eval(const std::map<int, C>& t, C z) {
  C s = 0.0;
  for (const auto& [e, c] : t) s += c * std::pow(z, e);
  return s;
}

inline std::map<int, C> mul(const std::map<int, C>& a, const std::map<int, C>& b) {
  std::map<int, C> out;
  for (const auto& [ea, ca] : a)
    for (const auto& [eb, cb] : b) out[ea + eb] += ca * cb;
  return out;
}

// Leibniz expansion, fine for n <= 7
inline C det(const std::vector<std::vector<C>>& m) {
  const int n = static_cast<int>(m.size());
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  C total = 0.0;
  do {
    int inv = 0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) inv += p[i] > p[j];
    C term = inv % 2 ? -1.0 : 1.0;
    for (int i = 0; i < n; ++i) term *= m[i][p[i]];
    total += term;
  } while (std::next_permutation(p.begin(), p.end()));
  return n == 0 ? C(1.0) : total;
}

inline std::vector<std::vector<C>> drop(const std::vector<std::vector<C>>& m, int r, int c) {
  std::vector<std::vector<C>> out;
  for (int i = 0; i < static_cast<int>(m.size()); ++i) {
    if (i == r) continue;
    std::vector<C> row;
    for (int j = 0; j < static_cast<int>(m[i].size()); ++j)
      if (j != c) row.push_back(m[i][j]);
    out.push_back(row);
  }
  return out;
}

inline double rel(C a, C b) { return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-300}); }

// Durand-Kerner roots of a monic-normalised ordinary polynomial (ascending coefficients)
inline std::vector<C> roots(std::vector<C> a) {
  while (!a.empty() && std::abs(a.back()) == 0.0) a.pop_back();
  const int n = static_cast<int>(a.size()) - 1;
  std::vector<C> z(n);
  for (int i = 0; i < n; ++i) z[i] = std::pow(C(0.4, 0.9), i);
  auto p = [&](C x) {
    C s = 0.0;
    for (int i = n; i >= 0; --i) s = s * x + a[i] / a[n];
    return s;
  };
  for (int it = 0; it < 2000; ++it) {
    for (int i = 0; i < n; ++i) {
      C d = 1.0;
      for (int j = 0; j < n; ++j)
        if (j != i) d *= z[i] - z[j];
      z[i] -= p(z[i]) / d;
    }
  }
  return z;
}

}  // namespace oracle

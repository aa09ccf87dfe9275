#include "qoper/laurent.hpp"

#include <algorithm>
#include <cmath>

namespace qoper {

Complex ipow(Complex z, int n) {
  if (n < 0) return 1.0 / ipow(z, -n);
  Complex result = 1.0;
  Complex base = z;
  unsigned e = static_cast<unsigned>(n);
  while (e) {
    if (e & 1u) result *= base;
    base *= base;
    e >>= 1;
  }
  return result;
}

LaurentPoly::LaurentPoly(std::map<int, Complex> terms) : terms_(std::move(terms)) { prune(); }

LaurentPoly::LaurentPoly(std::initializer_list<std::pair<const int, Complex>> terms)
    : terms_(terms) {
  prune();
}

LaurentPoly LaurentPoly::constant(Complex c) { return LaurentPoly({{0, c}}); }

LaurentPoly LaurentPoly::monomial(int n, Complex c) { return LaurentPoly({{n, c}}); }

LaurentPoly LaurentPoly::from_roots(const std::vector<Complex>& roots, Complex scale) {
  LaurentPoly p = constant(scale);
  for (const auto& r : roots) p *= LaurentPoly({{1, 1.0}, {0, -r}});
  return p;
}

void LaurentPoly::prune() {
  for (auto it = terms_.begin(); it != terms_.end();) {
    if (!std::isfinite(it->second.real()) || !std::isfinite(it->second.imag()))
      throw DomainError("non-finite Laurent coefficient at exponent " + std::to_string(it->first));
    if (std::abs(it->second) < kPruneThreshold)
      it = terms_.erase(it);
    else
      ++it;
  }
}

int LaurentPoly::min_exp() const { return terms_.empty() ? 0 : terms_.begin()->first; }
int LaurentPoly::max_exp() const { return terms_.empty() ? 0 : terms_.rbegin()->first; }

int LaurentPoly::radius() const {
  if (terms_.empty()) return 0;
  return std::max(std::abs(min_exp()), std::abs(max_exp()));
}

double LaurentPoly::norm_inf() const {
  double m = 0.0;
  for (const auto& [n, c] : terms_) m = std::max(m, std::abs(c));
  return m;
}

Complex LaurentPoly::coeff(int n) const {
  auto it = terms_.find(n);
  return it == terms_.end() ? Complex(0.0) : it->second;
}

Complex LaurentPoly::operator()(Complex z) const { return eval(*this, z); }

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& r) {
  for (const auto& [n, c] : r.terms_) terms_[n] += c;
  prune();
  return *this;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& r) {
  for (const auto& [n, c] : r.terms_) terms_[n] -= c;
  prune();
  return *this;
}

LaurentPoly& LaurentPoly::operator*=(const LaurentPoly& r) {
  std::map<int, Complex> out;
  for (const auto& [n, c] : terms_)
    for (const auto& [m, d] : r.terms_) out[n + m] += c * d;
  terms_ = std::move(out);
  prune();
  return *this;
}

LaurentPoly& LaurentPoly::operator*=(Complex c) {
  for (auto& [n, v] : terms_) v *= c;
  prune();
  return *this;
}

LaurentPoly add(const LaurentPoly& p, const LaurentPoly& r) {
  LaurentPoly out = p;
  out += r;
  return out;
}
LaurentPoly sub(const LaurentPoly& p, const LaurentPoly& r) {
  LaurentPoly out = p;
  out -= r;
  return out;
}
LaurentPoly mul(const LaurentPoly& p, const LaurentPoly& r) {
  LaurentPoly out = p;
  out *= r;
  return out;
}
LaurentPoly scale(const LaurentPoly& p, Complex c) {
  LaurentPoly out = p;
  out *= c;
  return out;
}
LaurentPoly operator+(const LaurentPoly& p, const LaurentPoly& r) { return add(p, r); }
LaurentPoly operator-(const LaurentPoly& p, const LaurentPoly& r) { return sub(p, r); }
LaurentPoly operator*(const LaurentPoly& p, const LaurentPoly& r) { return mul(p, r); }
LaurentPoly operator*(Complex c, const LaurentPoly& p) { return scale(p, c); }

Complex eval(const LaurentPoly& p, Complex z) {
  if (z == Complex(0.0)) throw DomainError("Laurent polynomial evaluated at z = 0");
  const auto& t = p.terms();
  if (t.empty()) return 0.0;

  // nonnegative powers: Horner in z from the top exponent down
  Complex hi = 0.0;
  int prev = -1;
  for (auto it = t.rbegin(); it != t.rend() && it->first >= 0; ++it) {
    if (prev >= 0) hi *= ipow(z, prev - it->first);
    hi += it->second;
    prev = it->first;
  }
  if (prev > 0) hi *= ipow(z, prev);

  // negative powers: Horner in w = 1/z from the most negative exponent up
  Complex w = 1.0 / z;
  Complex lo = 0.0;
  int prev_m = -1;
  for (auto it = t.begin(); it != t.end() && it->first < 0; ++it) {
    int m = -it->first;
    if (prev_m >= 0) lo *= ipow(w, prev_m - m);
    lo += it->second;
    prev_m = m;
  }
  if (prev_m > 0) lo *= ipow(w, prev_m);
  return hi + lo;
}

LaurentPoly q_shift(const LaurentPoly& p, Complex q, int m) {
  if (q == Complex(0.0)) throw DomainError("q_shift with q = 0");
  std::map<int, Complex> out;
  for (const auto& [n, c] : p.terms()) out[n] = c * ipow(q, m * n);
  return LaurentPoly(std::move(out));
}

LaurentPoly reflect(const LaurentPoly& p, Complex q, int k) {
  if (q == Complex(0.0)) throw DomainError("reflect with q = 0");
  std::map<int, Complex> out;
  for (const auto& [n, c] : p.terms()) out[-n] = c * ipow(q, -k * n);
  return LaurentPoly(std::move(out));
}

double relative_distance(const LaurentPoly& p, const LaurentPoly& r) {
  double scale = std::max(p.norm_inf(), r.norm_inf());
  if (scale == 0.0) return 0.0;
  return sub(p, r).norm_inf() / scale;
}

bool approx_equal(const LaurentPoly& p, const LaurentPoly& r, double tol) {
  return relative_distance(p, r) <= tol;
}

bool is_invariant(const LaurentPoly& p, Complex q, int k, double tol) {
  return sub(p, reflect(p, q, k)).norm_inf() <= tol * p.norm_inf();
}

RationalFn::RationalFn(LaurentPoly n, LaurentPoly d) : num(std::move(n)), den(std::move(d)) {
  if (den.is_zero()) throw DomainError("rational function with zero denominator");
}

Complex RationalFn::operator()(Complex z) const { return rational_eval(*this, z); }

Complex rational_eval(const RationalFn& f, Complex z) {
  Complex d = eval(f.den, z);
  if (std::abs(d) < kPoleGuard * std::max(1.0, f.den.norm_inf()))
    throw PoleError("rational function evaluated at a pole");
  return eval(f.num, z) / d;
}

RationalFn operator*(const RationalFn& a, const RationalFn& b) {
  return RationalFn(a.num * b.num, a.den * b.den);
}
RationalFn operator/(const RationalFn& a, const RationalFn& b) {
  if (b.num.is_zero()) throw DomainError("division by the zero rational function");
  return RationalFn(a.num * b.den, a.den * b.num);
}
RationalFn operator*(Complex c, const RationalFn& a) { return RationalFn(c * a.num, a.den); }

RationalFn q_shift(const RationalFn& f, Complex q, int m) {
  return RationalFn(q_shift(f.num, q, m), q_shift(f.den, q, m));
}
RationalFn reflect(const RationalFn& f, Complex q, int k) {
  return RationalFn(reflect(f.num, q, k), reflect(f.den, q, k));
}

LaurentPoly expand(const SymmetricFactoredPoly& f, Complex q) {
  if (q == Complex(0.0)) throw DomainError("expand with q = 0");
  Complex inv_qk = ipow(q, -f.level);
  LaurentPoly p = LaurentPoly::constant(f.scale);
  for (const auto& s : f.roots) {
    if (s == Complex(0.0)) throw DomainError("symmetric factored polynomial with a zero root");
    // (z - s)(q^{-k} z^{-1} - s) = -s z + (s^2 + q^{-k}) - s q^{-k} z^{-1}
    p *= LaurentPoly({{1, -s}, {0, s * s + inv_qk}, {-1, -s * inv_qk}});
  }
  return p;
}

}  // namespace qoper

#pragma once

#include <complex>
#include <initializer_list>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace qoper {

using Complex = std::complex<double>;

struct DomainError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct PoleError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// coefficients below this magnitude are not stored
inline constexpr double kPruneThreshold = 1e-300;
// rational_eval refuses |den(z)| < kPoleGuard * max(1, ||den||)
inline constexpr double kPoleGuard = 1e-12;

Complex ipow(Complex z, int n);

// Sparse Laurent polynomial: exponent -> coefficient.
class LaurentPoly {
 public:
  LaurentPoly() = default;
  explicit LaurentPoly(std::map<int, Complex> terms);
  LaurentPoly(std::initializer_list<std::pair<const int, Complex>> terms);

  static LaurentPoly constant(Complex c);
  static LaurentPoly monomial(int n, Complex c = 1.0);
  // prod (z - r_i)
  static LaurentPoly from_roots(const std::vector<Complex>& roots, Complex scale = 1.0);

  const std::map<int, Complex>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  int min_exp() const;
  int max_exp() const;
  // max(|min_exp|, |max_exp|), 0 for the zero polynomial
  int radius() const;
  double norm_inf() const;
  Complex coeff(int n) const;

  Complex operator()(Complex z) const;

  LaurentPoly& operator+=(const LaurentPoly& r);
  LaurentPoly& operator-=(const LaurentPoly& r);
  LaurentPoly& operator*=(const LaurentPoly& r);
  LaurentPoly& operator*=(Complex c);

 private:
  void prune();
  std::map<int, Complex> terms_;
};

LaurentPoly add(const LaurentPoly& p, const LaurentPoly& r);
LaurentPoly sub(const LaurentPoly& p, const LaurentPoly& r);
LaurentPoly mul(const LaurentPoly& p, const LaurentPoly& r);
LaurentPoly scale(const LaurentPoly& p, Complex c);
LaurentPoly operator+(const LaurentPoly& p, const LaurentPoly& r);
LaurentPoly operator-(const LaurentPoly& p, const LaurentPoly& r);
LaurentPoly operator*(const LaurentPoly& p, const LaurentPoly& r);
LaurentPoly operator*(Complex c, const LaurentPoly& p);

// Split Horner evaluation; throws DomainError at z = 0.
Complex eval(const LaurentPoly& p, Complex z);

// eval(q_shift(p,q,m), z) == eval(p, q^m z)
LaurentPoly q_shift(const LaurentPoly& p, Complex q, int m);
// eval(reflect(p,q,k), z) == eval(p, 1/(q^k z))
LaurentPoly reflect(const LaurentPoly& p, Complex q, int k);
bool is_invariant(const LaurentPoly& p, Complex q, int k, double tol = 1e-10);
// max coefficient deviation relative to the larger max coefficient
double relative_distance(const LaurentPoly& p, const LaurentPoly& r);
bool approx_equal(const LaurentPoly& p, const LaurentPoly& r, double tol = 1e-10);

struct RationalFn {
  LaurentPoly num = LaurentPoly::constant(1.0);
  LaurentPoly den = LaurentPoly::constant(1.0);

  RationalFn() = default;
  RationalFn(LaurentPoly n, LaurentPoly d = LaurentPoly::constant(1.0));

  Complex operator()(Complex z) const;
};

Complex rational_eval(const RationalFn& f, Complex z);
RationalFn operator*(const RationalFn& a, const RationalFn& b);
RationalFn operator/(const RationalFn& a, const RationalFn& b);
RationalFn operator*(Complex c, const RationalFn& a);
RationalFn q_shift(const RationalFn& f, Complex q, int m);
RationalFn reflect(const RationalFn& f, Complex q, int k);

// scale * prod_j (z - s_j)(1/(q^level z) - s_j)
struct SymmetricFactoredPoly {
  Complex scale = 1.0;
  int level = 0;
  std::vector<Complex> roots;
};

LaurentPoly expand(const SymmetricFactoredPoly& f, Complex q);

}  // namespace qoper

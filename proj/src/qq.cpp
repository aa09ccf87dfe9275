#include "qoper/qq.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Dense>

#include "qoper/sampling.hpp"

namespace qoper {

const LaurentPoly& QQInstanceGLN::plus(int k) const {
  static const LaurentPoly one = LaurentPoly::constant(1.0);
  if (k == 0) return one;
  if (k < 0 || k > N) throw DomainError("Q_k^+ index out of range");
  return Qp.at(k - 1);
}

double ScaledResidual::relative() const {
  if (scale == 0.0) return std::abs(value) == 0.0 ? 0.0 : INFINITY;
  return std::abs(value) / scale;
}

ScaledResidual gl2_residual_scaled(const QQInstanceGL2& inst, Complex z) {
  const Complex q = inst.q;
  Complex t1 = rational_eval(inst.xi2, z) * eval(inst.Qp, z) * eval(inst.Qm, q * z);
  Complex t2 = rational_eval(inst.xi1, z) * eval(inst.Qm, z) * eval(inst.Qp, q * z);
  Complex t3 = eval(inst.Lambda, z);
  return {t1 - t2 - t3, std::max({std::abs(t1), std::abs(t2), std::abs(t3)})};
}

Complex gl2_residual(const QQInstanceGL2& inst, Complex z) { return gl2_residual_scaled(inst, z).value; }

ScaledResidual glN_residual_scaled(const QQInstanceGLN& inst, int k, Complex z) {
  const int N = inst.N;
  if (k < 1 || k > N - 1) throw DomainError("glN_residual needs 1 <= k <= N-1");
  const Complex q = inst.q;
  const Complex zk = ipow(q, k - 1) * z;
  const LaurentPoly& Qk = inst.plus(k);
  const LaurentPoly& Qm = inst.Qm.at(k - 1);
  Complex t1 = inst.Z(N - k + 1, zk) * eval(Qk, z) * eval(Qm, q * z);
  Complex t2 = inst.Z(N - k, zk) * eval(Qk, q * z) * eval(Qm, z);
  Complex t3 = eval(inst.plus(k - 1), q * z) * eval(inst.plus(k + 1), z);
  return {t1 - t2 - t3, std::max({std::abs(t1), std::abs(t2), std::abs(t3)})};
}

Complex glN_residual(const QQInstanceGLN& inst, int k, Complex z) { return glN_residual_scaled(inst, k, z).value; }

namespace {

double sampled_max(int samples, std::uint64_t seed, Complex q, const std::vector<RationalFn>& poles,
                   const std::function<double(Complex)>& rel) {
  Sampler s(seed);
  double worst = 0.0;
  for (Complex z : s.points(samples, q, [&](Complex w) { return near_pole(poles, w); })) {
    try {
      worst = std::max(worst, rel(z));
    } catch (const PoleError&) {
    }
  }
  return worst;
}

}  // namespace

Report qq_check_gl2(const QQInstanceGL2& inst, int samples, double tol, std::uint64_t seed) {
  double worst = sampled_max(samples, seed, inst.q, {inst.xi1, inst.xi2},
                             [&](Complex z) { return gl2_residual_scaled(inst, z).relative(); });
  Report r;
  r.add("gl2 QQ relation", "gl2-qq-system", worst, tol);
  return r;
}

Report qq_check_glN(const QQInstanceGLN& inst, int samples, double tol, std::uint64_t seed) {
  Report r;
  for (int k = 1; k <= inst.N - 1; ++k) {
    double worst = sampled_max(samples, seed + k, inst.q, inst.Z.xi, [&](Complex z) {
      return glN_residual_scaled(inst, k, z).relative();
    });
    r.add("glN QQ relation, k=" + std::to_string(k), "glN-qq-system", worst, tol);
  }
  return r;
}

int default_degree_bound(const LaurentPoly& Qp, const LaurentPoly& rhs) { return Qp.radius() + rhs.radius(); }

QminusFit recover_Qminus(Complex q, const LaurentPoly& Qp, const RationalFn& xi_a, const RationalFn& xi_b,
                         const LaurentPoly& rhs, int degree_bound, std::uint64_t seed) {
  if (degree_bound < 0) throw DomainError("degree_bound must be nonnegative");
  const int D = degree_bound;
  const int n = 2 * D + 1;
  auto reject = [&](Complex w) { return near_pole({xi_a, xi_b}, w); };

  // row z, column c: coefficient of Qm's z^{c-D} term
  auto row = [&](Complex z, Eigen::RowVectorXcd& out, Complex& b, double& scale) {
    Complex fb = rational_eval(xi_b, z) * eval(Qp, z);
    Complex fa = rational_eval(xi_a, z) * eval(Qp, q * z);
    out.resize(n);
    for (int c = 0; c < n; ++c) {
      int e = c - D;
      out(c) = fb * ipow(q * z, e) - fa * ipow(z, e);
    }
    b = eval(rhs, z);
    scale = std::max(std::abs(b), out.cwiseAbs().maxCoeff());
    if (scale == 0.0) scale = 1.0;
  };

  Sampler sampler(seed);
  auto pts = sampler.points(4 * n, q, reject);
  const int m = static_cast<int>(pts.size());
  Eigen::MatrixXcd A(m, n);
  Eigen::VectorXcd b(m);
  for (int i = 0; i < m; ++i) {
    Eigen::RowVectorXcd r;
    Complex bi;
    double s;
    row(pts[i], r, bi, s);
    A.row(i) = r / s;
    b(i) = bi / s;
  }
  Eigen::VectorXd colscale = A.colwise().norm().transpose();
  for (int c = 0; c < n; ++c) {
    if (colscale(c) == 0.0) throw RankError("zero column in Q- recovery system");
    A.col(c) /= colscale(c);
  }
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(A, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  double cond = sv(0) / sv(sv.size() - 1);
  if (!(sv(sv.size() - 1) > 1e-11 * sv(0))) throw RankError("rank-deficient Q- recovery system");
  Eigen::VectorXcd x = svd.solve(b);

  std::map<int, Complex> terms;
  for (int c = 0; c < n; ++c) terms[c - D] = x(c) / colscale(c);
  QminusFit fit;
  fit.Qm = LaurentPoly(terms);
  fit.unknowns = n;
  fit.condition = cond;

  QQInstanceGL2 inst{q, Qp, fit.Qm, xi_a, xi_b, rhs};
  for (Complex z : pts) fit.fit_residual = std::max(fit.fit_residual, gl2_residual_scaled(inst, z).relative());
  Sampler fresh(seed + 0x9e3779b97f4a7c15ULL);
  for (Complex z : fresh.points(2 * n, q, reject))
    fit.fresh_residual = std::max(fit.fresh_residual, gl2_residual_scaled(inst, z).relative());
  return fit;
}

namespace {

bool close_rel(Complex a, Complex b) {
  double s = std::max(std::abs(a), std::abs(b));
  return std::abs(a - b) <= 1e-8 * s;
}

std::string fmt(Complex z) {
  return "(" + std::to_string(z.real()) + "," + std::to_string(z.imag()) + ")";
}

}  // namespace

Report nondegeneracy_check(const std::vector<RootFamily>& families, Complex q, int lattice_depth) {
  if (lattice_depth < 1) throw DomainError("lattice_depth must be >= 1");
  struct Pt {
    Complex v;
    int fam;
  };
  std::vector<Pt> pts;
  for (int f = 0; f < static_cast<int>(families.size()); ++f) {
    for (Complex v : families[f].values) pts.push_back({v, f});
  }

  nlohmann::json violations = nlohmann::json::array();
  auto on_lattice = [&](Complex t, Complex u, int& m_hit, int& sign_hit) {
    for (int m = -lattice_depth; m <= lattice_depth; ++m) {
      Complex l = ipow(q, m) * t;
      if (close_rel(l, u)) {
        m_hit = m, sign_hit = 1;
        return true;
      }
      if (close_rel(l, 1.0 / u)) {
        m_hit = m, sign_hit = -1;
        return true;
      }
    }
    return false;
  };

  for (size_t i = 0; i < pts.size(); ++i) {
    if (!families[pts[i].fam].reference && pts[i].v == Complex(0.0)) {
      violations.push_back({{"reason", "zero root"}, {"family", families[pts[i].fam].label}});
      continue;
    }
    const bool ref_i = families[pts[i].fam].reference;
    for (size_t j = i + 1; j < pts.size(); ++j) {
      if (ref_i && families[pts[j].fam].reference) continue;
      int m = 0, sg = 0;
      if (on_lattice(pts[i].v, pts[j].v, m, sg))
        violations.push_back({{"a", fmt(pts[i].v)},
                              {"b", fmt(pts[j].v)},
                              {"families", {families[pts[i].fam].label, families[pts[j].fam].label}},
                              {"shift", m},
                              {"inverse", sg < 0}});
    }
    if (!ref_i) {
      int m = 0, sg = 0;
      Complex t = pts[i].v;
      // t is its own lattice partner up to inversion: t^2 = q^{-m}
      for (int mm = -lattice_depth; mm <= lattice_depth; ++mm)
        if (close_rel(ipow(q, mm) * t, 1.0 / t)) {
          m = mm, sg = -1;
          break;
        }
      if (sg != 0)
        violations.push_back({{"a", fmt(t)}, {"family", families[pts[i].fam].label}, {"shift", m}, {"inverse", true}});
    }
  }
  Report r;
  r.data["violations"] = violations;
  r.data["lattice_depth"] = lattice_depth;
  r.add("no two zeros on a common q-lattice", "nondegeneracy", static_cast<double>(violations.size()), 0.0);
  return r;
}

Report nondegeneracy_check(const std::vector<std::vector<Complex>>& families, Complex q, int lattice_depth) {
  std::vector<RootFamily> fams;
  for (size_t i = 0; i < families.size(); ++i)
    fams.push_back({"family" + std::to_string(i), families[i], false});
  return nondegeneracy_check(fams, q, lattice_depth);
}

}  // namespace qoper

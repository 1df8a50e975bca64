#include "rotqfi/qfim.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "rotqfi/errors.hpp"

namespace rotqfi {

namespace {

constexpr cplx kI{0.0, 1.0};

RotationSpec shifted(const RotationSpec& spec, int k, double delta) {
  RotationSpec s = spec;
  s.params[static_cast<std::size_t>(k)] += delta;
  return s;
}

// Frechet derivative of exp(i chi A) in direction E, A Hermitian with
// eigenpairs (lambda, V).
CMat exp_frechet(const CMat& v, const Eigen::VectorXd& lambda, double chi, const CMat& e) {
  const Eigen::Index d = lambda.size();
  CMat et = v.adjoint() * e * v;
  for (Eigen::Index j = 0; j < d; ++j) {
    for (Eigen::Index k = 0; k < d; ++k) {
      const double dl = lambda(j) - lambda(k);
      const cplx fj = std::exp(kI * chi * lambda(j));
      const cplx g = std::abs(dl) < 1e-12 ? kI * chi * fj : (fj - std::exp(kI * chi * lambda(k))) / dl;
      et(j, k) *= g;
    }
  }
  return v * et * v.adjoint();
}

std::array<CVec, 3> exact_state_derivatives(const SpinAlgebra& alg, const RotationSpec& spec, const CVec& psi0) {
  const auto& p = spec.params;
  switch (spec.kind) {
    case RotationKind::EulerZYZ: {
      const CMat a = alg.exp_z(p[0]), b = alg.exp_y(p[1]), c = alg.exp_z(p[2]);
      const CVec cp = c * psi0;
      const CVec bcp = b * cp;
      return {-kI * (alg.sz() * (a * bcp)), a * (-kI * (alg.sy() * bcp)), a * (b * (-kI * (alg.sz() * cp)))};
    }
    case RotationKind::EulerXYZ: {
      const CMat a = alg.exp_x(p[0]), b = alg.exp_y(p[1]), c = alg.exp_z(p[2]);
      const CVec cp = c * psi0;
      const CVec bcp = b * cp;
      return {-kI * (alg.sx() * (a * bcp)), a * (-kI * (alg.sy() * bcp)), a * (b * (-kI * (alg.sz() * cp)))};
    }
    case RotationKind::AxisAngle: {
      const double chi = p[0], th = p[1], ph = p[2];
      const Vec3 n = polar_axis(th, ph);
      const Vec3 dn_th(std::cos(th) * std::cos(ph), std::cos(th) * std::sin(ph), -std::sin(th));
      const Vec3 dn_ph(-std::sin(th) * std::sin(ph), std::sin(th) * std::cos(ph), 0.0);
      Eigen::SelfAdjointEigenSolver<CMat> es(alg.along(n));
      if (es.info() != Eigen::Success) throw NumericFailure("eigendecomposition failed");
      const CMat& v = es.eigenvectors();
      const Eigen::VectorXd& lam = es.eigenvalues();
      CVec ph_k(lam.size());
      for (Eigen::Index k = 0; k < lam.size(); ++k) ph_k(k) = std::exp(kI * chi * lam(k));
      const CVec psi = v * (ph_k.asDiagonal() * (v.adjoint() * psi0));
      return {kI * (alg.along(n) * psi), exp_frechet(v, lam, chi, alg.along(dn_th)) * psi0,
              exp_frechet(v, lam, chi, alg.along(dn_ph)) * psi0};
    }
  }
  return {};
}

double condition_number(const Mat3& m) {
  Eigen::SelfAdjointEigenSolver<Mat3> es(m);
  const double lo = es.eigenvalues().minCoeff(), hi = es.eigenvalues().maxCoeff();
  if (lo <= 0.0) return std::numeric_limits<double>::infinity();
  return hi / lo;
}

double wrap_angle(double a) { return std::remainder(a, 2.0 * kPi); }

}  // namespace

GeneratorTriple numeric_generators(int n_quanta, const RotationSpec& spec, double fd_step) {
  return numeric_generators(SpinAlgebra(n_quanta), spec, fd_step);
}

GeneratorTriple numeric_generators(const SpinAlgebra& alg, const RotationSpec& spec, double fd_step) {
  spec.validate();
  const CMat r = alg.rotation(spec);
  GeneratorTriple g;
  for (int k = 0; k < 3; ++k) {
    auto central = [&](double h) {
      return CMat((alg.rotation(shifted(spec, k, h)) - alg.rotation(shifted(spec, k, -h))) / (2.0 * h));
    };
    const CMat d = (4.0 * central(0.5 * fd_step) - central(fd_step)) / 3.0;
    CMat h = kI * d * r.adjoint();
    const double asym = (h - h.adjoint()).cwiseAbs().maxCoeff();
    if (asym > 1e-7)
      throw NumericFailure("finite-difference generator is not Hermitian (residual " + std::to_string(asym) + ")");
    g.ops[static_cast<std::size_t>(k)] = 0.5 * (h + h.adjoint());
  }
  return g;
}

GeneratorTriple h_generators(int n_quanta, const RotationSpec& spec) {
  return h_generators(SpinAlgebra(n_quanta), spec);
}

GeneratorTriple h_generators(const SpinAlgebra& alg, const RotationSpec& spec) {
  spec.validate();
  const auto& p = spec.params;
  GeneratorTriple g;
  switch (spec.kind) {
    case RotationKind::EulerZYZ:
      g.ops[0] = alg.sz();
      g.ops[1] = -std::sin(p[0]) * alg.sx() + std::cos(p[0]) * alg.sy();
      g.ops[2] = alg.along(polar_axis(p[1], p[0]));
      break;
    case RotationKind::EulerXYZ: {
      const double ca = std::cos(p[0]), sa = std::sin(p[0]), cb = std::cos(p[1]), sb = std::sin(p[1]);
      g.ops[0] = alg.sx();
      g.ops[1] = alg.along(Vec3(0.0, ca, sa));
      g.ops[2] = alg.along(Vec3(sb, -cb * sa, cb * ca));
      break;
    }
    case RotationKind::AxisAngle: {
      // i (dR) R^dagger for R = exp(i chi S.n): -S.n along chi, and
      // -[sin(chi) dn - (1 - cos chi) n x dn].S along each axis angle.
      const double chi = p[0], th = p[1], ph = p[2];
      const Vec3 n = polar_axis(th, ph);
      const Vec3 dn_th(std::cos(th) * std::cos(ph), std::cos(th) * std::sin(ph), -std::sin(th));
      const Vec3 dn_ph(-std::sin(th) * std::sin(ph), std::sin(th) * std::cos(ph), 0.0);
      g.ops[0] = -alg.along(n);
      g.ops[1] = alg.along(-(std::sin(chi) * dn_th - (1.0 - std::cos(chi)) * n.cross(dn_th)));
      g.ops[2] = alg.along(-(std::sin(chi) * dn_ph - (1.0 - std::cos(chi)) * n.cross(dn_ph)));
      break;
    }
  }
  return g;
}

Mat3 qfim_covariance(const SpinState& state0, const RotationSpec& spec) {
  return qfim_covariance(SpinAlgebra(state0.n_quanta()), state0.amplitudes(), spec);
}

Mat3 qfim_covariance(const SpinAlgebra& alg, const CVec& psi0, const RotationSpec& spec) {
  if (psi0.size() != alg.dim()) throw InvalidArgument("state dimension does not match the algebra");
  const GeneratorTriple g = h_generators(alg, spec);
  const CVec psi = alg.rotation(spec) * psi0;
  std::array<CVec, 3> hp;
  Vec3 mean;
  for (int k = 0; k < 3; ++k) {
    hp[k] = g[k] * psi;
    mean(k) = psi.dot(hp[k]).real();
  }
  Mat3 info;
  for (int l = 0; l < 3; ++l)
    for (int m = 0; m < 3; ++m)
      // <(H_l H_m + H_m H_l)/2> = Re <H_l psi | H_m psi>
      info(l, m) = 4.0 * (hp[l].dot(hp[m]).real() - mean(l) * mean(m));
  return 0.5 * (info + info.transpose());
}

Mat3 qfim_sld(const SpinState& state0, const RotationSpec& spec) {
  spec.validate();
  const SpinAlgebra alg(state0.n_quanta());
  const CVec psi = alg.rotation(spec) * state0.amplitudes();
  const auto dpsi = exact_state_derivatives(alg, spec, state0.amplitudes());
  std::array<CMat, 3> sld;
  for (int k = 0; k < 3; ++k) sld[k] = 2.0 * (dpsi[k] * psi.adjoint() + psi * dpsi[k].adjoint());
  Mat3 info;
  for (int l = 0; l < 3; ++l)
    for (int m = 0; m < 3; ++m) {
      const CVec a = sld[l] * psi, b = sld[m] * psi;
      info(l, m) = 0.5 * (a.dot(b) + b.dot(a)).real();
    }
  return info;
}

QfimReport qfim(const SpinState& state0, const RotationSpec& spec, const QfimOptions& opts,
                std::string state_descriptor) {
  QfimReport rep;
  rep.matrix = qfim_covariance(state0, spec);
  if (opts.cross_check) {
    const double diff = (rep.matrix - qfim_sld(state0, spec)).cwiseAbs().maxCoeff();
    if (diff > opts.cross_check_tol)
      throw NumericFailure("covariance and SLD Fisher matrices disagree by " + std::to_string(diff));
  }
  rep.determinant = rep.matrix.determinant();
  rep.condition_number = condition_number(rep.matrix);
  rep.spec = spec;
  rep.state_descriptor = std::move(state_descriptor);
  return rep;
}

bool is_singular(const Mat3& info, double rel_threshold) {
  const double scale = info.trace() / 3.0;
  if (!(scale > 0.0)) return true;
  return info.determinant() < rel_threshold * scale * scale * scale;
}

QfimReport crb(QfimReport report, double rel_threshold) {
  if (is_singular(report.matrix, rel_threshold)) throw SingularMatrix(report.matrix.determinant());
  Mat3 inv = report.matrix.inverse();
  inv = 0.5 * (inv + inv.transpose());
  report.trace_of_inverse = inv.trace();
  report.inverse = inv;
  return report;
}

Mat3 anticoherent_qfim_closed_form(int n_quanta, double theta) {
  if (n_quanta < 1) throw InvalidArgument("N must be at least 1");
  const double c = std::cos(theta);
  Mat3 m;
  m << 1.0, 0.0, c, 0.0, 1.0, 0.0, c, 0.0, 1.0;
  return (n_quanta * (n_quanta + 2.0) / 3.0) * m;
}

double trace_bound(int n_quanta, double theta) {
  if (n_quanta < 1) throw InvalidArgument("N must be at least 1");
  const double s = std::sin(theta);
  if (std::abs(s) < 1e-12) throw InvalidArgument("trace bound diverges at Theta = k*pi");
  return 3.0 / (n_quanta * (n_quanta + 2.0)) * (1.0 + 2.0 / (s * s));
}

double single_param_qfi_derivative_form(const SpinState& state, const Vec3& n) {
  require_unit(n, 1e-10, "rotation axis");
  const SpinAlgebra alg(state.n_quanta());
  Eigen::SelfAdjointEigenSolver<CMat> es(alg.along(n));
  if (es.info() != Eigen::Success) throw NumericFailure("eigendecomposition failed");
  // R(chi) = V exp(i chi L) V^dagger, so at chi = 0: R = 1 and dR = V (i L) V^dagger.
  const CMat& v = es.eigenvectors();
  const CVec il = kI * es.eigenvalues().cast<cplx>();
  const CMat dr = v * il.asDiagonal() * v.adjoint();
  const CVec& psi = state.amplitudes();
  const CVec drp = dr * psi;
  const double first = drp.squaredNorm();
  const double second = std::norm(psi.dot(drp));
  return 4.0 * (first - second);
}

double single_param_qfi(const SpinState& state, const Vec3& n) {
  const HermitianOperator g = stokes_matrix(state.n_quanta(), n);
  const CVec gp = g.matrix() * state.amplitudes();
  const double mean = state.amplitudes().dot(gp).real();
  const double var_form = 4.0 * (gp.squaredNorm() - mean * mean);
  const double deriv_form = single_param_qfi_derivative_form(state, n);
  if (std::abs(var_form - deriv_form) > 1e-9 * std::max(1.0, std::abs(var_form)))
    throw NumericFailure("single-parameter QFI forms disagree: " + std::to_string(var_form) + " vs " +
                         std::to_string(deriv_form));
  return var_form;
}

double projection_variance(const SpinState& state, const Vec3& n, double chi) {
  require_unit(n, 1e-10, "rotation axis");
  const SpinAlgebra alg(state.n_quanta());
  Eigen::SelfAdjointEigenSolver<CMat> es(alg.along(n));
  if (es.info() != Eigen::Success) throw NumericFailure("eigendecomposition failed");
  const Eigen::VectorXd& lam = es.eigenvalues();
  const Eigen::VectorXd w = (es.eigenvectors().adjoint() * state.amplitudes()).cwiseAbs2();
  // A(chi) = <psi|R(chi)|psi> = sum_k w_k exp(i chi lambda_k); <P> = |A|^2.
  cplx amp = 0.0, damp = 0.0;
  for (Eigen::Index k = 0; k < lam.size(); ++k) {
    const cplx e = std::exp(kI * chi * lam(k));
    amp += w(k) * e;
    damp += kI * lam(k) * w(k) * e;
  }
  // 1 - |A|^2 written as a sum of non-negative terms to avoid cancellation.
  double one_minus_p = 0.0;
  for (Eigen::Index j = 0; j < lam.size(); ++j)
    for (Eigen::Index k = 0; k < lam.size(); ++k) {
      const double s = std::sin(0.5 * chi * (lam(j) - lam(k)));
      one_minus_p += w(j) * w(k) * 2.0 * s * s;
    }
  const double p = std::norm(amp);
  const double dp = 2.0 * (std::conj(amp) * damp).real();
  if (std::abs(dp) < 1e-300 || std::abs(dp) < 1e-14 * std::max(1.0, std::abs(chi)))
    throw InvalidArgument("projection signal is stationary at chi = " + std::to_string(chi));
  return p * one_minus_p / (dp * dp);
}

Mat3 jacobian_transform(const Mat3& jacobian, const Mat3& info) {
  if (!jacobian.allFinite() || !info.allFinite()) throw InvalidArgument("Jacobian transform needs finite entries");
  return jacobian.transpose() * info * jacobian;
}

Mat3 numeric_jacobian(const AngleMap& map, const std::array<double, 3>& at, double step) {
  Mat3 j;
  for (int c = 0; c < 3; ++c) {
    auto plus = at, minus = at;
    plus[static_cast<std::size_t>(c)] += step;
    minus[static_cast<std::size_t>(c)] -= step;
    const auto fp = map(plus), fm = map(minus);
    for (int r = 0; r < 3; ++r)
      j(r, c) = wrap_angle(fp[static_cast<std::size_t>(r)] - fm[static_cast<std::size_t>(r)]) / (2.0 * step);
  }
  return j;
}

std::array<double, 3> zyz_angles_from_rotation3(const Mat3& r) {
  // rotation3_for(zyz(Phi, Theta, Psi)) = Rz(Phi) Ry(Theta) Rz(Psi) with
  // right-handed factors.
  const double theta = std::acos(std::clamp(r(2, 2), -1.0, 1.0));
  const double phi = std::atan2(r(1, 2), r(0, 2));
  const double psi = std::atan2(r(2, 1), -r(2, 0));
  return {phi, theta, psi};
}

}  // namespace rotqfi

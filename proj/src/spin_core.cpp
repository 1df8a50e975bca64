#include "rotqfi/spin_core.hpp"

#include <cmath>
#include <string>

#include "rotqfi/errors.hpp"

namespace rotqfi {

namespace {

constexpr cplx kI{0.0, 1.0};

void require_quanta(int n) {
  if (n < 0) throw InvalidArgument("number of quanta must be non-negative, got " + std::to_string(n));
}

CMat exp_in_basis(const CMat& v, const Eigen::VectorXd& lambda, cplx coeff) {
  CVec phases(lambda.size());
  for (Eigen::Index k = 0; k < lambda.size(); ++k) phases(k) = std::exp(coeff * lambda(k));
  return v * phases.asDiagonal() * v.adjoint();
}

}  // namespace

SpinState::SpinState(int n_quanta, CVec amplitudes, bool normalize, double norm_tol)
    : n_(n_quanta), amps_(std::move(amplitudes)) {
  require_quanta(n_);
  if (amps_.size() != n_ + 1) {
    throw InvalidArgument("expected " + std::to_string(n_ + 1) + " amplitudes for N=" + std::to_string(n_) +
                          ", got " + std::to_string(amps_.size()));
  }
  for (Eigen::Index m = 0; m < amps_.size(); ++m) {
    if (!std::isfinite(amps_(m).real()) || !std::isfinite(amps_(m).imag()))
      throw InvalidArgument("amplitude " + std::to_string(m) + " is not finite");
  }
  const double norm = amps_.norm();
  if (norm == 0.0) throw InvalidArgument("amplitude vector is zero");
  if (normalize) {
    amps_ /= norm;
  } else if (std::abs(norm - 1.0) > norm_tol) {
    throw InvalidArgument("state is not normalized (norm = " + std::to_string(norm) + ")");
  }
}

SpinState make_state(int n_quanta, std::span<const cplx> amplitudes, bool normalize) {
  CVec v(static_cast<Eigen::Index>(amplitudes.size()));
  for (std::size_t i = 0; i < amplitudes.size(); ++i) v(static_cast<Eigen::Index>(i)) = amplitudes[i];
  return SpinState(n_quanta, std::move(v), normalize);
}

SpinState basis_state(int n_quanta, int m) {
  require_quanta(n_quanta);
  if (m < 0 || m > n_quanta) throw InvalidArgument("basis index out of range");
  CVec v = CVec::Zero(n_quanta + 1);
  v(m) = 1.0;
  return SpinState(n_quanta, std::move(v));
}

HermitianOperator::HermitianOperator(CMat entries, double tol) : m_(std::move(entries)) {
  if (m_.rows() != m_.cols()) throw InvalidArgument("operator must be square");
  const double asym = (m_ - m_.adjoint()).cwiseAbs().maxCoeff();
  if (m_.size() > 0 && asym > tol)
    throw InvalidArgument("operator is not Hermitian (max asymmetry " + std::to_string(asym) + ")");
}

HermitianOperator stokes_matrix(int n_quanta, StokesComponent component) {
  require_quanta(n_quanta);
  const int dim = n_quanta + 1;
  CMat s = CMat::Zero(dim, dim);
  switch (component) {
    case StokesComponent::Z:
      for (int m = 0; m < dim; ++m) s(m, m) = m - 0.5 * n_quanta;
      break;
    case StokesComponent::Zero:
      s.diagonal().setConstant(0.5 * n_quanta);
      break;
    case StokesComponent::X:
      for (int m = 0; m < n_quanta; ++m) {
        const double v = 0.5 * std::sqrt(double(m + 1) * double(n_quanta - m));
        s(m + 1, m) = v;
        s(m, m + 1) = v;
      }
      break;
    case StokesComponent::Y:
      // a^dagger b raises m, so S_y = -i(a^dagger b - b^dagger a)/2 puts -i on the subdiagonal.
      for (int m = 0; m < n_quanta; ++m) {
        const double v = 0.5 * std::sqrt(double(m + 1) * double(n_quanta - m));
        s(m + 1, m) = -kI * v;
        s(m, m + 1) = kI * v;
      }
      break;
  }
  return HermitianOperator(std::move(s));
}

HermitianOperator stokes_matrix(int n_quanta, const Vec3& axis, double unit_tol) {
  require_unit(axis, unit_tol, "Stokes axis");
  return HermitianOperator(axis.x() * stokes_matrix(n_quanta, StokesComponent::X).matrix() +
                           axis.y() * stokes_matrix(n_quanta, StokesComponent::Y).matrix() +
                           axis.z() * stokes_matrix(n_quanta, StokesComponent::Z).matrix());
}

std::string_view to_string(RotationKind kind) {
  switch (kind) {
    case RotationKind::EulerZYZ: return "zyz";
    case RotationKind::EulerXYZ: return "xyz";
    case RotationKind::AxisAngle: return "axis-angle";
  }
  return "?";
}

RotationKind parse_rotation_kind(std::string_view name) {
  if (name == "zyz" || name == "euler-zyz") return RotationKind::EulerZYZ;
  if (name == "xyz" || name == "euler-xyz") return RotationKind::EulerXYZ;
  if (name == "axis-angle") return RotationKind::AxisAngle;
  throw InvalidArgument("unknown parametrization '" + std::string(name) + "' (expected zyz, xyz or axis-angle)");
}

void RotationSpec::validate() const {
  for (double p : params)
    if (!std::isfinite(p)) throw InvalidArgument("rotation parameters must be finite");
}

Vec3 polar_axis(double theta, double phi) {
  return {std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi), std::cos(theta)};
}

void require_unit(const Vec3& n, double tol, std::string_view what) {
  if (!n.allFinite() || std::abs(n.norm() - 1.0) > tol)
    throw InvalidArgument(std::string(what) + " must be a unit vector (|n| = " + std::to_string(n.norm()) + ")");
}

CMat exp_hermitian(const CMat& generator, cplx coeff) {
  Eigen::SelfAdjointEigenSolver<CMat> es(generator);
  if (es.info() != Eigen::Success) throw NumericFailure("eigendecomposition failed");
  return exp_in_basis(es.eigenvectors(), es.eigenvalues(), coeff);
}

SpinAlgebra::SpinAlgebra(int n_quanta)
    : n_(n_quanta),
      sx_(stokes_matrix(n_quanta, StokesComponent::X).matrix()),
      sy_(stokes_matrix(n_quanta, StokesComponent::Y).matrix()),
      sz_(stokes_matrix(n_quanta, StokesComponent::Z).matrix()) {
  Eigen::SelfAdjointEigenSolver<CMat> ex(sx_);
  Eigen::SelfAdjointEigenSolver<CMat> ey(sy_);
  if (ex.info() != Eigen::Success || ey.info() != Eigen::Success)
    throw NumericFailure("eigendecomposition of Stokes operators failed");
  vx_ = ex.eigenvectors();
  lx_ = ex.eigenvalues();
  vy_ = ey.eigenvectors();
  ly_ = ey.eigenvalues();
}

CMat SpinAlgebra::exp_x(double t) const { return exp_in_basis(vx_, lx_, -kI * t); }
CMat SpinAlgebra::exp_y(double t) const { return exp_in_basis(vy_, ly_, -kI * t); }

CMat SpinAlgebra::exp_z(double t) const {
  CVec d(dim());
  for (int m = 0; m < dim(); ++m) d(m) = std::exp(-kI * t * (m - 0.5 * n_));
  return d.asDiagonal();
}

CMat SpinAlgebra::exp_axis(double chi, const Vec3& n) const {
  require_unit(n, 1e-10, "rotation axis");
  return exp_hermitian(along(n), kI * chi);
}

CMat SpinAlgebra::rotation(const RotationSpec& spec) const {
  spec.validate();
  const auto& p = spec.params;
  switch (spec.kind) {
    case RotationKind::EulerZYZ: {
      // exp(-i Phi Sz) exp(-i Theta Sy) exp(-i Psi Sz); the z factors are diagonal.
      CMat r = exp_y(p[1]);
      for (int i = 0; i < dim(); ++i)
        for (int j = 0; j < dim(); ++j)
          r(i, j) *= std::exp(-kI * (p[0] * (i - 0.5 * n_) + p[2] * (j - 0.5 * n_)));
      return r;
    }
    case RotationKind::EulerXYZ: {
      CMat r = exp_x(p[0]) * exp_y(p[1]);
      for (int j = 0; j < dim(); ++j) r.col(j) *= std::exp(-kI * p[2] * (j - 0.5 * n_));
      return r;
    }
    case RotationKind::AxisAngle:
      return exp_axis(p[0], polar_axis(p[1], p[2]));
  }
  return {};
}

CMat rotation_unitary(int n_quanta, const RotationSpec& spec) {
  require_quanta(n_quanta);
  return SpinAlgebra(n_quanta).rotation(spec);
}

SpinState apply_rotation(const SpinState& state, const RotationSpec& spec) {
  CVec rotated = rotation_unitary(state.n_quanta(), spec) * state.amplitudes();
  return SpinState(state.n_quanta(), std::move(rotated), true);
}

double expectation(const SpinState& state, const CMat& op, double imag_tol) {
  if (op.rows() != state.dim() || op.cols() != state.dim())
    throw InvalidArgument("operator dimension " + std::to_string(op.rows()) + " does not match state dimension " +
                          std::to_string(state.dim()));
  const cplx v = state.amplitudes().dot(op * state.amplitudes());
  if (std::abs(v.imag()) > imag_tol)
    throw InvalidArgument("expectation value has imaginary part " + std::to_string(v.imag()) +
                          "; operator is not Hermitian");
  return v.real();
}

double expectation(const SpinState& state, const HermitianOperator& op, double imag_tol) {
  return expectation(state, op.matrix(), imag_tol);
}

Mat3 rodrigues(double chi, const Vec3& n, double unit_tol) {
  require_unit(n, unit_tol, "rotation axis");
  const double c = std::cos(chi), s = std::sin(chi), k = 1.0 - c;
  const double x = n.x(), y = n.y(), z = n.z();
  Mat3 r;
  r << c + x * x * k, x * y * k + z * s, x * z * k - y * s,
       y * x * k - z * s, c + y * y * k, y * z * k + x * s,
       z * x * k + y * s, z * y * k - x * s, c + z * z * k;
  return r;
}

Mat3 rotation3_for(const RotationSpec& spec) {
  spec.validate();
  const auto& p = spec.params;
  const Vec3 ex = Vec3::UnitX(), ey = Vec3::UnitY(), ez = Vec3::UnitZ();
  // exp(-i t S_k) is exp(+i(-t) S_k), hence the negated angles.
  switch (spec.kind) {
    case RotationKind::EulerZYZ:
      return rodrigues(-p[0], ez) * rodrigues(-p[1], ey) * rodrigues(-p[2], ez);
    case RotationKind::EulerXYZ:
      return rodrigues(-p[0], ex) * rodrigues(-p[1], ey) * rodrigues(-p[2], ez);
    case RotationKind::AxisAngle:
      return rodrigues(p[0], polar_axis(p[1], p[2]));
  }
  return Mat3::Identity();
}

}  // namespace rotqfi

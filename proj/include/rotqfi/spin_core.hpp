#pragma once

#include <array>
#include <complex>
#include <span>
#include <string_view>

#include <Eigen/Dense>

namespace rotqfi {

using cplx = std::complex<double>;
using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;
using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;

inline constexpr double kPi = 3.14159265358979323846;

// Pure state of N quanta shared between two modes, expanded in the Dicke basis.
// Amplitude index m labels the ket |m, N-m> (m quanta in mode a).
class SpinState {
 public:
  // Throws InvalidArgument on length mismatch, zero vector, or (without
  // normalize) a norm that differs from 1 by more than norm_tol.
  SpinState(int n_quanta, CVec amplitudes, bool normalize = false, double norm_tol = 1e-9);

  int n_quanta() const noexcept { return n_; }
  int dim() const noexcept { return n_ + 1; }
  const CVec& amplitudes() const noexcept { return amps_; }
  cplx operator[](int m) const { return amps_(m); }

 private:
  int n_;
  CVec amps_;
};

SpinState make_state(int n_quanta, std::span<const cplx> amplitudes, bool normalize);

// |m, N-m>
SpinState basis_state(int n_quanta, int m);

// Square complex matrix equal to its conjugate transpose within tol.
class HermitianOperator {
 public:
  explicit HermitianOperator(CMat entries, double tol = 1e-12);

  int dim() const noexcept { return static_cast<int>(m_.rows()); }
  const CMat& matrix() const noexcept { return m_; }

 private:
  CMat m_;
};

enum class StokesComponent { X, Y, Z, Zero };

HermitianOperator stokes_matrix(int n_quanta, StokesComponent component);
// S.n for a unit axis.
HermitianOperator stokes_matrix(int n_quanta, const Vec3& axis, double unit_tol = 1e-10);

enum class RotationKind { EulerZYZ, EulerXYZ, AxisAngle };

std::string_view to_string(RotationKind kind);
RotationKind parse_rotation_kind(std::string_view name);

// (Phi, Theta, Psi) for zyz, (alpha, beta, gamma) for xyz, (chi, theta, phi)
// for axis-angle with axis (sin theta cos phi, sin theta sin phi, cos theta).
struct RotationSpec {
  RotationKind kind = RotationKind::EulerZYZ;
  std::array<double, 3> params{};

  static RotationSpec zyz(double phi, double theta, double psi) {
    return {RotationKind::EulerZYZ, {phi, theta, psi}};
  }
  static RotationSpec xyz(double alpha, double beta, double gamma) {
    return {RotationKind::EulerXYZ, {alpha, beta, gamma}};
  }
  static RotationSpec axis_angle(double chi, double theta, double phi) {
    return {RotationKind::AxisAngle, {chi, theta, phi}};
  }

  void validate() const;
};

Vec3 polar_axis(double theta, double phi);

// Throws InvalidArgument when |n| differs from 1 by more than tol.
void require_unit(const Vec3& n, double tol, std::string_view what);

// exp(coeff * G) for Hermitian G through its eigendecomposition.
CMat exp_hermitian(const CMat& generator, cplx coeff);

// Stokes matrices of a fixed N together with the eigenbases of S_x and S_y,
// so repeated Euler rotations cost two matrix products each. Immutable after
// construction.
class SpinAlgebra {
 public:
  explicit SpinAlgebra(int n_quanta);

  int n_quanta() const noexcept { return n_; }
  int dim() const noexcept { return n_ + 1; }
  const CMat& sx() const noexcept { return sx_; }
  const CMat& sy() const noexcept { return sy_; }
  const CMat& sz() const noexcept { return sz_; }
  CMat along(const Vec3& n) const { return n.x() * sx_ + n.y() * sy_ + n.z() * sz_; }

  // exp(-i t S_k)
  CMat exp_x(double t) const;
  CMat exp_y(double t) const;
  CMat exp_z(double t) const;
  // exp(+i chi S.n)
  CMat exp_axis(double chi, const Vec3& n) const;

  CMat rotation(const RotationSpec& spec) const;

 private:
  int n_;
  CMat sx_, sy_, sz_;
  CMat vx_, vy_;
  Eigen::VectorXd lx_, ly_;
};

CMat rotation_unitary(int n_quanta, const RotationSpec& spec);
SpinState apply_rotation(const SpinState& state, const RotationSpec& spec);

// <psi|op|psi>. Throws on dimension mismatch or an imaginary part above imag_tol.
double expectation(const SpinState& state, const HermitianOperator& op, double imag_tol = 1e-10);
double expectation(const SpinState& state, const CMat& op, double imag_tol = 1e-10);

// Rotation matrix in the sign convention under which exp(+i chi S.n) maps
// <S> to R <S>.
Mat3 rodrigues(double chi, const Vec3& n, double unit_tol = 1e-10);

// The classical rotation that carries <S> and <S_i S_j> of a state to those of
// the state rotated by spec.
Mat3 rotation3_for(const RotationSpec& spec);

}  // namespace rotqfi

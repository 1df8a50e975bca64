#pragma once

#include <array>
#include <functional>
#include <optional>
#include <string>

#include "rotqfi/spin_core.hpp"

namespace rotqfi {

// H_k with dR/dtheta_k = -i H_k R, one per rotation parameter.
struct GeneratorTriple {
  std::array<CMat, 3> ops;
  const CMat& operator[](int k) const { return ops[static_cast<std::size_t>(k)]; }
};

struct QfimReport {
  Mat3 matrix = Mat3::Zero();
  double determinant = 0.0;
  std::optional<Mat3> inverse;
  std::optional<double> trace_of_inverse;
  double condition_number = 0.0;
  RotationSpec spec;
  std::string state_descriptor;
};

struct QfimOptions {
  // Also evaluate the SLD construction and throw NumericFailure on mismatch.
  bool cross_check = false;
  double cross_check_tol = 1e-8;
};

// Closed forms for every parametrization, each a linear combination of Sx, Sy, Sz.
GeneratorTriple h_generators(int n_quanta, const RotationSpec& spec);

// i (dR) R^dagger by Richardson-extrapolated central differences; an
// independent check on the closed forms. Throws NumericFailure
// when the raw estimate is not Hermitian within 1e-7.
GeneratorTriple numeric_generators(int n_quanta, const RotationSpec& spec, double fd_step = 1e-5);
GeneratorTriple numeric_generators(const SpinAlgebra& alg, const RotationSpec& spec, double fd_step = 1e-5);
GeneratorTriple h_generators(const SpinAlgebra& alg, const RotationSpec& spec);

// 4 Cov{H_l, H_m} in the rotated state R(spec)|psi0>.
Mat3 qfim_covariance(const SpinState& state0, const RotationSpec& spec);
// Same, reusing a precomputed algebra (the scan kernels call this per grid point).
Mat3 qfim_covariance(const SpinAlgebra& alg, const CVec& psi0, const RotationSpec& spec);

// (1/2)<L_l L_m + L_m L_l> with L_k = 2(|d_k psi><psi| + |psi><d_k psi|). The
// state derivatives are exact: product rule for Euler products and the
// Daleckii-Krein formula for the axis-angle exponential.
Mat3 qfim_sld(const SpinState& state0, const RotationSpec& spec);

QfimReport qfim(const SpinState& state0, const RotationSpec& spec, const QfimOptions& opts = {},
                std::string state_descriptor = {});

// det < rel_threshold * (trace/3)^3
bool is_singular(const Mat3& info, double rel_threshold = 1e-12);

// Populates inverse and trace_of_inverse; throws SingularMatrix otherwise.
QfimReport crb(QfimReport report, double rel_threshold = 1e-12);

Mat3 anticoherent_qfim_closed_form(int n_quanta, double theta);

// 3/(N(N+2)) (1 + 2/sin^2 Theta); throws InvalidArgument when sin Theta = 0.
double trace_bound(int n_quanta, double theta);

// 4 Var[S.n]. Cross-checked against 4[<dR^dagger dR> - |<R^dagger dR>|^2] at chi = 0.
double single_param_qfi(const SpinState& state, const Vec3& n);
// The derivative form alone.
double single_param_qfi_derivative_form(const SpinState& state, const Vec3& n);

// Var[P] / |d<P>/dchi|^2 for the projector onto the initial state, evaluated
// exactly at chi. Throws InvalidArgument at a stationary point.
double projection_variance(const SpinState& state, const Vec3& n, double chi);

// J^T I J
Mat3 jacobian_transform(const Mat3& jacobian, const Mat3& info);

using AngleMap = std::function<std::array<double, 3>(const std::array<double, 3>&)>;

// d out_i / d in_j by central differences; output differences are wrapped
// into (-pi, pi].
Mat3 numeric_jacobian(const AngleMap& map, const std::array<double, 3>& at, double step = 1e-6);

// zyz angles (Phi, Theta, Psi) of the rotation whose classical matrix (as
// returned by rotation3_for) is r. Theta in [0, pi].
std::array<double, 3> zyz_angles_from_rotation3(const Mat3& r);

}  // namespace rotqfi

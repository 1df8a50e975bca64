#include "rotqfi/baselines.hpp"

#include <cmath>

#include "rotqfi/errors.hpp"
#include "rotqfi/qfim.hpp"

namespace rotqfi {

namespace {

Vec3 noon_axis(double a, double b) { return polar_axis(a, b); }

double inner(double theta, double per_copy_scale) {
  const double c = std::cos(theta), s = std::sin(theta);
  return c * c + s * s / per_copy_scale;
}

}  // namespace

SpinState noon_state(int n_quanta) {
  if (n_quanta < 1) throw InvalidArgument("NOON state needs N >= 1");
  CVec amps = CVec::Zero(n_quanta + 1);
  amps(0) = amps(n_quanta) = 1.0 / std::sqrt(2.0);
  return SpinState(n_quanta, std::move(amps));
}

Vec3 generator_axis(EulerGenerator which, double phi, double theta) {
  switch (which) {
    case EulerGenerator::Phi: return Vec3::UnitZ();
    case EulerGenerator::Theta: return Vec3(-std::sin(phi), std::cos(phi), 0.0);
    case EulerGenerator::Psi: return polar_axis(theta, phi);
  }
  return Vec3::UnitZ();
}

double rotated_noon_h_variance(int n_quanta, double a, double b, EulerGenerator which, double phi, double theta) {
  const SpinState rotated = apply_rotation(noon_state(n_quanta), RotationSpec::zyz(b, a, 0.0));
  return single_param_qfi(rotated, generator_axis(which, phi, theta));
}

double rotated_noon_h_variance_closed(int n_quanta, double a, double b, EulerGenerator which, double phi,
                                      double theta) {
  const Vec3 u = noon_axis(a, b);
  const Vec3 n = generator_axis(which, phi, theta);
  const double nn = n_quanta;
  const double along = u.dot(n);
  return nn * nn * along * along + nn * u.cross(n).squaredNorm();
}

ThreeNoonBound three_noon_bound(int n_quanta, double theta1, double theta2) {
  if (n_quanta < 3 || n_quanta % 3 != 0)
    throw InvalidArgument("three-NOON comparison needs N divisible by 3, got " + std::to_string(n_quanta));
  const double n = n_quanta;
  const double pre = (3.0 / n) * (3.0 / n);
  ThreeNoonBound out;
  out.printed = pre * (1.0 + 1.0 / inner(theta1, n) + 1.0 / inner(theta2, n));
  out.rederived = pre * (1.0 + 1.0 / inner(theta1, n / 3.0) + 1.0 / inner(theta2, n / 3.0));
  out.small_copies = n_quanta / 3 < 3;
  return out;
}

double advantage_ratio(int n_quanta) {
  return three_noon_bound(n_quanta, 0.0, 0.0).printed / trace_bound(n_quanta, kPi / 2.0);
}

ShotNoise shot_noise_reference(int n_quanta, const Vec3& n) {
  require_unit(n, 1e-10, "shot-noise axis");
  return {single_param_qfi(basis_state(n_quanta, n_quanta), n), static_cast<double>(n_quanta)};
}

std::vector<ComparisonRow> comparison_rows(int n_quanta, double theta1, double theta2, double big_theta) {
  const ThreeNoonBound three = three_noon_bound(n_quanta, theta1, theta2);
  const double multi = trace_bound(n_quanta, big_theta);
  return {
      {"multi-anticoherent", n_quanta, big_theta, 0.0, multi},
      {"three-noon", n_quanta, theta1, theta2, three.printed},
      {"three-noon-rederived", n_quanta, theta1, theta2, three.rederived},
      {"shot-noise-reference", n_quanta, 0.0, 0.0, 3.0 * (3.0 / shot_noise_reference(n_quanta, Vec3::UnitX()).constant)},
      {"advantage-ratio", n_quanta, theta1, theta2, three.printed / multi},
  };
}

}  // namespace rotqfi

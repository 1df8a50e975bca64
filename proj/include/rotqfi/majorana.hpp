#pragma once

#include <array>
#include <span>
#include <string>
#include <vector>

#include "rotqfi/spin_core.hpp"

namespace rotqfi {

struct MajoranaPoint {
  double theta = 0.0;  // [0, pi]
  double phi = 0.0;    // [0, 2 pi)
  int multiplicity = 1;

  Vec3 direction() const { return polar_axis(theta, phi); }
  static MajoranaPoint from_direction(const Vec3& d, int multiplicity = 1);
};

struct Constellation {
  std::vector<MajoranaPoint> points;

  int total() const;
  // Angle ranges, multiplicities >= 1, distinct points farther apart than min_separation.
  void validate(double min_separation = 0.0) const;
  // One unit vector per star, repeated by multiplicity.
  std::vector<Vec3> stars() const;
};

double angular_distance(const Vec3& a, const Vec3& b);

// Groups directions closer than merge_tol (radians) into single points with
// summed multiplicity; cluster positions are the normalized mean direction.
Constellation constellation_from_directions(std::span<const Vec3> dirs, double merge_tol = 1e-4,
                                            std::span<const int> multiplicities = {});

Constellation rotate(const Constellation& c, const Mat3& r);

// prod_k (cos(theta_k/2) a^dagger + e^{i phi_k} sin(theta_k/2) b^dagger)|vac>,
// normalized, with the largest-modulus amplitude made real positive.
SpinState constellation_to_state(const Constellation& c);

// Roots of P(z) = sum_m c_m sqrt(C(N,m)) z^m. A star (theta, phi) is the root
// z = -e^{i phi} tan(theta/2); a degree deficit d puts d stars at theta = pi.
// Nearby roots are fused into one multiple root only when the polynomial's
// lower derivatives vanish to rounding at the refined center.
Constellation state_to_constellation(const SpinState& state, double merge_tol = 1e-4);

// Make the largest-modulus amplitude real positive.
SpinState fix_global_phase(const SpinState& state);

// 1 - |<psi| exp(i chi S.n) |psi>|
double symmetry_check(const SpinState& state, double chi, const Vec3& n);

struct SymmetryCertificate {
  std::array<double, 2> chi{};
  std::array<Vec3, 2> axes{Vec3::UnitZ(), Vec3::UnitZ()};
  std::array<double, 2> residuals{};
  double axes_angle = 0.0;
  bool verdict = false;
  std::vector<std::string> reasons;  // why verdict is false
};

// Two-symmetry certificate for 2-anticoherence: both rotations leave the state
// invariant up to phase, the axes are independent, and neither angle is 0 or
// pi modulo 2 pi.
SymmetryCertificate certify_two_symmetries(const SpinState& state, double chi1, const Vec3& n1, double chi2,
                                           const Vec3& n2, double tol = 1e-9);

}  // namespace rotqfi

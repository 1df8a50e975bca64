#pragma once

#include <cstdint>
#include <vector>

#include "rotqfi/spin_core.hpp"

namespace rotqfi {

using CMat3 = Eigen::Matrix3cd;

struct MomentReport {
  Vec3 stokes_vector = Vec3::Zero();
  CMat3 stokes_tensor = CMat3::Zero();
  int order = 0;
  int t_max = 0;
  // True when order == t_max: the state may be anticoherent beyond the cap.
  bool capped = false;
  double tolerance = 0.0;
  // c_k for k = 1..order (c_1 = 0, c_2 = N(N+2)/12, higher orders from probe means).
  std::vector<double> directional_constants;
};

Vec3 stokes_vector(const SpinState& state);

// S_ij = <S_i S_j>, Hermitian.
CMat3 stokes_tensor(const SpinState& state);

// <(S.n)^k>
double directional_moment(const SpinState& state, const Vec3& n, int k, double unit_tol = 1e-10);

// Fixed probe set for orders t >= 3: the 12 icosahedron vertices followed by 20
// pseudorandom unit vectors drawn from a seeded Mersenne twister.
std::vector<Vec3> probe_directions(std::uint64_t seed = 0);

// Largest t <= t_max with isotropic moments of every order k <= t. Orders 1 and
// 2 use the closed criteria S = 0 and S = N(N+2)/12 * identity; higher orders
// test constancy of directional_moment over the probe set. tol is relative to
// the natural scale of each moment ((N/2)^k).
MomentReport anticoherence_order(const SpinState& state, int t_max = 2, double tol = 1e-8,
                                 std::uint64_t seed = 0);

}  // namespace rotqfi

#pragma once

#include <string>
#include <vector>

#include "rotqfi/spin_core.hpp"

namespace rotqfi {

// (|N,0> + |0,N>)/sqrt2
SpinState noon_state(int n_quanta);

enum class EulerGenerator { Phi, Theta, Psi };

// Axis n of H_which = n.S for zyz angles (Phi, Theta): z, (-sin Phi, cos Phi, 0)
// and (sin Theta cos Phi, sin Theta sin Phi, cos Theta).
Vec3 generator_axis(EulerGenerator which, double phi, double theta);

// 4 Var[H_which] in exp(-i b S_z) exp(-i a S_y)|NOON>, computed from the state
// vector. The NOON axis of that state is u = (sin a cos b, sin a sin b, cos a).
double rotated_noon_h_variance(int n_quanta, double a, double b, EulerGenerator which, double phi, double theta);

// N^2 (u.n)^2 + N |u x n|^2, valid for N > 2.
double rotated_noon_h_variance_closed(int n_quanta, double a, double b, EulerGenerator which, double phi,
                                      double theta);

struct ThreeNoonBound {
  double printed = 0.0;     // inner terms cos^2 + sin^2/N
  double rederived = 0.0;   // inner terms cos^2 + 3 sin^2/N (N/3 quanta per copy)
  bool small_copies = false;  // N/3 < 3
};

// Sum of single-parameter variance bounds for three NOON states of N/3 quanta
// each, misaligned from the generators by theta1 and theta2. Throws
// InvalidArgument unless N is a positive multiple of 3.
ThreeNoonBound three_noon_bound(int n_quanta, double theta1, double theta2);

// three_noon_bound(N, 0, 0).printed / trace_bound(N, pi/2) = 3 + 6/N.
double advantage_ratio(int n_quanta);

struct ShotNoise {
  double coherent_state = 0.0;  // 4 Var[S.n] on |N,0>
  double constant = 0.0;        // N
};
ShotNoise shot_noise_reference(int n_quanta, const Vec3& n);

struct ComparisonRow {
  std::string scheme;
  int n_quanta = 0;
  double angle1 = 0.0;
  double angle2 = 0.0;
  double bound = 0.0;
};

// multi-anticoherent (angle1 = Theta), three-noon and three-noon-rederived
// (angle1, angle2 = theta1, theta2), shot-noise-reference (9/N: three
// parameters on N/3 quanta each) and the ratio of the three-noon to the
// multi-anticoherent bound.
std::vector<ComparisonRow> comparison_rows(int n_quanta, double theta1, double theta2, double big_theta);

}  // namespace rotqfi

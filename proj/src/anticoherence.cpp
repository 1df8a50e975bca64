#include "rotqfi/anticoherence.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <random>

#include "rotqfi/errors.hpp"

namespace rotqfi {

namespace {

std::array<CVec, 3> stokes_images(const SpinState& state, const SpinAlgebra& alg) {
  const CVec& psi = state.amplitudes();
  return {alg.sx() * psi, alg.sy() * psi, alg.sz() * psi};
}

}  // namespace

Vec3 stokes_vector(const SpinState& state) {
  const SpinAlgebra alg(state.n_quanta());
  const auto img = stokes_images(state, alg);
  const CVec& psi = state.amplitudes();
  return {psi.dot(img[0]).real(), psi.dot(img[1]).real(), psi.dot(img[2]).real()};
}

CMat3 stokes_tensor(const SpinState& state) {
  const SpinAlgebra alg(state.n_quanta());
  const auto img = stokes_images(state, alg);
  // <S_i S_j> = (S_i psi)^dagger (S_j psi) since S_i is Hermitian.
  CMat3 t;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) t(i, j) = img[i].dot(img[j]);
  return t;
}

double directional_moment(const SpinState& state, const Vec3& n, int k, double unit_tol) {
  require_unit(n, unit_tol, "moment direction");
  if (k < 1) throw InvalidArgument("moment order must be positive");
  const CMat g = SpinAlgebra(state.n_quanta()).along(n);
  CVec v = state.amplitudes();
  for (int i = 0; i < k; ++i) v = g * v;
  return state.amplitudes().dot(v).real();
}

std::vector<Vec3> probe_directions(std::uint64_t seed) {
  std::vector<Vec3> dirs;
  dirs.reserve(32);
  const double phi = 0.5 * (1.0 + std::sqrt(5.0));
  for (double s1 : {-1.0, 1.0})
    for (double s2 : {-1.0, 1.0}) {
      dirs.push_back(Vec3(0.0, s1, s2 * phi).normalized());
      dirs.push_back(Vec3(s1, s2 * phi, 0.0).normalized());
      dirs.push_back(Vec3(s2 * phi, 0.0, s1).normalized());
    }
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  while (dirs.size() < 32) {
    Vec3 v(gauss(rng), gauss(rng), gauss(rng));
    if (v.norm() > 1e-6) dirs.push_back(v.normalized());
  }
  return dirs;
}

MomentReport anticoherence_order(const SpinState& state, int t_max, double tol, std::uint64_t seed) {
  if (t_max < 0) throw InvalidArgument("t_max must be non-negative");
  MomentReport rep;
  rep.stokes_vector = stokes_vector(state);
  rep.stokes_tensor = stokes_tensor(state);
  rep.t_max = t_max;
  rep.tolerance = tol;

  const double n = state.n_quanta();
  const double c2 = n * (n + 2.0) / 12.0;
  int order = 0;

  if (t_max >= 1 && rep.stokes_vector.norm() < tol) {
    order = 1;
    rep.directional_constants.push_back(0.0);
  }
  if (order == 1 && t_max >= 2) {
    const double dev = (rep.stokes_tensor - c2 * CMat3::Identity()).cwiseAbs().maxCoeff();
    if (dev < tol * std::max(1.0, c2)) {
      order = 2;
      rep.directional_constants.push_back(c2);
    }
  }
  if (order == 2 && t_max >= 3) {
    const auto probes = probe_directions(seed);
    const SpinAlgebra alg(state.n_quanta());
    std::vector<CVec> powers;
    powers.reserve(probes.size());
    for (const Vec3& d : probes) powers.push_back(alg.along(d) * alg.along(d) * state.amplitudes());
    for (int k = 3; k <= t_max; ++k) {
      double lo = 1e300, hi = -1e300, sum = 0.0;
      for (std::size_t i = 0; i < probes.size(); ++i) {
        powers[i] = alg.along(probes[i]) * powers[i];
        const double m = state.amplitudes().dot(powers[i]).real();
        lo = std::min(lo, m);
        hi = std::max(hi, m);
        sum += m;
      }
      if (hi - lo >= tol * std::max(1.0, std::pow(0.5 * n, k))) break;
      order = k;
      rep.directional_constants.push_back(sum / static_cast<double>(probes.size()));
    }
  }
  rep.order = order;
  rep.capped = (order == t_max);
  return rep;
}

}  // namespace rotqfi

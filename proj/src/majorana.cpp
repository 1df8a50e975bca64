#include "rotqfi/majorana.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numeric>

#include "rotqfi/errors.hpp"

namespace rotqfi {

namespace {

double wrap_phi(double phi) {
  double p = std::fmod(phi, 2.0 * kPi);
  if (p < 0.0) p += 2.0 * kPi;
  if (p >= 2.0 * kPi) p = 0.0;
  return p;
}

double log_binomial(int n, int k) {
  return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

cplx horner(const std::vector<cplx>& coef, cplx z, cplx& deriv) {
  // coef[m] multiplies z^m
  cplx p = 0.0;
  deriv = 0.0;
  for (auto it = coef.rbegin(); it != coef.rend(); ++it) {
    deriv = deriv * z + p;
    p = p * z + *it;
  }
  return p;
}

cplx newton_polish(const std::vector<cplx>& coef, cplx z, int steps) {
  cplx d;
  double res = std::abs(horner(coef, z, d));
  for (int s = 0; s < steps; ++s) {
    if (res == 0.0 || d == cplx(0.0)) break;
    const cplx next = z - horner(coef, z, d) / d;
    cplx dn;
    const double rn = std::abs(horner(coef, next, dn));
    if (!(rn < res)) break;
    z = next;
    res = rn;
    horner(coef, z, d);
  }
  return z;
}

// j-th derivative of sum_m coef[m] z^m.
std::vector<cplx> derivative(const std::vector<cplx>& coef, int j) {
  if (j <= 0) return coef;
  std::vector<cplx> out;
  for (std::size_t m = static_cast<std::size_t>(j); m < coef.size(); ++m) {
    double f = 1.0;
    for (std::size_t t = m - static_cast<std::size_t>(j) + 1; t <= m; ++t) f *= static_cast<double>(t);
    out.push_back(coef[m] * f);
  }
  return out;
}

// j-th Taylor coefficient P^(j)(c)/j! together with the running bound
// sum_m |coef[m]| C(m,j) |c|^(m-j) that scales its rounding error.
std::pair<cplx, double> taylor_coefficient(const std::vector<cplx>& coef, cplx c, int j) {
  cplx v = 0.0;
  double bound = 0.0;
  const double r = std::abs(c);
  for (std::size_t m = coef.size(); m-- > static_cast<std::size_t>(j);) {
    double binom = 1.0;
    for (int t = 1; t <= j; ++t) binom = binom * static_cast<double>(m - static_cast<std::size_t>(j) + t) / t;
    v = v * c + coef[m] * binom;
    bound = bound * r + std::abs(coef[m]) * binom;
  }
  return {v, bound};
}

constexpr std::size_t kMaxSubsetSearch = 10;

// Candidate grouping radii (rad), coarse to fine in steps of sqrt(2).
constexpr double kClusterRadii[] = {8e-2, 5.6e-2, 4e-2, 2.8e-2, 2e-2, 1.4e-2, 1e-2, 7e-3, 5e-3,
                                    3.5e-3, 2.5e-3, 1.8e-3, 1.2e-3, 8e-4, 6e-4, 4e-4, 3e-4, 2e-4};

struct DisjointSets {
  std::vector<std::size_t> parent;
  explicit DisjointSets(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  }
  void unite(std::size_t a, std::size_t b) { parent[find(a)] = find(b); }
};

}  // namespace

MajoranaPoint MajoranaPoint::from_direction(const Vec3& d, int multiplicity) {
  const Vec3 u = d.normalized();
  const double theta = std::acos(std::clamp(u.z(), -1.0, 1.0));
  const double rho = std::hypot(u.x(), u.y());
  const double phi = rho < 1e-15 ? 0.0 : wrap_phi(std::atan2(u.y(), u.x()));
  return {theta, phi, multiplicity};
}

int Constellation::total() const {
  int n = 0;
  for (const auto& p : points) n += p.multiplicity;
  return n;
}

void Constellation::validate(double min_separation) const {
  for (const auto& p : points) {
    if (!(p.theta >= 0.0 && p.theta <= kPi)) throw InvalidArgument("point theta outside [0, pi]");
    if (!(p.phi >= 0.0 && p.phi < 2.0 * kPi)) throw InvalidArgument("point phi outside [0, 2 pi)");
    if (p.multiplicity < 1) throw InvalidArgument("point multiplicity must be at least 1");
  }
  for (std::size_t i = 0; i < points.size(); ++i)
    for (std::size_t j = i + 1; j < points.size(); ++j)
      if (angular_distance(points[i].direction(), points[j].direction()) <= min_separation)
        throw InvalidArgument("constellation points " + std::to_string(i) + " and " + std::to_string(j) +
                              " coincide; merge them into one point with a multiplicity");
}

std::vector<Vec3> Constellation::stars() const {
  std::vector<Vec3> out;
  for (const auto& p : points)
    for (int k = 0; k < p.multiplicity; ++k) out.push_back(p.direction());
  return out;
}

double angular_distance(const Vec3& a, const Vec3& b) {
  // atan2 form stays accurate for nearly (anti)parallel vectors.
  return std::atan2(a.cross(b).norm(), a.dot(b));
}

Constellation constellation_from_directions(std::span<const Vec3> dirs, double merge_tol,
                                            std::span<const int> multiplicities) {
  if (!multiplicities.empty() && multiplicities.size() != dirs.size())
    throw InvalidArgument("one multiplicity per direction expected");
  DisjointSets sets(dirs.size());
  for (std::size_t i = 0; i < dirs.size(); ++i)
    for (std::size_t j = i + 1; j < dirs.size(); ++j)
      if (angular_distance(dirs[i], dirs[j]) < merge_tol) sets.unite(i, j);

  Constellation c;
  std::vector<std::size_t> order;  // first occurrence of each cluster, in input order
  std::vector<Vec3> sums(dirs.size(), Vec3::Zero());
  std::vector<int> mult(dirs.size(), 0);
  for (std::size_t i = 0; i < dirs.size(); ++i) {
    const std::size_t r = sets.find(i);
    const int m = multiplicities.empty() ? 1 : multiplicities[i];
    if (mult[r] == 0) order.push_back(r);
    sums[r] += m * dirs[i].normalized();
    mult[r] += m;
  }
  for (std::size_t r : order) c.points.push_back(MajoranaPoint::from_direction(sums[r], mult[r]));
  return c;
}

Constellation rotate(const Constellation& c, const Mat3& r) {
  Constellation out;
  for (const auto& p : c.points) out.points.push_back(MajoranaPoint::from_direction(r * p.direction(), p.multiplicity));
  return out;
}

SpinState fix_global_phase(const SpinState& state) {
  const CVec& a = state.amplitudes();
  Eigen::Index best = 0;
  for (Eigen::Index m = 1; m < a.size(); ++m)
    if (std::abs(a(m)) > std::abs(a(best)) * (1.0 + 1e-12)) best = m;
  const cplx phase = std::abs(a(best)) > 0.0 ? std::conj(a(best)) / std::abs(a(best)) : cplx(1.0);
  CVec out = a * phase;
  out(best) = std::abs(a(best));
  return SpinState(state.n_quanta(), std::move(out), true);
}

namespace {

// Expanded product of single-star factors. Accurate to eps times the returned
// growth factor, which becomes astronomically large for well spread
// constellations at large N (the terms cancel).
CVec product_state(const Constellation& c, int n, double& growth) {
  // e[m]: coefficient of a^dagger^m b^dagger^(N-m); bound[m] the same sum over |terms|.
  std::vector<cplx> e{1.0};
  std::vector<double> bound{1.0};
  for (const Vec3& d : c.stars()) {
    const MajoranaPoint p = MajoranaPoint::from_direction(d);
    const cplx alpha = std::cos(0.5 * p.theta);
    const cplx beta = std::polar(std::sin(0.5 * p.theta), p.phi);
    std::vector<cplx> next(e.size() + 1, 0.0);
    std::vector<double> nb(e.size() + 1, 0.0);
    for (std::size_t m = 0; m < e.size(); ++m) {
      next[m] += beta * e[m];
      next[m + 1] += alpha * e[m];
      nb[m] += std::abs(beta) * bound[m];
      nb[m + 1] += std::abs(alpha) * bound[m];
    }
    e = std::move(next);
    bound = std::move(nb);
  }
  // a^dagger^m b^dagger^(N-m)|vac> = sqrt(m!(N-m)!)|m,N-m>; dividing by sqrt(N!) leaves 1/sqrt(C(N,m)).
  CVec amps(n + 1);
  Eigen::VectorXd b(n + 1);
  for (int m = 0; m <= n; ++m) {
    const double w = std::exp(-0.5 * log_binomial(n, m));
    amps(m) = e[static_cast<std::size_t>(m)] * w;
    b(m) = bound[static_cast<std::size_t>(m)] * w;
  }
  const double norm = amps.norm();
  growth = norm > 0.0 ? (n + 1.0) * b.norm() / norm : std::numeric_limits<double>::infinity();
  return amps / norm;
}

// Amplitudes from coherent-state overlaps. For a coherent state with spinor
// (cos(t/2), e^{i p} sin(t/2)) the overlap with the star product factorizes
// into one spinor overlap per star, so it is computed to full relative
// precision. On the ring cos^2(t/2) = m/N a DFT over N+1 equally spaced
// azimuths isolates a_m with its largest possible weight, which keeps the
// extraction well conditioned at any N.
CVec ring_state(const Constellation& c, int n) {
  std::vector<std::array<cplx, 2>> spinors;
  for (const Vec3& d : c.stars()) {
    const MajoranaPoint p = MajoranaPoint::from_direction(d);
    spinors.push_back({std::cos(0.5 * p.theta), std::polar(std::sin(0.5 * p.theta), p.phi)});
  }
  const int len = n + 1;
  std::vector<double> log_mag(static_cast<std::size_t>(len * len)), phase(log_mag.size());
  double top = -std::numeric_limits<double>::infinity();
  for (int m = 0; m <= n; ++m) {
    const double ct = std::sqrt(static_cast<double>(m) / n), st = std::sqrt(static_cast<double>(n - m) / n);
    for (int l = 0; l < len; ++l) {
      const double az = 2.0 * kPi * l / len;
      const cplx bu = std::polar(st, az);
      double lm = 0.0, ph = 0.0;
      for (const auto& sp : spinors) {
        const cplx f = ct * sp[0] + std::conj(bu) * sp[1];
        lm += std::log(std::abs(f));
        ph += std::arg(f);
      }
      const auto at = static_cast<std::size_t>(m * len + l);
      log_mag[at] = lm;
      phase[at] = ph;
      top = std::max(top, lm);
    }
  }
  CVec amps(len);
  for (int m = 0; m <= n; ++m) {
    const double ct = std::sqrt(static_cast<double>(m) / n), st = std::sqrt(static_cast<double>(n - m) / n);
    cplx g = 0.0;
    for (int l = 0; l < len; ++l) {
      const auto at = static_cast<std::size_t>(m * len + l);
      const double az = 2.0 * kPi * l / len;
      g += std::polar(std::exp(log_mag[at] - top), phase[at] + (n - m) * az);
    }
    const double log_w = 0.5 * log_binomial(n, m) + (m > 0 ? m * std::log(ct) : 0.0) +
                         (m < n ? (n - m) * std::log(st) : 0.0);
    amps(m) = g / static_cast<double>(len) * std::exp(-log_w);
  }
  return amps.normalized();
}

constexpr double kProductGrowthLimit = 1e4;

}  // namespace

SpinState constellation_to_state(const Constellation& c) {
  c.validate();
  const int n = c.total();
  if (n < 1) throw InvalidArgument("constellation is empty");
  double growth = 0.0;
  CVec amps = product_state(c, n, growth);
  // The product is the more accurate route while its error bound is small;
  // past that the ring construction takes over.
  if (!(growth < kProductGrowthLimit)) amps = ring_state(c, n);
  return fix_global_phase(SpinState(n, std::move(amps), true));
}

Constellation state_to_constellation(const SpinState& state, double merge_tol) {
  const int n = state.n_quanta();
  if (n == 0) return {};
  std::vector<cplx> coef(static_cast<std::size_t>(n) + 1);
  double biggest = 0.0;
  for (int m = 0; m <= n; ++m) {
    coef[static_cast<std::size_t>(m)] = state[m] * std::exp(0.5 * log_binomial(n, m));
    biggest = std::max(biggest, std::abs(coef[static_cast<std::size_t>(m)]));
  }
  if (biggest == 0.0) throw InvalidArgument("all amplitudes vanish");
  int degree = n;
  while (degree > 0 && std::abs(coef[static_cast<std::size_t>(degree)]) <= 1e-13 * biggest) --degree;
  coef.resize(static_cast<std::size_t>(degree) + 1);

  // Raw roots from the companion matrix.
  std::vector<cplx> roots;
  if (degree > 0) {
    CMat companion = CMat::Zero(degree, degree);
    const cplx lead = coef.back();
    for (int i = 1; i < degree; ++i) companion(i, i - 1) = 1.0;
    for (int i = 0; i < degree; ++i) companion(i, degree - 1) = -coef[static_cast<std::size_t>(i)] / lead;
    Eigen::ComplexEigenSolver<CMat> es(companion, false);
    if (es.info() != Eigen::Success) throw NumericFailure("companion eigenvalue solve failed");
    for (Eigen::Index k = 0; k < es.eigenvalues().size(); ++k) roots.push_back(es.eigenvalues()(k));
  }
  auto star = [](cplx z) { return polar_axis(2.0 * std::atan(std::abs(z)), std::arg(-z)); };

  // A k-fold root comes back from the eigensolver as k roots spread by far
  // more than rounding, and the spread grows when other roots are close.
  // Candidate groups, coarse to fine, are refined from their mean (which is
  // well conditioned) by Newton on the (k-1)-th derivative, where the root is
  // simple. A group is accepted as one k-fold root only if the lower Taylor
  // coefficients at the refined center vanish to rounding, so distinct
  // nearby stars are never fused.
  const std::vector<cplx> reversed(coef.rbegin(), coef.rend());
  const double eps_scale = 4.0 * std::numeric_limits<double>::epsilon() * (degree + 1);
  auto refine = [&](const std::vector<cplx>& members, cplx& out) {
    const int k = static_cast<int>(members.size());
    double mean_abs = 0.0;
    for (const cplx& z : members) mean_abs += std::abs(z) / k;
    // Outside the unit disk work in w = 1/z, where the reversed polynomial is well scaled.
    const bool inside = mean_abs <= 1.0;
    const std::vector<cplx>& poly = inside ? coef : reversed;
    cplx c = 0.0;
    for (const cplx& z : members) c += (inside ? z : 1.0 / z) / static_cast<double>(k);
    c = newton_polish(derivative(poly, k - 1), c, k == 1 ? 2 : 8);
    for (int j = 0; j < k - 1; ++j) {
      const auto [v, bound] = taylor_coefficient(poly, c, j);
      if (std::abs(v) > eps_scale * bound) return false;
    }
    out = inside ? c : 1.0 / c;
    return true;
  };

  std::vector<Vec3> raw;
  for (const cplx& z : roots) raw.push_back(star(z));
  std::vector<bool> assigned(raw.size(), false);
  std::vector<Vec3> dirs, centers;
  dirs.reserve(static_cast<std::size_t>(n));
  for (double radius : kClusterRadii) {
    if (radius <= merge_tol) break;
    DisjointSets sets(raw.size());
    for (std::size_t i = 0; i < raw.size(); ++i)
      for (std::size_t j = i + 1; j < raw.size(); ++j)
        if (!assigned[i] && !assigned[j] && angular_distance(raw[i], raw[j]) < radius) sets.unite(i, j);
    std::vector<std::vector<std::size_t>> groups(raw.size());
    for (std::size_t i = 0; i < raw.size(); ++i)
      if (!assigned[i]) groups[sets.find(i)].push_back(i);
    auto try_subset = [&](const std::vector<std::size_t>& sub) {
      std::vector<cplx> members;
      for (std::size_t i : sub) members.push_back(roots[i]);
      cplx z;
      if (!refine(members, z)) return false;
      // Newton may walk from a wrong group onto a neighboring multiple root,
      // so the raw roots claimed are the k nearest to the refined center.
      const Vec3 at = star(z);
      for (const Vec3& c : centers)
        if (angular_distance(at, c) < merge_tol) return false;
      std::vector<std::pair<double, std::size_t>> near;
      for (std::size_t i = 0; i < raw.size(); ++i)
        if (!assigned[i]) near.emplace_back(angular_distance(at, raw[i]), i);
      if (near.size() < sub.size()) return false;
      std::partial_sort(near.begin(), near.begin() + static_cast<std::ptrdiff_t>(sub.size()), near.end());
      if (near[sub.size() - 1].first > radius) return false;
      centers.push_back(at);
      for (std::size_t r = 0; r < sub.size(); ++r) {
        assigned[near[r].second] = true;
        dirs.push_back(at);
      }
      return true;
    };
    for (const auto& grp : groups) {
      if (grp.size() < 2 || try_subset(grp)) continue;
      // Two multiple roots close together can interleave their raw roots;
      // small groups are searched subset by subset, largest first.
      if (grp.size() > kMaxSubsetSearch) continue;
      const unsigned full = (1u << grp.size()) - 1u;
      for (int size = static_cast<int>(grp.size()) - 1; size >= 2; --size)
        for (unsigned mask = 1; mask < full; ++mask) {
          if (std::popcount(mask) != size) continue;
          std::vector<std::size_t> sub;
          bool free = true;
          for (std::size_t b = 0; b < grp.size(); ++b)
            if (mask & (1u << b)) {
              free = free && !assigned[grp[b]];
              sub.push_back(grp[b]);
            }
          if (free) try_subset(sub);
        }
    }
  }
  for (std::size_t i = 0; i < raw.size(); ++i) {
    if (assigned[i]) continue;
    cplx z = roots[i];
    refine({roots[i]}, z);
    dirs.push_back(star(z));
  }
  for (int k = degree; k < n; ++k) dirs.push_back(-Vec3::UnitZ());
  return constellation_from_directions(dirs, merge_tol);
}

double symmetry_check(const SpinState& state, double chi, const Vec3& n) {
  const CMat r = SpinAlgebra(state.n_quanta()).exp_axis(chi, n);
  const double overlap = std::abs(state.amplitudes().dot(r * state.amplitudes()));
  return std::max(0.0, 1.0 - overlap);
}

SymmetryCertificate certify_two_symmetries(const SpinState& state, double chi1, const Vec3& n1, double chi2,
                                           const Vec3& n2, double tol) {
  require_unit(n1, 1e-10, "first symmetry axis");
  require_unit(n2, 1e-10, "second symmetry axis");
  SymmetryCertificate cert;
  cert.chi = {chi1, chi2};
  cert.axes = {n1, n2};
  cert.residuals = {symmetry_check(state, chi1, n1), symmetry_check(state, chi2, n2)};
  cert.axes_angle = angular_distance(n1, n2);

  for (int i = 0; i < 2; ++i) {
    const auto idx = static_cast<std::size_t>(i);
    const std::string which = i == 0 ? "first" : "second";
    if (!(cert.residuals[idx] < tol))
      cert.reasons.push_back(which + " rotation is not a symmetry (residual " + std::to_string(cert.residuals[idx]) +
                             ")");
    const double folded = std::abs(std::remainder(cert.chi[idx], 2.0 * kPi));
    if (folded < 1e-9) cert.reasons.push_back(which + " rotation angle is 0 mod 2pi");
    if (std::abs(folded - kPi) < 1e-9) cert.reasons.push_back(which + " rotation angle is pi (a reflection in the plane)");
  }
  if (n1.cross(n2).norm() <= 1e-6) cert.reasons.push_back("rotation axes are parallel");
  cert.verdict = cert.reasons.empty();
  return cert;
}

}  // namespace rotqfi

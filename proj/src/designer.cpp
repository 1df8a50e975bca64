#include "rotqfi/designer.hpp"

#include <algorithm>
#include <cmath>

#include "rotqfi/errors.hpp"

namespace rotqfi {

namespace {

constexpr std::size_t kMaxVertices = 64;
constexpr double kSlack = 1e-12;

Eigen::Vector3d targets(int n) {
  const double nn = n;
  return {1.0, nn / 2.0, nn * (2.0 * nn + 1.0) / 6.0};
}

Eigen::Vector3d moments(const std::vector<int>& support, const std::vector<double>& p) {
  Eigen::Vector3d s = Eigen::Vector3d::Zero();
  for (std::size_t i = 0; i < support.size(); ++i) {
    const double m = support[i];
    s += p[i] * Eigen::Vector3d(1.0, m, m * m);
  }
  return s;
}

std::optional<std::vector<double>> solve_basis(const std::vector<int>& cols, const Eigen::Vector3d& b) {
  Eigen::Matrix3d a;
  for (int j = 0; j < 3; ++j) {
    const double m = cols[static_cast<std::size_t>(j)];
    a.col(j) << 1.0, m, m * m;
  }
  const Eigen::Vector3d p = a.fullPivLu().solve(b);
  if (!p.allFinite()) return std::nullopt;
  return std::vector<double>{p(0), p(1), p(2)};
}

}  // namespace

SupportResult solve_support(int n_quanta, const std::vector<int>& support) {
  if (n_quanta < 0) throw InvalidArgument("N must be non-negative");
  if (support.empty()) throw InvalidArgument("support is empty");
  for (std::size_t i = 0; i < support.size(); ++i) {
    if (support[i] < 0 || support[i] > n_quanta)
      throw InvalidArgument("support index " + std::to_string(support[i]) + " outside 0.." + std::to_string(n_quanta));
    if (i > 0 && support[i] <= support[i - 1]) throw InvalidArgument("support must be strictly increasing");
    if (i > 0 && support[i] - support[i - 1] < 3)
      throw InvalidArgument("support indices " + std::to_string(support[i - 1]) + " and " +
                            std::to_string(support[i]) + " are closer than 3");
  }
  const Eigen::Vector3d b = targets(n_quanta);
  const std::size_t k = support.size();
  SupportResult res;
  SupportSolution sol;
  sol.n_quanta = n_quanta;
  sol.support = support;
  sol.phases.assign(k, 0.0);

  auto check_bounds = [&](const std::vector<double>& p) -> std::optional<InfeasibleSupport> {
    for (std::size_t i = 0; i < p.size(); ++i) {
      if (p[i] < -kSlack) return InfeasibleSupport{"p_" + std::to_string(support[i]) + " >= 0", p[i]};
      if (p[i] > 1.0 + kSlack) return InfeasibleSupport{"p_" + std::to_string(support[i]) + " <= 1", p[i] - 1.0};
    }
    return std::nullopt;
  };
  auto check_moments = [&](const std::vector<double>& p) -> std::optional<InfeasibleSupport> {
    const Eigen::Vector3d r = moments(support, p) - b;
    const char* names[] = {"sum p_m = 1", "sum p_m m = N/2", "sum p_m m^2 = N(2N+1)/6"};
    for (int i = 0; i < 3; ++i)
      if (std::abs(r(i)) > 1e-10 * std::max(1.0, std::abs(b(i)))) return InfeasibleSupport{names[i], r(i)};
    return std::nullopt;
  };
  auto clip = [](std::vector<double> p) {
    for (double& x : p) x = std::clamp(x, 0.0, 1.0);
    return p;
  };

  if (k <= 2) {
    std::vector<double> p;
    if (k == 1) {
      p = {1.0};
    } else {
      const double m1 = support[0], m2 = support[1];
      const double p2 = (b(1) - m1) / (m2 - m1);
      p = {1.0 - p2, p2};
    }
    if (auto bad = check_bounds(p)) {
      res.infeasible = bad;
      return res;
    }
    p = clip(p);
    if (auto bad = check_moments(p)) {
      res.infeasible = bad;
      return res;
    }
    sol.probabilities = p;
    res.solution = sol;
    return res;
  }

  if (k == 3) {
    auto p = solve_basis(support, b);
    if (!p) throw NumericFailure("support system is singular");
    if (auto bad = check_bounds(*p)) {
      res.infeasible = bad;
      return res;
    }
    sol.probabilities = clip(*p);
    res.solution = sol;
    return res;
  }

  // k >= 4: basic feasible solutions are the polytope vertices.
  sol.free_parameters = static_cast<int>(k) - 3;
  std::vector<std::size_t> idx(3);
  for (idx[0] = 0; idx[0] < k && !sol.vertices_truncated; ++idx[0])
    for (idx[1] = idx[0] + 1; idx[1] < k && !sol.vertices_truncated; ++idx[1])
      for (idx[2] = idx[1] + 1; idx[2] < k; ++idx[2]) {
        const std::vector<int> cols{support[idx[0]], support[idx[1]], support[idx[2]]};
        auto p = solve_basis(cols, b);
        if (!p || std::any_of(p->begin(), p->end(), [](double x) { return x < -kSlack; })) continue;
        std::vector<double> v(k, 0.0);
        for (int j = 0; j < 3; ++j) v[idx[static_cast<std::size_t>(j)]] = std::clamp((*p)[static_cast<std::size_t>(j)], 0.0, 1.0);
        const bool dup = std::any_of(sol.vertices.begin(), sol.vertices.end(), [&](const std::vector<double>& w) {
          for (std::size_t i = 0; i < k; ++i)
            if (std::abs(w[i] - v[i]) > 1e-12) return false;
          return true;
        });
        if (dup) continue;
        if (sol.vertices.size() == kMaxVertices) {
          sol.vertices_truncated = true;
          break;
        }
        sol.vertices.push_back(std::move(v));
      }
  if (sol.vertices.empty()) {
    res.infeasible = InfeasibleSupport{"no non-negative solution on this support", 0.0};
    return res;
  }
  std::vector<double> centre(k, 0.0);
  for (const auto& v : sol.vertices)
    for (std::size_t i = 0; i < k; ++i) centre[i] += v[i] / static_cast<double>(sol.vertices.size());
  sol.probabilities = centre;
  res.solution = sol;
  return res;
}

SpinState support_state(const SupportSolution& sol, const std::vector<double>& phases) {
  const std::vector<double>& ph = phases.empty() ? sol.phases : phases;
  if (ph.size() != sol.support.size()) throw InvalidArgument("one phase per support index expected");
  CVec amps = CVec::Zero(sol.n_quanta + 1);
  for (std::size_t i = 0; i < sol.support.size(); ++i)
    amps(sol.support[i]) = std::polar(std::sqrt(std::max(0.0, sol.probabilities[i])), ph[i]);
  return SpinState(sol.n_quanta, std::move(amps), true);
}

std::array<double, 2> psi4_interval(int n_quanta) {
  const double n = n_quanta;
  return {(8.0 + n) / (9.0 * n), (4.0 + 2.0 * n) / (9.0 * n)};
}

SpinState psi4_family(int n_quanta, double c_sq, const std::array<double, 3>& phases) {
  if (n_quanta % 4 != 0) throw InvalidArgument("four-term family needs N divisible by 4");
  if (n_quanta < 12) throw InvalidArgument("four-term family needs N >= 12");
  const auto [lo, hi] = psi4_interval(n_quanta);
  if (!(c_sq > lo && c_sq < hi))
    throw InvalidArgument("c^2 = " + std::to_string(c_sq) + " outside the open interval (" + std::to_string(lo) +
                          ", " + std::to_string(hi) + ")");
  const double n = n_quanta;
  const double a = 2.0 * (2.0 + n) / (3.0 * n);
  const double p[4] = {c_sq, a - 3.0 * c_sq, 3.0 * c_sq - (8.0 + n) / (3.0 * n), a - c_sq};
  const int m[4] = {n_quanta, 3 * n_quanta / 4, n_quanta / 2, n_quanta / 4};
  const double ph[4] = {0.0, phases[0], phases[1], phases[2]};
  CVec amps = CVec::Zero(n_quanta + 1);
  for (int i = 0; i < 4; ++i) amps(m[i]) = std::polar(std::sqrt(p[i]), ph[i]);
  return SpinState(n_quanta, std::move(amps), false, 1e-12);
}

}  // namespace rotqfi

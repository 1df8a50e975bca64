#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "rotqfi/spin_core.hpp"

namespace rotqfi {

// Probabilities p_m = |c_m|^2 on a sparse support that satisfy
//   sum p_m = 1,  sum p_m m = N/2,  sum p_m m^2 = N(2N+1)/6.
// With consecutive support indices at least 3 apart every other second-moment
// cross term vanishes, so these three equations are the whole 2-anticoherence
// condition and the phases are free.
struct SupportSolution {
  int n_quanta = 0;
  std::vector<int> support;
  std::vector<double> probabilities;  // a feasible point (interior point for |support| >= 4)
  int free_parameters = 0;
  std::vector<double> phases;  // default 0
  // |support| >= 4: vertices of the feasible polytope, capped at 64.
  std::vector<std::vector<double>> vertices;
  bool vertices_truncated = false;
};

// Why a support admits no solution.
struct InfeasibleSupport {
  std::string constraint;  // which equation or bound fails
  double residual = 0.0;
};

struct SupportResult {
  std::optional<SupportSolution> solution;
  std::optional<InfeasibleSupport> infeasible;
  bool feasible() const { return solution.has_value(); }
};

// Throws InvalidArgument when the support is unsorted, out of range, or has a
// gap below 3.
SupportResult solve_support(int n_quanta, const std::vector<int>& support);

// Lift a solution to a state with the given phases (default: solution.phases).
SpinState support_state(const SupportSolution& sol, const std::vector<double>& phases = {});

// Open interval of admissible c^2 for the four-term family.
std::array<double, 2> psi4_interval(int n_quanta);

// Four-term 2-anticoherent family on m = N, 3N/4, N/2, N/4 with squared moduli
//   c^2, 2(2+N)/(3N) - 3c^2, 3c^2 - (8+N)/(3N), 2(2+N)/(3N) - c^2
// and phases (0, phi1, phi2, phi3). Requires N % 4 == 0, N >= 12 and c^2
// strictly inside psi4_interval(N).
SpinState psi4_family(int n_quanta, double c_sq, const std::array<double, 3>& phases = {0.0, 0.0, 0.0});

}  // namespace rotqfi

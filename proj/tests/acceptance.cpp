// Acceptance checks. Prints one PASS/FAIL line per criterion, preceded by
// indented detail lines. Arguments select criteria by number (default: all).
// Exit status is 1 when any selected criterion fails.

#include <sys/wait.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <limits>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "rotqfi/anticoherence.hpp"
#include "rotqfi/baselines.hpp"
#include "rotqfi/designer.hpp"
#include "rotqfi/errors.hpp"
#include "rotqfi/io.hpp"
#include "rotqfi/majorana.hpp"
#include "rotqfi/polyhedra.hpp"
#include "rotqfi/qfim.hpp"
#include "rotqfi/scan.hpp"

using namespace rotqfi;
namespace fs = std::filesystem;

namespace {

std::string sci(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", x);
  return buf;
}

void detail(const std::string& s) { std::cout << "    " << s << "\n"; }

CVec random_amplitudes(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  CVec v(n + 1);
  for (int m = 0; m <= n; ++m) v(m) = cplx(g(rng), g(rng));
  return v.normalized();
}

Vec3 random_axis(std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  return Vec3(g(rng), g(rng), g(rng)).normalized();
}

SpinState tetrahedron_state() { return constellation_to_state(platonic(Solid::Tetrahedron)); }

SpinState composite_state() {
  return constellation_to_state(
      compose({{platonic(Solid::Tetrahedron), 1}, {dual(Solid::Tetrahedron), 1}, {truncated_tetrahedron(), 1}}));
}

struct Named {
  std::string name;
  SpinState state;
};

std::vector<Named> anticoherent_states() {
  return {{"tetrahedron N=4", tetrahedron_state()},
          {"three-solid composition N=20", composite_state()},
          {"four-term family N=12, c^2=2/9", psi4_family(12, 2.0 / 9.0)}};
}

// 1
bool closed_form() {
  std::mt19937_64 rng(1001);
  std::uniform_real_distribution<double> az(0.0, 2.0 * kPi), pol(0.0, kPi);
  bool ok = true;
  for (const auto& [name, s] : anticoherent_states()) {
    double worst = 0.0;
    for (int k = 0; k < 200; ++k) {
      const double phi = az(rng), theta = pol(rng), psi = az(rng);
      const Mat3 d = qfim(s, RotationSpec::zyz(phi, theta, psi)).matrix -
                     anticoherent_qfim_closed_form(s.n_quanta(), theta);
      worst = std::max(worst, d.cwiseAbs().maxCoeff());
    }
    detail(name + ": max entry deviation " + sci(worst) + " over 200 angle triples (tol 1e-7)");
    ok = ok && worst < 1e-7;
  }
  return ok;
}

ScanGrid theta_sweep(int count) {
  return {{AxisRange::fixed(0.3), AxisRange{0.1, 3.04, count}, AxisRange::fixed(0.9)}};
}

// 2
bool trace_bound_sweep() {
  bool ok = true;
  for (const auto& [name, s] : anticoherent_states()) {
    const int order = anticoherence_order(s).order;
    double worst = 0.0;
    bool missing = false;
    for (const auto& r : singularity_scan(s, RotationKind::EulerZYZ, theta_sweep(60))) {
      if (!r.trace_inv) {
        missing = true;
        continue;
      }
      const double want = trace_bound(s.n_quanta(), r.angles[1]);
      worst = std::max(worst, std::abs(*r.trace_inv - want) / want);
    }
    detail(name + ": order " + std::to_string(order) + ", max relative deviation " + sci(worst) +
           " over 60 angles in [0.1, 3.04] (tol 1e-6)" + (missing ? ", singular rows present" : ""));
    ok = ok && order >= 2 && !missing && worst < 1e-6;
  }
  const QfimReport r = crb(qfim(tetrahedron_state(), RotationSpec::zyz(0.3, kPi / 2.0, 0.9)));
  const double dev = std::abs(*r.trace_of_inverse - 0.375);
  detail("N=4, Theta=pi/2: trace of inverse " + format_number(*r.trace_of_inverse) + ", deviation " + sci(dev) +
         " (tol 1e-9)");
  return ok && dev < 1e-9;
}

double xyz_curve(double alpha, double beta) {
  const double s = std::sin(beta / 2.0);
  return std::sin(2.0 * alpha) * s * s - std::cos(beta);
}

// True when the curve sin(2a) = cos(b)/sin^2(b/2) meets the box of half-widths da, db around (a, b).
bool near_curve(double a, double b, double da, double db) {
  double lo = std::numeric_limits<double>::infinity(), hi = -lo;
  for (int i = -20; i <= 20; ++i)
    for (int j = -20; j <= 20; ++j) {
      const double f = xyz_curve(a + da * i / 20.0, b + db * j / 20.0);
      lo = std::min(lo, f);
      hi = std::max(hi, f);
    }
  return lo <= 0.0 && hi >= 0.0;
}

// 3
bool singularity_structure() {
  bool ok = true;
  for (const auto& [name, s] : anticoherent_states()) {
    const auto rows = singularity_scan(s, RotationKind::EulerZYZ, theta_sweep(60));
    double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
    for (const auto& r : rows) {
      const double v = r.det / std::pow(std::sin(r.angles[1]), 2);
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    const double spread = (hi - lo) / hi;
    detail("zyz " + name + ": det/sin^2(Theta) relative spread " + sci(spread) + " (tol 1e-6)");
    ok = ok && spread < 1e-6;
  }

  // xyz: locate determinant zeros on an (alpha, beta) grid.
  const SpinState t = tetrahedron_state();
  const int na = 73, nb = 73;
  const ScanGrid g{{AxisRange{0.0, kPi, na}, AxisRange{0.0, kPi, nb}, AxisRange::fixed(0.4)}};
  const auto rows = singularity_scan(t, RotationKind::EulerXYZ, g);
  const auto mins = locate_det_minima(rows, g, 1, 1e-3);
  const double da = g.axes[0].step(), db = g.axes[1].step();
  int on_curve = 0, near_half = 0;
  for (const auto& m : mins) {
    if (near_curve(m.angles[0], m.angles[1], da, db)) ++on_curve;
    if (std::abs(m.angles[1] - kPi / 2.0) <= db) ++near_half;
  }
  const bool xyz_ok = !mins.empty() && on_curve == static_cast<int>(mins.size());
  detail("xyz tetrahedron: " + std::to_string(mins.size()) + " determinant zeros on a " + std::to_string(na) + "x" +
         std::to_string(nb) + " grid; " + std::to_string(on_curve) +
         " within one grid step of sin(2a) = cos(b)/sin^2(b/2)");
  detail("xyz tetrahedron: " + std::to_string(near_half) + " of them within one grid step of beta = pi/2");
  double curve_det = 0.0;
  const double a0 = 0.3;
  {
    // a point on the curve: solve sin(2a) sin^2(b/2) = cos b for b at a = 0.3
    double lo = 0.0, hi = kPi;
    for (int i = 0; i < 200; ++i) {
      const double mid = 0.5 * (lo + hi);
      (xyz_curve(a0, lo) * xyz_curve(a0, mid) <= 0.0 ? hi : lo) = mid;
    }
    const Mat3 info = qfim(t, RotationSpec::xyz(a0, lo, 0.4)).matrix;
    curve_det = info.determinant() / std::pow(info.trace() / 3.0, 3);
    detail("xyz tetrahedron: relative det at (a, b) = (0.3, " + format_number(lo) + ") on the curve: " +
           sci(curve_det) + "; at beta = pi/2: " +
           sci(qfim(t, RotationSpec::xyz(a0, kPi / 2.0, 0.4)).matrix.determinant()));
  }
  ok = ok && xyz_ok;

  // axis-angle: det -> 0 as chi -> 0.
  double prev = std::numeric_limits<double>::infinity();
  bool monotone = true;
  std::string trail;
  for (double chi : {1.0, 1e-1, 1e-2, 1e-3}) {
    const double d = qfim(t, RotationSpec::axis_angle(chi, 1.0, 0.4)).matrix.determinant();
    monotone = monotone && d < prev;
    prev = d;
    trail += " " + sci(d);
  }
  const double d1 = qfim(t, RotationSpec::axis_angle(1.0, 1.0, 0.4)).matrix.determinant();
  const bool at_zero = is_singular(qfim(t, RotationSpec::axis_angle(0.0, 1.0, 0.4)).matrix);
  detail("axis-angle tetrahedron: det at chi = 1, 1e-1, 1e-2, 1e-3:" + trail + "; singular at chi = 0: " +
         (at_zero ? "yes" : "no"));
  ok = ok && monotone && prev < 1e-6 * d1 && at_zero;
  return ok;
}

// 4
bool noon_law() {
  std::mt19937_64 rng(1004);
  bool ok = true;
  for (int n : {2, 4, 8, 12}) {
    const SpinState s = noon_state(n);
    double worst = 0.0, worst_proj = 0.0;
    for (int k = 0; k < 50; ++k) {
      const Vec3 ax = random_axis(rng);
      const double c2 = ax.z() * ax.z();
      const double law = n * n * c2 + n * (1.0 - c2);
      const double v = single_param_qfi(s, ax);
      worst = std::max(worst, std::abs(v - law));
      worst_proj = std::max(worst_proj, std::abs(projection_variance(s, ax, 1e-3) * v - 1.0));
    }
    detail("N=" + std::to_string(n) + ": max |4Var - law| " + sci(worst) +
           " (tol 1e-9); projection estimator max relative deviation " + sci(worst_proj) + " (tol 1e-4)");
    ok = ok && worst < 1e-9 && worst_proj < 1e-4;
  }
  return ok;
}

// 5
bool three_noon() {
  std::mt19937_64 rng(1005);
  std::uniform_real_distribution<double> u(-kPi, kPi);
  bool ok = true;
  for (int n : {4, 6, 9, 12}) {
    double worst = 0.0;
    for (int k = 0; k < 100; ++k) {
      const double a = u(rng), b = u(rng), phi = u(rng), theta = u(rng);
      for (auto w : {EulerGenerator::Phi, EulerGenerator::Theta, EulerGenerator::Psi})
        worst = std::max(worst, std::abs(rotated_noon_h_variance(n, a, b, w, phi, theta) -
                                         rotated_noon_h_variance_closed(n, a, b, w, phi, theta)));
    }
    detail("N=" + std::to_string(n) + ": max deviation over 100 samples x 3 generators " + sci(worst) +
           " (tol 1e-9)");
    ok = ok && worst < 1e-9;
  }
  for (int n : {6, 12, 30}) {
    const double dev = std::abs(advantage_ratio(n) - (3.0 + 6.0 / n));
    detail("advantage ratio N=" + std::to_string(n) + ": " + format_number(advantage_ratio(n)) + ", deviation " +
           sci(dev) + " (tol 1e-12)");
    ok = ok && dev < 1e-12;
  }
  return ok;
}

// 6
bool two_symmetries() {
  std::mt19937_64 rng(1006);
  const GroupName names[] = {GroupName::T, GroupName::O, GroupName::I};
  const RotationGroup groups[] = {rotation_group(GroupName::T), rotation_group(GroupName::O),
                                  rotation_group(GroupName::I)};
  int certified = 0, confirmed = 0, cases = 0;
  double worst_vec = 0.0, worst_ten = 0.0;
  for (int k = 0; k < 50; ++k) {
    const std::size_t gi = static_cast<std::size_t>(k % 3);
    const Constellation base = orbit(groups[gi], random_axis(rng));
    for (int m = 1; m <= 3; ++m) {
      Constellation c = base;
      for (auto& p : c.points) p.multiplicity = m;
      const SpinState s = constellation_to_state(c);
      const auto [a, b] = independent_symmetries(groups[gi]);
      const auto cert = certify_two_symmetries(s, a.chi, a.axis, b.chi, b.axis);
      ++cases;
      if (!cert.verdict) continue;
      ++certified;
      const MomentReport rep = anticoherence_order(s, 2, 1e-8);
      const int n = s.n_quanta();
      const double c2 = n * (n + 2.0) / 12.0;
      const double vec = rep.stokes_vector.norm();
      const double ten = (rep.stokes_tensor - c2 * CMat3::Identity()).cwiseAbs().maxCoeff() / std::max(1.0, c2);
      worst_vec = std::max(worst_vec, vec);
      worst_ten = std::max(worst_ten, ten);
      if (rep.order >= 2 && vec < 1e-8 && ten < 1e-8) ++confirmed;
    }
    (void)names;
  }
  detail(std::to_string(certified) + " of " + std::to_string(cases) +
         " orbit states certified (50 seeds, multiplicities 1..3); " + std::to_string(confirmed) +
         " confirmed order >= 2");
  detail("max |S| " + sci(worst_vec) + ", max |S2 - N(N+2)/12 I| / max(1, N(N+2)/12) " + sci(worst_ten) +
         " (tol 1e-8)");
  bool ok = certified == cases && confirmed == certified;

  for (int n : {3, 4, 5, 6, 8, 12}) {
    const SpinState s = noon_state(n);
    const auto cert = certify_two_symmetries(s, 2.0 * kPi / n, Vec3::UnitZ(), kPi, Vec3::UnitX());
    const bool pi_excluded = std::any_of(cert.reasons.begin(), cert.reasons.end(),
                                         [](const std::string& r) { return r.find("angle is pi") != std::string::npos; });
    const int order = anticoherence_order(s).order;
    detail("NOON N=" + std::to_string(n) + ": verdict " + (cert.verdict ? "true" : "false") + ", residuals " +
           sci(cert.residuals[0]) + " " + sci(cert.residuals[1]) + ", pi exclusion " +
           (pi_excluded ? "applied" : "not applied") + ", order " + std::to_string(order));
    ok = ok && !cert.verdict && pi_excluded && order == 1;
  }
  return ok;
}

// 7
bool majorana_roundtrip() {
  std::mt19937_64 rng(1007);
  std::uniform_int_distribution<int> mult(1, 3), total(1, 20);
  double worst = 0.0;
  bool mult_ok = true;
  for (int k = 0; k < 200; ++k) {
    const int target = total(rng);
    Constellation c;
    int n = 0;
    while (n < target) {
      const int m = std::min(mult(rng), target - n);
      const Vec3 d = random_axis(rng);
      bool far = true;
      for (const auto& p : c.points) far = far && angular_distance(p.direction(), d) > 1e-2;
      if (!far) continue;
      c.points.push_back(MajoranaPoint::from_direction(d, m));
      n += m;
    }
    const Constellation back = state_to_constellation(constellation_to_state(c));
    if (back.points.size() != c.points.size() || back.total() != c.total()) {
      mult_ok = false;
      continue;
    }
    std::vector<bool> used(back.points.size(), false);
    for (const auto& p : c.points) {
      double best = std::numeric_limits<double>::infinity();
      std::size_t at = 0;
      for (std::size_t j = 0; j < back.points.size(); ++j) {
        const double d = angular_distance(p.direction(), back.points[j].direction());
        if (!used[j] && d < best) {
          best = d;
          at = j;
        }
      }
      used[at] = true;
      mult_ok = mult_ok && back.points[at].multiplicity == p.multiplicity;
      worst = std::max(worst, best);
    }
  }
  detail("200 random constellations: max angular error " + sci(worst) + " rad (tol 1e-6), multiplicities " +
         (mult_ok ? "exact" : "mismatched"));
  const Constellation tet = state_to_constellation(tetrahedron_state());
  double sep = 0.0;
  for (std::size_t i = 0; i < tet.points.size(); ++i)
    for (std::size_t j = i + 1; j < tet.points.size(); ++j)
      sep = std::max(sep, std::abs(angular_distance(tet.points[i].direction(), tet.points[j].direction()) -
                                   std::acos(-1.0 / 3.0)));
  detail("tetrahedron state: " + std::to_string(tet.points.size()) + " points, max separation error " + sci(sep) +
         " (tol 1e-8)");
  return worst < 1e-6 && mult_ok && tet.points.size() == 4 && sep < 1e-8;
}

// 8
bool designer() {
  bool ok = true;
  const SupportResult r = solve_support(4, {1, 4});
  double dev = std::numeric_limits<double>::infinity();
  if (r.feasible())
    dev = std::max(std::abs(r.solution->probabilities[0] - 2.0 / 3.0),
                   std::abs(r.solution->probabilities[1] - 1.0 / 3.0));
  detail("solve_support(4, {1, 4}): deviation from (2/3, 1/3) " + sci(dev) + " (tol 1e-12)");
  ok = ok && dev < 1e-12;
  for (int n : {12, 16, 20}) {
    const auto [lo, hi] = psi4_interval(n);
    const double want = n * (n + 2.0) / 12.0;
    int certified = 0;
    double worst = 0.0;
    for (int k = 1; k <= 5; ++k) {
      const double c2 = lo + (hi - lo) * k / 6.0;
      const SpinState s = psi4_family(n, c2, {0.3 * k, -0.7 * k, 1.1});
      const MomentReport m = anticoherence_order(s);
      if (m.order == 2) ++certified;
      worst = std::max(worst, std::abs(m.stokes_tensor(2, 2).real() - want));
    }
    int rejected = 0;
    for (double c2 : {lo, hi, lo - 0.01, hi + 0.01, 0.0, 1.0}) {
      try {
        psi4_family(n, c2);
      } catch (const InvalidArgument&) {
        ++rejected;
      }
    }
    detail("N=" + std::to_string(n) + ": " + std::to_string(certified) + "/5 interior members of order 2, max |<Sz^2> - " +
           format_number(want) + "| " + sci(worst) + ", " + std::to_string(rejected) + "/6 out-of-interval values rejected");
    ok = ok && certified == 5 && worst < 1e-10 && rejected == 6;
  }
  return ok;
}

// 9
bool oracle_equivalence() {
  std::mt19937_64 rng(1009);
  std::uniform_int_distribution<int> nd(1, 20), kd(0, 2);
  std::uniform_real_distribution<double> u(-kPi, kPi);
  double worst = 0.0;
  for (int k = 0; k < 100; ++k) {
    const int n = nd(rng);
    const SpinState s(n, random_amplitudes(n, rng));
    const RotationSpec spec{static_cast<RotationKind>(kd(rng)), {u(rng), u(rng), u(rng)}};
    worst = std::max(worst, (qfim_covariance(s, spec) - qfim_sld(s, spec)).cwiseAbs().maxCoeff());
  }
  detail("100 random states and angles, N <= 20, all parametrizations: max entry deviation " + sci(worst) +
         " (tol 1e-8)");
  return worst < 1e-8;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

// 10
bool determinism() {
  const fs::path dir = fs::temp_directory_path() / ("rotqfi_acceptance_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  const std::string cli = ROTQFI_CLI;
  auto run = [&](const std::string& args, const std::string& tag) {
    const fs::path out = dir / (tag + ".out");
    const std::string cmd = "cd '" + dir.string() + "' && '" + cli + "' " + args + " > '" + out.string() + "' 2>&1";
    const int status = std::system(cmd.c_str());
    return std::make_pair(WIFEXITED(status) ? WEXITSTATUS(status) : -1, slurp(out));
  };
  const std::vector<std::string> commands{
      "state --solid tetrahedron,dual-tetrahedron,truncated-tetrahedron -o mix.json",
      "state --psi4 12 --csq 0.2222 --phases 0.1,0.2,0.3 -o psi4.json",
      "qfim --state mix.json --angles 0.3,1.2,0.9",
      "qfim --state psi4.json --param axis-angle --angles 0.5,1,2",
      "sweep --state mix.json --param xyz --grid 0:3.1416:9,0:3.1416:9,0.4",
      "check --state mix.json --tmax 4",
      "majorana --input psi4.json",
      "compare --n 12 --theta1 0.2 --theta2 0.4",
      "solve --n 12 --support 3,6,9,12"};
  bool ok = true;
  for (std::size_t i = 0; i < commands.size(); ++i) {
    const auto a = run(commands[i], "a" + std::to_string(i));
    std::string file_a;
    if (commands[i].find(" -o ") != std::string::npos) file_a = slurp(dir / commands[i].substr(commands[i].rfind(' ') + 1));
    const auto b = run(commands[i], "b" + std::to_string(i));
    std::string file_b;
    if (commands[i].find(" -o ") != std::string::npos) file_b = slurp(dir / commands[i].substr(commands[i].rfind(' ') + 1));
    const bool same = a.first == 0 && b.first == 0 && a.second == b.second && file_a == file_b;
    detail(std::string(same ? "identical" : "DIFFERENT") + ": rotqfi " + commands[i]);
    ok = ok && same;
  }
  fs::remove_all(dir);
  return ok;
}

struct Criterion {
  int id;
  const char* title;
  std::function<bool()> run;
};

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> all{
      {1, "QFIM closed form for 2-anticoherent states", closed_form},
      {2, "trace of the inverse QFIM follows 3/(N(N+2))(1 + 2/sin^2 Theta)", trace_bound_sweep},
      {3, "singularity structure of the zyz, xyz and axis-angle charts", singularity_structure},
      {4, "NOON single-parameter law and projection estimator", noon_law},
      {5, "rotated NOON variances and the advantage ratio", three_noon},
      {6, "two-symmetry certificate implies 2-anticoherence", two_symmetries},
      {7, "Majorana roundtrip", majorana_roundtrip},
      {8, "support solver and four-term family", designer},
      {9, "covariance and SLD constructions agree", oracle_equivalence},
      {10, "CLI output is deterministic", determinism},
  };
  std::set<int> wanted;
  for (int i = 1; i < argc; ++i) wanted.insert(std::atoi(argv[i]));
  int failures = 0;
  for (const auto& c : all) {
    if (!wanted.empty() && !wanted.count(c.id)) continue;
    bool pass = false;
    try {
      pass = c.run();
    } catch (const std::exception& e) {
      detail(std::string("exception: ") + e.what());
    }
    std::cout << (pass ? "PASS" : "FAIL") << " " << c.id << ": " << c.title << "\n" << std::flush;
    failures += pass ? 0 : 1;
  }
  return failures == 0 ? 0 : 1;
}

#include <cmath>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
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

namespace {

struct Options {
  bool degrees = false;
  std::string out;

  // state
  std::string coeffs;
  bool normalize = false;
  std::string constellation_file;
  std::string solid;
  int psi4 = 0;
  double csq = 0.0;
  std::string phases;
  int noon = 0;

  // qfim / sweep / check / majorana
  std::string state_file;
  std::string param = "zyz";
  std::string angles;
  bool cross_check = false;
  std::string grid;
  int threads = 0;
  int tmax = 2;
  double tol = 1e-8;
  std::uint64_t seed = 0;
  std::string input;
  std::string direction = "to-points";

  // compare / solve
  int n = 0;
  double theta1 = 0.0, theta2 = 0.0, big_theta = kPi / 2.0;
  std::string support;
};

double angle_scale(const Options& o) { return o.degrees ? kPi / 180.0 : 1.0; }

std::string dump(const json& j) { return j.dump(2) + "\n"; }

SpinState load_state(const std::string& path) { return state_from_json(read_json_file(path)); }

cplx parse_coeff(std::string_view s) {
  const auto colon = s.find(':');
  if (colon == std::string_view::npos) return parse_list(s).at(0);
  return {parse_list(s.substr(0, colon)).at(0), parse_list(s.substr(colon + 1)).at(0)};
}

SpinState state_from_coeffs(const Options& o) {
  std::vector<cplx> amps;
  std::string_view rest = o.coeffs;
  while (true) {
    const auto comma = rest.find(',');
    amps.push_back(parse_coeff(rest.substr(0, comma)));
    if (comma == std::string_view::npos) break;
    rest.remove_prefix(comma + 1);
  }
  if (amps.size() < 2) throw InvalidArgument("--coeffs needs at least two amplitudes");
  return make_state(static_cast<int>(amps.size()) - 1, amps, o.normalize);
}

SpinState state_from_solids(const std::string& spec, std::vector<std::string>& log) {
  std::vector<Part> parts;
  std::string_view rest = spec;
  while (true) {
    const auto comma = rest.find(',');
    std::string_view item = rest.substr(0, comma);
    int mult = 1;
    if (const auto colon = item.find(':'); colon != std::string_view::npos) {
      mult = parse_int_list(item.substr(colon + 1)).at(0);
      item = item.substr(0, colon);
    }
    parts.push_back({catalog(item), mult});
    if (comma == std::string_view::npos) break;
    rest.remove_prefix(comma + 1);
  }
  return constellation_to_state(compose(parts, &log));
}

int cmd_state(const Options& o) {
  const int sources = !o.coeffs.empty() + !o.constellation_file.empty() + !o.solid.empty() + (o.psi4 != 0) +
                      (o.noon != 0);
  if (sources != 1)
    throw InvalidArgument("give exactly one of --coeffs, --constellation, --solid, --psi4, --noon");
  std::vector<std::string> log;
  std::optional<SpinState> state;
  if (!o.coeffs.empty()) {
    state = state_from_coeffs(o);
  } else if (!o.constellation_file.empty()) {
    state = constellation_to_state(constellation_from_json(read_json_file(o.constellation_file)));
  } else if (!o.solid.empty()) {
    state = state_from_solids(o.solid, log);
  } else if (o.psi4 != 0) {
    std::array<double, 3> ph{0.0, 0.0, 0.0};
    if (!o.phases.empty()) {
      const auto v = parse_list(o.phases, angle_scale(o));
      if (v.size() != 3) throw InvalidArgument("--phases needs three values");
      ph = {v[0], v[1], v[2]};
    }
    state = psi4_family(o.psi4, o.csq, ph);
  } else {
    state = noon_state(o.noon);
  }
  for (const auto& line : log) std::cerr << "note: " << line << "\n";
  const MomentReport rep = anticoherence_order(*state);
  write_text(o.out, dump(to_json(*state)));
  std::ostream& summary = (o.out.empty() || o.out == "-") ? std::cerr : std::cout;
  summary << "N=" << state->n_quanta() << " norm=" << format_number(state->amplitudes().norm())
          << " order=" << rep.order << "\n";
  return 0;
}

RotationSpec spec_from(const Options& o) {
  const auto v = parse_list(o.angles, angle_scale(o));
  if (v.size() != 3) throw InvalidArgument("--angles needs three comma-separated values");
  RotationSpec spec{parse_rotation_kind(o.param), {v[0], v[1], v[2]}};
  spec.validate();
  return spec;
}

int cmd_qfim(const Options& o) {
  const SpinState state = load_state(o.state_file);
  QfimOptions opts;
  opts.cross_check = o.cross_check;
  QfimReport rep = qfim(state, spec_from(o), opts, o.state_file);
  const bool singular = is_singular(rep.matrix);
  if (!singular) rep = crb(rep);
  write_text(o.out, dump(to_json(rep, singular)));
  return 0;
}

int cmd_sweep(const Options& o) {
  const SpinState state = load_state(o.state_file);
  const ScanGrid grid = parse_grid(o.grid, angle_scale(o));
  const auto rows = singularity_scan(state, parse_rotation_kind(o.param), grid, 1e-12, o.threads);
  write_text(o.out, scan_csv(rows));
  return 0;
}

int cmd_check(const Options& o) {
  const SpinState state = load_state(o.state_file);
  write_text(o.out, dump(to_json(anticoherence_order(state, o.tmax, o.tol, o.seed))));
  return 0;
}

int cmd_majorana(const Options& o) {
  const json in = read_json_file(o.input);
  if (o.direction == "to-points") {
    write_text(o.out, dump(to_json(state_to_constellation(state_from_json(in)))));
  } else if (o.direction == "to-state") {
    write_text(o.out, dump(to_json(constellation_to_state(constellation_from_json(in)))));
  } else {
    throw InvalidArgument("--direction must be to-points or to-state");
  }
  return 0;
}

int cmd_compare(const Options& o) {
  const double s = angle_scale(o);
  const auto rows = comparison_rows(o.n, o.theta1 * s, o.theta2 * s, o.big_theta * s);
  if (three_noon_bound(o.n, 0.0, 0.0).small_copies)
    std::cerr << "warning: N/3 = " << o.n / 3 << " quanta per NOON copy is below 3\n";
  std::cerr << "note: shot-noise-reference is a reference value only\n";
  write_text(o.out, compare_csv(rows));
  return 0;
}

int cmd_solve(const Options& o) {
  write_text(o.out, dump(to_json(solve_support(o.n, parse_int_list(o.support)))));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multiparameter rotation sensing with anticoherent two-mode states"};
  app.require_subcommand(1);
  Options o;

  auto* state = app.add_subcommand("state", "build a state and write its JSON");
  state->add_option("--coeffs", o.coeffs, "Dicke amplitudes c_0..c_N, each re or re:im");
  state->add_flag("--normalize", o.normalize, "rescale --coeffs to unit norm");
  state->add_option("--constellation", o.constellation_file, "constellation JSON file");
  state->add_option("--solid", o.solid, "catalog entries name[:mult],...");
  state->add_option("--psi4", o.psi4, "four-term family with N quanta");
  state->add_option("--csq", o.csq, "c^2 for --psi4");
  state->add_option("--phases", o.phases, "phi1,phi2,phi3 for --psi4");
  state->add_option("--noon", o.noon, "NOON state with N quanta");

  auto* qf = app.add_subcommand("qfim", "quantum Fisher information matrix of a rotated state");
  qf->add_option("--state", o.state_file, "state JSON file")->required();
  qf->add_option("--param", o.param, "zyz, xyz or axis-angle");
  qf->add_option("--angles", o.angles, "three angles a,b,c")->required();
  qf->add_flag("--cross-check", o.cross_check, "also evaluate the SLD construction");

  auto* sweep = app.add_subcommand("sweep", "determinant and trace of the inverse over an angle grid");
  sweep->add_option("--state", o.state_file, "state JSON file")->required();
  sweep->add_option("--param", o.param, "zyz, xyz or axis-angle");
  sweep->add_option("--grid", o.grid, "three axes, each v or start:stop:count")->required();
  sweep->add_option("--threads", o.threads, "worker threads (0: OpenMP default)");

  auto* check = app.add_subcommand("check", "anticoherence order and moments");
  check->add_option("--state", o.state_file, "state JSON file")->required();
  check->add_option("--tmax", o.tmax, "highest order tested");
  check->add_option("--tol", o.tol, "tolerance");
  check->add_option("--seed", o.seed, "seed for the probe directions");

  auto* maj = app.add_subcommand("majorana", "convert between states and constellations");
  maj->add_option("--input", o.input, "state or constellation JSON file")->required();
  maj->add_option("--direction", o.direction, "to-points or to-state");

  auto* cmp = app.add_subcommand("compare", "variance bounds of the multiparameter and single-parameter schemes");
  cmp->add_option("--n", o.n, "total quanta")->required();
  cmp->add_option("--theta1", o.theta1, "misalignment of the second NOON copy");
  cmp->add_option("--theta2", o.theta2, "misalignment of the third NOON copy");
  cmp->add_option("--big-theta", o.big_theta, "middle Euler angle of the anticoherent scheme");

  auto* solve = app.add_subcommand("solve", "probabilities on a sparse support");
  solve->add_option("--n", o.n, "total quanta")->required();
  solve->add_option("--support", o.support, "support indices m1,m2,...")->required();

  for (auto* sub : {state, qf, sweep, check, maj, cmp, solve}) {
    sub->add_option("-o,--output", o.out, "output path (default stdout)");
    sub->add_flag("--degrees", o.degrees, "angles are given in degrees");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*state) return cmd_state(o);
    if (*qf) return cmd_qfim(o);
    if (*sweep) return cmd_sweep(o);
    if (*check) return cmd_check(o);
    if (*maj) return cmd_majorana(o);
    if (*cmp) return cmd_compare(o);
    if (*solve) return cmd_solve(o);
  } catch (const InvalidArgument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const NumericFailure& e) {
    std::cerr << "numeric failure: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "numeric failure: " << e.what() << "\n";
    return 3;
  }
  return 2;
}

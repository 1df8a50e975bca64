#include "rotqfi/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include "rotqfi/errors.hpp"

namespace rotqfi {

namespace {

json matrix_json(const Mat3& m) {
  json out = json::array();
  for (int i = 0; i < 3; ++i) out.push_back({m(i, 0), m(i, 1), m(i, 2)});
  return out;
}

json finite_or_null(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = s.find(sep, start);
    out.push_back(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

template <class T>
T parse_number(std::string_view raw) {
  const std::string_view s = trim(raw);
  T v{};
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size())
    throw InvalidArgument("cannot parse number '" + std::string(raw) + "'");
  return v;
}

template <class T>
T field(const json& j, const char* key) {
  if (!j.contains(key)) throw InvalidArgument(std::string("missing field '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    throw InvalidArgument(std::string("field '") + key + "' has the wrong type");
  }
}

}  // namespace

json to_json(const SpinState& state) {
  json amps = json::array();
  for (int m = 0; m <= state.n_quanta(); ++m) amps.push_back({state[m].real(), state[m].imag()});
  return {{"n", state.n_quanta()}, {"amplitudes", amps}};
}

SpinState state_from_json(const json& j) {
  const int n = field<int>(j, "n");
  const auto amps = field<std::vector<std::vector<double>>>(j, "amplitudes");
  CVec v(static_cast<Eigen::Index>(amps.size()));
  for (std::size_t m = 0; m < amps.size(); ++m) {
    if (amps[m].size() != 2) throw InvalidArgument("amplitude " + std::to_string(m) + " is not a [re, im] pair");
    v(static_cast<Eigen::Index>(m)) = cplx(amps[m][0], amps[m][1]);
  }
  return SpinState(n, std::move(v));
}

json to_json(const Constellation& c) {
  json pts = json::array();
  for (const auto& p : c.points) pts.push_back({{"theta", p.theta}, {"phi", p.phi}, {"mult", p.multiplicity}});
  return {{"points", pts}};
}

Constellation constellation_from_json(const json& j) {
  if (!j.contains("points") || !j.at("points").is_array()) throw InvalidArgument("missing 'points' array");
  Constellation c;
  for (const auto& p : j.at("points")) {
    MajoranaPoint pt{field<double>(p, "theta"), field<double>(p, "phi"), 1};
    if (p.contains("mult")) pt.multiplicity = field<int>(p, "mult");
    c.points.push_back(pt);
  }
  c.validate();
  return c;
}

json to_json(const MomentReport& r) {
  json re = json::array(), im = json::array();
  for (int i = 0; i < 3; ++i) {
    re.push_back({r.stokes_tensor(i, 0).real(), r.stokes_tensor(i, 1).real(), r.stokes_tensor(i, 2).real()});
    im.push_back({r.stokes_tensor(i, 0).imag(), r.stokes_tensor(i, 1).imag(), r.stokes_tensor(i, 2).imag()});
  }
  return {{"S", {r.stokes_vector.x(), r.stokes_vector.y(), r.stokes_vector.z()}},
          {"S2", re},
          {"S2_imag", im},
          {"order", r.order},
          {"tol", r.tolerance},
          {"t_max", r.t_max},
          {"capped", r.capped},
          {"constants", r.directional_constants}};
}

json to_json(const QfimReport& r, bool singular) {
  json out;
  out["param"] = std::string(to_string(r.spec.kind));
  out["angles"] = r.spec.params;
  if (!r.state_descriptor.empty()) out["state"] = r.state_descriptor;
  out["matrix"] = matrix_json(r.matrix);
  out["det"] = r.determinant;
  out["singular"] = singular;
  out["inverse"] = r.inverse ? matrix_json(*r.inverse) : json(nullptr);
  out["trace_of_inverse"] = r.trace_of_inverse ? json(*r.trace_of_inverse) : json(nullptr);
  out["condition_number"] = finite_or_null(r.condition_number);
  return out;
}

json to_json(const SupportSolution& s) {
  json out{{"N", s.n_quanta}, {"support", s.support}, {"p", s.probabilities}, {"free", s.free_parameters}};
  if (!s.vertices.empty()) {
    out["vertices"] = s.vertices;
    out["vertices_truncated"] = s.vertices_truncated;
  }
  return out;
}

json to_json(const SupportResult& r) {
  if (r.solution) {
    json out = to_json(*r.solution);
    out["feasible"] = true;
    return out;
  }
  json out{{"feasible", false}};
  if (r.infeasible) {
    out["constraint"] = r.infeasible->constraint;
    out["residual"] = r.infeasible->residual;
  }
  return out;
}

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 12);
  return std::string(buf, res.ptr);
}

std::string scan_csv(const std::vector<ScanRow>& rows) {
  std::string out = "angle1,angle2,angle3,det,trace_inv\n";
  for (const auto& r : rows) {
    out += format_number(r.angles[0]) + ',' + format_number(r.angles[1]) + ',' + format_number(r.angles[2]) + ',' +
           format_number(r.det) + ',' + (r.trace_inv ? format_number(*r.trace_inv) : std::string("inf")) + '\n';
  }
  return out;
}

std::string compare_csv(const std::vector<ComparisonRow>& rows) {
  std::string out = "scheme,N,angle1,angle2,bound\n";
  for (const auto& r : rows) {
    out += r.scheme + ',' + std::to_string(r.n_quanta) + ',' + format_number(r.angle1) + ',' +
           format_number(r.angle2) + ',' + format_number(r.bound) + '\n';
  }
  return out;
}

ScanGrid parse_grid(std::string_view spec, double scale) {
  const auto axes = split(spec, ',');
  if (axes.size() != 3) throw InvalidArgument("grid needs three comma-separated axes, got '" + std::string(spec) + "'");
  ScanGrid g;
  for (std::size_t i = 0; i < 3; ++i) {
    const auto parts = split(axes[i], ':');
    if (parts.size() == 1) {
      g.axes[i] = AxisRange::fixed(parse_number<double>(parts[0]) * scale);
    } else if (parts.size() == 3) {
      g.axes[i] = {parse_number<double>(parts[0]) * scale, parse_number<double>(parts[1]) * scale,
                   parse_number<int>(parts[2])};
    } else {
      throw InvalidArgument("grid axis '" + std::string(axes[i]) + "' is neither v nor start:stop:count");
    }
  }
  g.validate();
  return g;
}

std::vector<double> parse_list(std::string_view spec, double scale) {
  std::vector<double> out;
  for (auto s : split(spec, ',')) out.push_back(parse_number<double>(s) * scale);
  return out;
}

std::vector<int> parse_int_list(std::string_view spec) {
  std::vector<int> out;
  for (auto s : split(spec, ',')) out.push_back(parse_number<int>(s));
  return out;
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw InvalidArgument("'" + path + "' is not valid JSON: " + e.what());
  }
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidArgument("cannot write '" + path + "'");
  out << text;
  if (!out) throw InvalidArgument("write to '" + path + "' failed");
}

}  // namespace rotqfi

#include "rotqfi/polyhedra.hpp"

#include <algorithm>
#include <cmath>
#include <deque>

#include <Eigen/Geometry>

#include "rotqfi/errors.hpp"

namespace rotqfi {

namespace {

constexpr double kDedup = 1e-8;

std::vector<Vec3> tetrahedron_vertices() {
  const double theta = std::acos(-1.0 / 3.0);
  return {Vec3::UnitZ(), polar_axis(theta, 0.0), polar_axis(theta, 2.0 * kPi / 3.0),
          polar_axis(theta, 4.0 * kPi / 3.0)};
}

std::vector<Vec3> cube_vertices() {
  std::vector<Vec3> v;
  for (double x : {1.0, -1.0})
    for (double y : {1.0, -1.0})
      for (double z : {1.0, -1.0}) v.push_back(Vec3(x, y, z).normalized());
  return v;
}

std::vector<Vec3> octahedron_vertices() {
  return {Vec3::UnitX(), -Vec3::UnitX(), Vec3::UnitY(), -Vec3::UnitY(), Vec3::UnitZ(), -Vec3::UnitZ()};
}

std::vector<Vec3> icosahedron_vertices() {
  const double theta = std::atan(2.0);
  std::vector<Vec3> v{Vec3::UnitZ()};
  for (int k = 0; k < 5; ++k) v.push_back(polar_axis(theta, 2.0 * kPi * k / 5.0));
  for (int k = 0; k < 5; ++k) v.push_back(polar_axis(kPi - theta, 2.0 * kPi * k / 5.0 + kPi / 5.0));
  v.push_back(-Vec3::UnitZ());
  return v;
}

bool contains(const std::vector<Vec3>& pts, const Vec3& p) {
  return std::any_of(pts.begin(), pts.end(), [&](const Vec3& q) { return (q - p).norm() < kDedup; });
}

// Outward unit normals of the convex hull facets of points on the sphere.
std::vector<Vec3> face_normals(const std::vector<Vec3>& v) {
  std::vector<Vec3> normals;
  const std::size_t n = v.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (std::size_t k = j + 1; k < n; ++k) {
        Vec3 nrm = (v[j] - v[i]).cross(v[k] - v[i]);
        if (nrm.norm() < 1e-12) continue;
        nrm.normalize();
        double off = nrm.dot(v[i]);
        if (off < 0) {
          nrm = -nrm;
          off = -off;
        }
        const bool supporting =
            std::all_of(v.begin(), v.end(), [&](const Vec3& p) { return nrm.dot(p) <= off + 1e-10; });
        if (supporting && !contains(normals, nrm)) normals.push_back(nrm);
      }
  return normals;
}

std::vector<Vec3> solid_vertices(Solid s) {
  switch (s) {
    case Solid::Tetrahedron: return tetrahedron_vertices();
    case Solid::Cube: return cube_vertices();
    case Solid::Octahedron: return octahedron_vertices();
    case Solid::Icosahedron: return icosahedron_vertices();
    case Solid::Dodecahedron: return face_normals(icosahedron_vertices());
  }
  return {};
}

Constellation from_vertices(const std::vector<Vec3>& v) { return constellation_from_directions(v, kDedup); }

bool same_matrix(const Mat3& a, const Mat3& b) { return (a - b).cwiseAbs().maxCoeff() < 1e-9; }

}  // namespace

GroupName parse_group(std::string_view s) {
  if (s == "T") return GroupName::T;
  if (s == "O") return GroupName::O;
  if (s == "I") return GroupName::I;
  throw InvalidArgument("unknown rotation group '" + std::string(s) + "' (expected T, O or I)");
}

std::string_view to_string(GroupName g) {
  switch (g) {
    case GroupName::T: return "T";
    case GroupName::O: return "O";
    case GroupName::I: return "I";
  }
  return "?";
}

RotationGroup rotation_group(GroupName name) {
  std::vector<Mat3> gens;
  switch (name) {
    case GroupName::T: {
      const auto v = tetrahedron_vertices();
      gens = {rodrigues(2.0 * kPi / 3.0, v[0]), rodrigues(2.0 * kPi / 3.0, v[1])};
      break;
    }
    case GroupName::O:
      gens = {rodrigues(kPi / 2.0, Vec3::UnitZ()), rodrigues(2.0 * kPi / 3.0, Vec3(1, 1, 1).normalized())};
      break;
    case GroupName::I: {
      const auto v = icosahedron_vertices();
      gens = {rodrigues(2.0 * kPi / 5.0, v[0]), rodrigues(2.0 * kPi / 5.0, v[1])};
      break;
    }
  }
  RotationGroup g{name, {Mat3::Identity()}};
  std::deque<Mat3> frontier{Mat3::Identity()};
  while (!frontier.empty()) {
    const Mat3 cur = frontier.front();
    frontier.pop_front();
    for (const Mat3& s : gens) {
      const Mat3 next = s * cur;
      const bool seen =
          std::any_of(g.elements.begin(), g.elements.end(), [&](const Mat3& e) { return same_matrix(e, next); });
      if (!seen) {
        g.elements.push_back(next);
        frontier.push_back(next);
        if (g.elements.size() > 60) throw NumericFailure("group closure did not terminate");
      }
    }
  }
  return g;
}

Constellation orbit(const RotationGroup& group, const Vec3& seed) {
  require_unit(seed, 1e-10, "orbit seed");
  std::vector<Vec3> pts;
  for (const Mat3& r : group.elements) {
    const Vec3 p = r * seed;
    if (!contains(pts, p)) pts.push_back(p);
  }
  return from_vertices(pts);
}

Solid parse_solid(std::string_view s) {
  if (s == "tetrahedron") return Solid::Tetrahedron;
  if (s == "cube") return Solid::Cube;
  if (s == "octahedron") return Solid::Octahedron;
  if (s == "icosahedron") return Solid::Icosahedron;
  if (s == "dodecahedron") return Solid::Dodecahedron;
  throw InvalidArgument("unknown solid '" + std::string(s) + "'");
}

std::string_view to_string(Solid s) {
  switch (s) {
    case Solid::Tetrahedron: return "tetrahedron";
    case Solid::Cube: return "cube";
    case Solid::Octahedron: return "octahedron";
    case Solid::Icosahedron: return "icosahedron";
    case Solid::Dodecahedron: return "dodecahedron";
  }
  return "?";
}

GroupName symmetry_group(Solid s) {
  switch (s) {
    case Solid::Tetrahedron: return GroupName::T;
    case Solid::Cube:
    case Solid::Octahedron: return GroupName::O;
    case Solid::Icosahedron:
    case Solid::Dodecahedron: return GroupName::I;
  }
  return GroupName::T;
}

Constellation platonic(Solid s) { return from_vertices(solid_vertices(s)); }

Constellation dual(Solid s) { return from_vertices(face_normals(solid_vertices(s))); }

Constellation truncated_tetrahedron(Alignment aligned_with) {
  auto v = tetrahedron_vertices();
  if (aligned_with == Alignment::Dual)
    for (auto& p : v) p = -p;
  const Vec3 seed = (2.0 * v[0] + v[1]).normalized();
  return orbit(rotation_group(GroupName::T), seed);
}

Constellation compose(const std::vector<Part>& parts, std::vector<std::string>* log) {
  if (parts.empty()) throw InvalidArgument("nothing to compose");
  Constellation out;
  for (std::size_t pi = 0; pi < parts.size(); ++pi) {
    const Part& part = parts[pi];
    if (part.multiplicity < 1) throw InvalidArgument("part multiplicity must be at least 1");
    for (const auto& p : part.constellation.points) {
      const Vec3 d = p.direction();
      auto hit = std::find_if(out.points.begin(), out.points.end(),
                              [&](const MajoranaPoint& q) { return (q.direction() - d).norm() < kDedup; });
      const int m = p.multiplicity * part.multiplicity;
      if (hit == out.points.end()) {
        out.points.push_back({p.theta, p.phi, m});
      } else {
        hit->multiplicity += m;
        if (log)
          log->push_back("part " + std::to_string(pi) + ": point (" + std::to_string(p.theta) + ", " +
                         std::to_string(p.phi) + ") merged with an existing point");
      }
    }
  }
  return out;
}

AxisAngle axis_angle_of(const Mat3& r) {
  // For right-handed angle w about u, rodrigues(w, -u) reproduces r.
  // Eigen goes through a quaternion, which stays accurate near half turns.
  const Eigen::AngleAxisd aa(r);
  if (aa.angle() == 0.0) return {0.0, Vec3::UnitZ()};
  return {aa.angle(), -aa.axis()};
}

std::pair<AxisAngle, AxisAngle> independent_symmetries(const RotationGroup& group) {
  std::vector<AxisAngle> cands;
  for (const Mat3& r : group.elements) {
    const AxisAngle a = axis_angle_of(r);
    const double folded = std::abs(std::remainder(a.chi, 2.0 * kPi));
    if (folded > 1e-6 && std::abs(folded - kPi) > 1e-6) cands.push_back(a);
  }
  std::stable_sort(cands.begin(), cands.end(),
                   [](const AxisAngle& a, const AxisAngle& b) { return std::abs(a.chi) < std::abs(b.chi) - 1e-9; });
  for (std::size_t i = 0; i < cands.size(); ++i)
    for (std::size_t j = i + 1; j < cands.size(); ++j)
      if (cands[i].axis.cross(cands[j].axis).norm() > 1e-3) return {cands[i], cands[j]};
  throw InvalidArgument("group has no two independent non-trivial rotations");
}

std::vector<std::string> catalog_names() {
  std::vector<std::string> names;
  for (const char* s : {"tetrahedron", "cube", "octahedron", "icosahedron", "dodecahedron"}) {
    names.emplace_back(s);
    names.push_back(std::string("dual-") + s);
  }
  names.emplace_back("truncated-tetrahedron");
  names.emplace_back("truncated-dual-tetrahedron");
  return names;
}

Constellation catalog(std::string_view name) {
  if (name == "truncated-tetrahedron") return truncated_tetrahedron(Alignment::Tetrahedron);
  if (name == "truncated-dual-tetrahedron") return truncated_tetrahedron(Alignment::Dual);
  if (name.starts_with("dual-")) return dual(parse_solid(name.substr(5)));
  return platonic(parse_solid(name));
}

GroupName catalog_group(std::string_view name) {
  if (name.starts_with("truncated-")) return GroupName::T;
  if (name.starts_with("dual-")) return symmetry_group(parse_solid(name.substr(5)));
  return symmetry_group(parse_solid(name));
}

}  // namespace rotqfi

#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "rotqfi/majorana.hpp"
#include "rotqfi/spin_core.hpp"

namespace rotqfi {

// Proper rotation groups of the tetrahedron (12), octahedron/cube (24) and
// icosahedron/dodecahedron (60), each in the canonical orientation of its
// solids below.
enum class GroupName { T, O, I };

struct RotationGroup {
  GroupName name = GroupName::T;
  std::vector<Mat3> elements;
};

GroupName parse_group(std::string_view s);
std::string_view to_string(GroupName g);

RotationGroup rotation_group(GroupName name);

// Images of seed under every group element, deduplicated at chordal distance 1e-8.
Constellation orbit(const RotationGroup& group, const Vec3& seed);

// Canonical orientations:
//   tetrahedron   one vertex at theta = 0, the other three at phi = 0, 2pi/3, 4pi/3
//   cube          (+-1, +-1, +-1)/sqrt3
//   octahedron    +-x, +-y, +-z
//   icosahedron   vertices at both poles, rings at phi = 2pi k/5 and 2pi k/5 + pi/5
//   dodecahedron  face centres of that icosahedron (5-fold face axis along z)
enum class Solid { Tetrahedron, Cube, Octahedron, Icosahedron, Dodecahedron };

Solid parse_solid(std::string_view s);
std::string_view to_string(Solid s);
GroupName symmetry_group(Solid s);

Constellation platonic(Solid s);

// Normalized face centres of the solid, same orientation.
Constellation dual(Solid s);

enum class Alignment { Tetrahedron, Dual };

// T-orbit of the point one third of the way along an edge of the aligned tetrahedron.
Constellation truncated_tetrahedron(Alignment aligned_with = Alignment::Tetrahedron);

struct Part {
  Constellation constellation;
  int multiplicity = 1;
};

// Union of the parts with multiplicities applied. Points of different parts
// that coincide are merged with summed multiplicity and reported in *log.
Constellation compose(const std::vector<Part>& parts, std::vector<std::string>* log = nullptr);

// Parameters (chi, n) with rodrigues(chi, n) equal to r.
struct AxisAngle {
  double chi = 0.0;
  Vec3 axis = Vec3::UnitZ();
};
AxisAngle axis_angle_of(const Mat3& r);

// Two group elements with rotation angle outside {0, pi} about non-parallel
// axes, picked deterministically (smallest angle first).
std::pair<AxisAngle, AxisAngle> independent_symmetries(const RotationGroup& group);

// Named catalog entries accepted by the CLI: the five solids, "dual-<solid>",
// "truncated-tetrahedron" and "truncated-dual-tetrahedron".
Constellation catalog(std::string_view name);
std::vector<std::string> catalog_names();
// Group shared by a catalog entry.
GroupName catalog_group(std::string_view name);

}  // namespace rotqfi

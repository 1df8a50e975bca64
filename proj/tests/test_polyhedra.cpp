#include <cmath>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "rotqfi/anticoherence.hpp"
#include "rotqfi/errors.hpp"
#include "rotqfi/majorana.hpp"
#include "rotqfi/polyhedra.hpp"

using namespace rotqfi;

namespace {

bool same_set(const Constellation& a, const Constellation& b, double tol = 1e-9) {
  if (a.points.size() != b.points.size()) return false;
  for (const auto& p : a.points) {
    bool found = false;
    for (const auto& q : b.points)
      found = found || ((p.direction() - q.direction()).norm() < tol && p.multiplicity == q.multiplicity);
    if (!found) return false;
  }
  return true;
}

}  // namespace

TEST_SUITE("polyhedra") {
  TEST_CASE("group orders and closure") {
    const std::pair<GroupName, std::size_t> want[] = {{GroupName::T, 12}, {GroupName::O, 24}, {GroupName::I, 60}};
    for (const auto& [name, order] : want) {
      const RotationGroup g = rotation_group(name);
      CHECK(g.elements.size() == order);
      bool has_identity = false, closed = true;
      for (const Mat3& a : g.elements) {
        has_identity = has_identity || (a - Mat3::Identity()).cwiseAbs().maxCoeff() < 1e-9;
        CHECK((a.transpose() * a - Mat3::Identity()).cwiseAbs().maxCoeff() < 1e-12);
        for (const Mat3& b : {g.elements.front(), g.elements[order / 2], g.elements.back()}) {
          const Mat3 ab = a * b;
          bool in = false;
          for (const Mat3& c : g.elements) in = in || (c - ab).cwiseAbs().maxCoeff() < 1e-9;
          closed = closed && in;
        }
      }
      CHECK(has_identity);
      CHECK(closed);
    }
    CHECK(parse_group("O") == GroupName::O);
    CHECK_THROWS_AS(parse_group("D"), InvalidArgument);
  }

  TEST_CASE("orbits") {
    const Constellation tet = platonic(Solid::Tetrahedron);
    CHECK(orbit(rotation_group(GroupName::T), tet.points[2].direction()).points.size() == 4);
    std::mt19937_64 rng(83);
    const Vec3 generic = oracle::random_axis(rng);
    CHECK(orbit(rotation_group(GroupName::T), generic).points.size() == 12);
    CHECK(orbit(rotation_group(GroupName::O), Vec3::UnitZ()).points.size() == 6);
    CHECK(orbit(rotation_group(GroupName::I), generic).points.size() == 60);
    for (auto name : {GroupName::T, GroupName::O, GroupName::I}) {
      const RotationGroup g = rotation_group(name);
      for (int k = 0; k < 3; ++k) {
        const std::size_t sz = orbit(g, oracle::random_axis(rng)).points.size();
        CHECK(g.elements.size() % sz == 0);
      }
    }
    CHECK_THROWS_AS(orbit(rotation_group(GroupName::T), Vec3(1, 1, 0)), InvalidArgument);
  }

  TEST_CASE("platonic solids") {
    const std::pair<Solid, std::size_t> counts[] = {{Solid::Tetrahedron, 4},
                                                    {Solid::Cube, 8},
                                                    {Solid::Octahedron, 6},
                                                    {Solid::Icosahedron, 12},
                                                    {Solid::Dodecahedron, 20}};
    for (const auto& [s, n] : counts) {
      const Constellation c = platonic(s);
      CHECK(c.points.size() == n);
      for (const auto& p : c.points) CHECK(p.direction().norm() == doctest::Approx(1.0).epsilon(1e-12));
    }
    const Constellation tet = platonic(Solid::Tetrahedron);
    CHECK(tet.points[0].theta == 0.0);
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = i + 1; j < 4; ++j)
        CHECK(angular_distance(tet.points[i].direction(), tet.points[j].direction()) ==
              doctest::Approx(std::acos(-1.0 / 3.0)).epsilon(1e-12));
    const Constellation oct = platonic(Solid::Octahedron);
    for (const auto& p : oct.points) CHECK(p.direction().cwiseAbs().maxCoeff() == doctest::Approx(1.0));
    CHECK_THROWS_AS(parse_solid("prism"), InvalidArgument);
  }

  TEST_CASE("duals") {
    CHECK(same_set(dual(Solid::Cube), platonic(Solid::Octahedron)));
    CHECK(same_set(dual(Solid::Octahedron), platonic(Solid::Cube)));
    CHECK(same_set(dual(Solid::Icosahedron), platonic(Solid::Dodecahedron)));
    CHECK(dual(Solid::Icosahedron).points.size() == 20);
    Constellation inverted;
    for (const auto& p : platonic(Solid::Tetrahedron).points)
      inverted.points.push_back(MajoranaPoint::from_direction(-p.direction()));
    CHECK(same_set(dual(Solid::Tetrahedron), inverted));
  }

  TEST_CASE("truncated tetrahedron") {
    const Constellation t = truncated_tetrahedron();
    CHECK(t.points.size() == 12);
    CHECK(same_set(orbit(rotation_group(GroupName::T), t.points[0].direction()), t));
    const SpinState s = constellation_to_state(t);
    CHECK(symmetry_check(s, 2.0 * kPi / 3.0, platonic(Solid::Tetrahedron).points[1].direction()) < 1e-9);
    const Constellation d = truncated_tetrahedron(Alignment::Dual);
    CHECK(d.points.size() == 12);
    CHECK_FALSE(same_set(d, t));
  }

  TEST_CASE("composition") {
    std::vector<std::string> log;
    const Constellation mix = compose({{platonic(Solid::Tetrahedron), 1},
                                       {dual(Solid::Tetrahedron), 1},
                                       {truncated_tetrahedron(), 1}},
                                      &log);
    CHECK(mix.total() == 20);
    CHECK(log.empty());
    CHECK(anticoherence_order(constellation_to_state(mix)).order >= 2);

    const Constellation twice = compose({{platonic(Solid::Tetrahedron), 2}});
    CHECK(twice.total() == 8);
    const SpinState s = constellation_to_state(twice);
    CHECK(anticoherence_order(s).order >= 2);

    const Constellation co = compose({{platonic(Solid::Cube), 1}, {platonic(Solid::Octahedron), 1}});
    CHECK(co.total() == 14);
    CHECK(anticoherence_order(constellation_to_state(co)).order >= 2);

    const Constellation clash = compose({{platonic(Solid::Cube), 1}, {dual(Solid::Octahedron), 2}}, &log);
    CHECK(clash.points.size() == 8);
    CHECK(clash.total() == 24);
    CHECK(log.size() == 8);
    CHECK_THROWS_AS(compose({}), InvalidArgument);
  }

  TEST_CASE("axis-angle extraction") {
    for (const Mat3& r : rotation_group(GroupName::I).elements) {
      const AxisAngle a = axis_angle_of(r);
      CHECK((rodrigues(a.chi, a.axis) - r).cwiseAbs().maxCoeff() < 1e-9);
    }
  }

  TEST_CASE("catalog states pass the two-symmetry certificate") {
    for (const auto& name : catalog_names()) {
      CAPTURE(name);
      const SpinState s = constellation_to_state(catalog(name));
      const auto [a, b] = independent_symmetries(rotation_group(catalog_group(name)));
      const auto cert = certify_two_symmetries(s, a.chi, a.axis, b.chi, b.axis);
      CHECK(cert.verdict);
      CHECK(anticoherence_order(s).order >= 2);
    }
  }
}

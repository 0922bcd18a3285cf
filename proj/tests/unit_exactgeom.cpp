#include "doctest.h"
#include "support.hpp"

using namespace supdiff;
using testsup::PropOutcome;

namespace {

VecQ v1(const Rat& a) {
  VecQ v(1);
  v[0] = a;
  return v;
}

VecQ v2(const Rat& a, const Rat& b) {
  VecQ v(2);
  v[0] = a;
  v[1] = b;
  return v;
}

}  // namespace

TEST_CASE("rational parsing and formatting") {
  CHECK(parse_rat("3/4") == Rat(3, 4));
  CHECK(parse_rat("-6/8") == Rat(-3, 4));
  CHECK(parse_rat("5") == Rat(5));
  CHECK(format_rat(Rat(10, 4)) == "5/2");
  CHECK(format_rat(Rat(-3)) == "-3");
  CHECK_THROWS_AS(parse_rat("1/0"), parse_error);
  CHECK_THROWS_AS(parse_rat("a"), parse_error);
  CHECK_THROWS_AS(parse_rat("0.5"), parse_error);
  const VecQ p = parse_rat_csv("1,-2/3, 4");
  CHECK(p.size() == 3);
  CHECK(p[1] == Rat(-2, 3));
  CHECK(format_vec(v2(1, Rat(-1, 2))) == "(1, -1/2)");
}

TEST_CASE("unit square round-trips between representations") {
  HRep h;
  h.dim = 2;
  h.rows.push_back({v2(1, 0), 1, false});
  h.rows.push_back({v2(-1, 0), 0, false});
  h.rows.push_back({v2(0, 1), 1, false});
  h.rows.push_back({v2(0, -1), 0, false});
  const Polyhedron p = from_h(h);
  CHECK(p.v.vertices.size() == 4);
  CHECK(p.v.rays.empty());
  CHECK(p.v.lineality.empty());
  CHECK(contains(p, v2(Rat(1, 2), Rat(1, 2))));
  CHECK(!contains(p, v2(2, 0)));
  const Polyhedron q = from_v(p.v);
  CHECK(equals(p, q));
  CHECK(q.facets.rows.size() == 4);
}

TEST_CASE("lines, rays and empties survive conversion") {
  HRep strip;  // 0 <= y <= 1, x free: lineality e1
  strip.dim = 2;
  strip.rows.push_back({v2(0, 1), 1, false});
  strip.rows.push_back({v2(0, -1), 0, false});
  const Polyhedron p = from_h(strip);
  CHECK(p.v.lineality.size() == 1);
  CHECK(p.v.rays.empty());

  HRep quad;  // x >= 0, y >= 0
  quad.dim = 2;
  quad.rows.push_back({v2(-1, 0), 0, false});
  quad.rows.push_back({v2(0, -1), 0, false});
  const Polyhedron q = from_h(quad);
  CHECK(q.v.vertices.size() == 1);
  CHECK(q.v.rays.size() == 2);

  const Polyhedron e = from_h(empty_h(2));
  CHECK(e.is_empty());
  CHECK(equals(e, make_empty(2)));
  CHECK(e.v.rays.empty());

  CHECK(equals(from_h(full_space_h(2)), make_full(2)));
}

TEST_CASE("strict rows shape membership but not the closure") {
  HRep h;  // 0 < x <= 1
  h.dim = 1;
  h.rows.push_back({v1(-1), 0, true});
  h.rows.push_back({v1(1), 1, false});
  const Polyhedron p = from_h(h);
  CHECK(contains(p, v1(Rat(1, 2))));
  CHECK(!contains(p, v1(0)));
  CHECK(hrep_contains(p.h, v1(0), false));
  CHECK(p.v.vertices.size() == 2);  // closure [0, 1]
}

TEST_CASE("linear programs with exact certificates") {
  HRep h;  // 1 <= x <= 2
  h.dim = 1;
  h.rows.push_back({v1(1), 2, false});
  h.rows.push_back({v1(-1), -1, false});
  const LpResult r = lp_solve(v1(1), h, LpSense::minimize);
  REQUIRE(r.status == LpStatus::optimal);
  CHECK(r.value == 1);
  CHECK(r.point[0] == 1);

  const LpResult u = lp_solve(v1(-1), full_space_h(1), LpSense::minimize);
  CHECK(u.status == LpStatus::unbounded);
  CHECK(u.ray[0] > 0);

  HRep bad;  // x <= 0 and x >= 1
  bad.dim = 1;
  bad.rows.push_back({v1(1), 0, false});
  bad.rows.push_back({v1(-1), -1, false});
  CHECK(lp_solve(v1(1), bad, LpSense::minimize).status ==
        LpStatus::infeasible);

  CHECK(interior_point(h).has_value());
  CHECK(!interior_point(bad).has_value());
}

TEST_CASE("polyhedral operations on frozen shapes") {
  const Polyhedron seg = from_v([] {
    VRep v;
    v.dim = 1;
    v.vertices = {v1(0), v1(1)};
    return v;
  }());
  const Polyhedron sum = minkowski_sum(seg, seg);
  CHECK(sum.v.vertices.size() == 2);
  CHECK(contains(sum, v1(2)));

  const Polyhedron point = make_point(v2(1, 1));
  const Polyhedron moved = translate(point, v2(-1, 0));
  CHECK(equals(moved, make_point(v2(0, 1))));

  // polar of the [-1,1]^2 square is the unit diamond
  VRep sq;
  sq.dim = 2;
  sq.vertices = {v2(1, 1), v2(1, -1), v2(-1, 1), v2(-1, -1)};
  const Polyhedron diamond = polar(from_v(sq));
  CHECK(diamond.v.vertices.size() == 4);
  CHECK(contains(diamond, v2(Rat(1, 2), Rat(1, 2))));
  CHECK(!contains(diamond, v2(1, 1)));

  // normal cone of the quadrant at its corner
  HRep quad;
  quad.dim = 2;
  quad.rows.push_back({v2(-1, 0), 0, false});
  quad.rows.push_back({v2(0, -1), 0, false});
  const NormalConeResult n = normal_cone_rows(quad, v2(0, 0));
  CHECK(!n.outside_closure);
  CHECK(contains(n.set, v2(-1, -2)));
  CHECK(!contains(n.set, v2(1, 0)));

  const NormalConeResult inside = normal_cone_rows(quad, v2(1, 1));
  CHECK(equals(inside.set, make_point(v2(0, 0))));

  CHECK(is_subset(seg, sum));
  CHECK(!is_subset(sum, seg));
  CHECK(equals(hull_union({seg, translate(seg, v1(3))}), from_v([] {
          VRep v;
          v.dim = 1;
          v.vertices = {v1(0), v1(4)};
          return v;
        }())));
}

TEST_CASE("projection eliminates coordinates exactly") {
  HRep h;  // triangle x, y >= 0, x + y <= 1
  h.dim = 2;
  h.rows.push_back({v2(-1, 0), 0, false});
  h.rows.push_back({v2(0, -1), 0, false});
  h.rows.push_back({v2(1, 1), 1, false});
  const Polyhedron tri = from_h(h);
  const Polyhedron shadow = project(tri, {0});
  CHECK(shadow.dim == 1);
  CHECK(contains(shadow, v1(Rat(1, 2))));
  CHECK(!contains(shadow, v1(Rat(3, 2))));
  CHECK(shadow.v.vertices.size() == 2);
}

TEST_CASE("kernel properties over random instances") {
  const PropOutcome dd = testsup::prop_dd_roundtrip(101, 200);
  INFO(dd.summary());
  CHECK(dd.ok());
  const PropOutcome bi = testsup::prop_bipolar(102, 200);
  INFO(bi.summary());
  CHECK(bi.ok());
  const PropOutcome lp = testsup::prop_lp_duality(103, 200);
  INFO(lp.summary());
  CHECK(lp.ok());
  const PropOutcome mk = testsup::prop_minkowski_support(104, 200);
  INFO(mk.summary());
  CHECK(mk.ok());
}

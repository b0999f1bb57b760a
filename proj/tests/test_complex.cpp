#include <catch2/catch_amalgamated.hpp>

#include "curvedyn/builtins.hpp"
#include "curvedyn/complex.hpp"

using namespace curvedyn;

namespace {
using SSet = std::set<std::string>;
}

// Face tables below were worked out by hand from the rotation systems before
// build_topology existed; they pin the traversal orientation.

TEST_CASE("z2i complex topology") {
  PlanarComplex cx = complex_z2i();
  auto r = validate_complex(cx);
  INFO(r.joined());
  REQUIRE(r.pass());
  // A2 duplicates A3's bipartition and A3 duplicates A2's, so each alone is
  // redundant; the family still ships all three (see the arc warnings).
  REQUIRE(r.warnings.size() == 2);
  CHECK(r.warnings[0].find("A2 removable") != std::string::npos);
  CHECK(r.warnings[1].find("A3 removable") != std::string::npos);

  const Topology& t = cx.topo();
  std::vector<std::vector<int>> faces = {{0, 7, 6, 3}, {1, 9, 8}, {2, 4}, {5, 11, 10}};
  REQUIRE(t.faces == faces);
  std::vector<std::vector<std::string>> content = {{"P1"}, {"P2"}, {}, {"P3"}};
  REQUIRE(t.merged_content == content);
  CHECK(t.merged_faces.size() == 4);

  // side 0 of a cell is the face left of its end0->end1 dart
  CHECK(t.face_of_side(0, 0) == 1);
  CHECK(t.face_of_side(0, 1) == 0);
  CHECK(t.face_of_side(1, 0) == 0);
  CHECK(t.face_of_side(1, 1) == 2);
  CHECK(t.face_of_side(2, 0) == 3);
  CHECK(t.face_of_side(2, 1) == 2);

  auto s1 = separation_query(cx, "A1");
  CHECK(s1.side0 == SSet{"P2"});
  CHECK(s1.side1 == SSet{"P1", "P3"});
  CHECK(s1.on_boundary.empty());
  auto s2 = separation_query(cx, "A2");
  CHECK(s2.side0 == SSet{"P1", "P2"});
  CHECK(s2.side1 == SSet{"P3"});
  auto s3 = separation_query(cx, "A3");
  CHECK(s3.side0 == SSet{"P3"});
  CHECK(s3.side1 == SSet{"P1", "P2"});

  CHECK_THROWS_WITH(separation_query(cx, "s1"), "unknown arc s1");
}

TEST_CASE("rabbit complex topology") {
  PlanarComplex cx = complex_rabbit();
  auto r = validate_complex(cx);
  INFO(r.joined());
  REQUIRE(r.pass());
  REQUIRE(r.warnings.size() == 3);  // every B_k is individually redundant

  const Topology& t = cx.topo();
  std::vector<std::vector<int>> faces = {{0, 11, 8, 7, 4, 3}, {1, 2}, {5, 6}, {9, 10}};
  REQUIRE(t.faces == faces);
  for (auto& c : t.merged_content) CHECK(c.empty());
  CHECK(t.star.at("v0") == std::set<int>{0, 1});
  CHECK(t.star.at("v1") == std::set<int>{0, 2});
  CHECK(t.star.at("v2") == std::set<int>{0, 3});

  auto s = separation_query(cx, "B0");
  CHECK(s.on_boundary == SSet{"v0"});
  CHECK(s.side0.empty());
  CHECK(s.side1 == SSet{"v1", "v2"});
}

TEST_CASE("self_double complex topology") {
  PlanarComplex cx = complex_self_double();
  auto r = validate_complex(cx);
  INFO(r.joined());
  REQUIRE(r.pass());
  CHECK(r.warnings.empty());  // the lone arc is not redundant

  const Topology& t = cx.topo();
  std::vector<std::vector<int>> faces = {{0, 5, 4}, {1, 3, 2}};
  REQUIRE(t.faces == faces);
  std::vector<std::vector<std::string>> content = {{"b"}, {"a"}};
  REQUIRE(t.merged_content == content);

  auto s = separation_query(cx, "A");
  CHECK(s.side0 == SSet{"a"});
  CHECK(s.side1 == SSet{"b"});
}

TEST_CASE("basilica complex topology") {
  PlanarComplex cx = complex_basilica();
  auto r = validate_complex(cx);
  INFO(r.joined());
  REQUIRE(r.pass());
  CHECK(r.warnings.empty());

  const Topology& t = cx.topo();
  std::vector<std::vector<int>> faces = {{0, 3, 2}, {1, 5, 4}};
  REQUIRE(t.faces == faces);
  std::vector<std::vector<std::string>> content = {{"p0"}, {"pm1"}};
  REQUIRE(t.merged_content == content);

  auto s = separation_query(cx, "A");
  CHECK(s.side0 == SSet{"pm1"});
  CHECK(s.side1 == SSet{"p0"});

  // the leash l0 shares A's ray 1/3 and is pushed off to its minus side
  PlanarComplex bad = cx;
  bad.cells[1].pos[0].side = 0;
  auto rb = validate_complex(bad);
  REQUIRE_FALSE(rb.pass());  // 1/3 would be occupied twice at depth 0
  CHECK(rb.joined().find("collide at infinity") != std::string::npos);
}

TEST_CASE("complex validation failures") {
  SECTION("landing at unknown vertex") {
    PlanarComplex cx = complex_self_double();
    cx.cells[1].land = "zz";
    auto r = validate_complex(cx);
    REQUIRE_FALSE(r.pass());
    CHECK(r.failures[0].find("unknown vertex") != std::string::npos);
  }
  SECTION("end listed twice at infinity") {
    PlanarComplex cx = complex_self_double();
    cx.rot_inf.push_back({0, 0});
    auto r = validate_complex(cx);
    REQUIRE_FALSE(r.pass());
    CHECK(r.joined().find("not listed exactly once") != std::string::npos);
  }
  SECTION("rotation disagreeing with ray angles is rejected") {
    PlanarComplex cx = complex_z2i();
    std::swap(cx.rot_inf[0], cx.rot_inf[2]);  // A2.0 <-> A1.0
    auto r = validate_complex(cx);
    REQUIRE_FALSE(r.pass());
    CHECK(r.joined().find("does not match circle positions") != std::string::npos);
  }
  SECTION("crossing chords break the sphere") {
    PlanarComplex cx = complex_z2i();
    cx.cells[0].pos[1] = ray(3, 5);           // A1 now crosses A2
    std::swap(cx.rot_inf[4], cx.rot_inf[5]);  // keep the rotation angle-sorted
    auto r = validate_complex(cx);
    REQUIRE_FALSE(r.pass());
    CHECK(r.joined().find("Euler relation violated") != std::string::npos);
  }
  SECTION("F0 arc must map into F0") {
    PlanarComplex cx = complex_z2i();
    cx.arcs[2].maps_to = "A2";
    auto r = validate_complex(cx);
    REQUIRE_FALSE(r.pass());
    CHECK(r.joined().find("must map into F0") != std::string::npos);
  }
  SECTION("period must match the arc_map cycles") {
    PlanarComplex cx = complex_rabbit();
    cx.period = 1;
    auto r = validate_complex(cx);
    REQUIRE_FALSE(r.pass());
    CHECK(r.joined().find("period mismatch") != std::string::npos);
  }
  SECTION("leash must land at its puncture") {
    PlanarComplex cx = complex_z2i();
    cx.leash["P1"] = "s2";
    auto r = validate_complex(cx);
    REQUIRE_FALSE(r.pass());
    CHECK(r.joined().find("leash of P1") != std::string::npos);
  }
}

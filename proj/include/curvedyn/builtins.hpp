#pragma once
// Built-in example data: invariant trees and arc complexes for z^2+i, the
// rabbit, z^2-2 (one self-doubling edge) and z^2-1, plus the small trees the
// tests exercise. Ray angles are exact rationals; external angles double
// under the map, internal angles follow the basin dynamics.

#include "curvedyn/complex.hpp"
#include "curvedyn/covering.hpp"
#include "curvedyn/tree.hpp"

namespace curvedyn {

inline Ang ray(long long n, long long d, int side = 0, int depth = 0) {
  return Ang{Frac(n, d), side, depth};
}
inline Cell cell(std::string id, std::string land, Ang a, Ang b) {
  return Cell{std::move(id), std::move(land), {a, b}};
}

// z^2+i: critical orbit 0 -> i -> -1+i -> -i -> -1+i. The tree is the path
// P2(-1+i) -- P1(i) -- c0(0) -- P3(-i).
inline HubbardTree tree_z2i() {
  HubbardTree t;
  t.name = "z2i";
  t.degree = 2;
  t.vertices = {{"P1", 1, false, true},
                {"P2", 1, false, true},
                {"P3", 1, false, true},
                {"c0", 2, true, false}};
  t.edges = {{"e1", "P2", "P1"}, {"e2", "P1", "c0"}, {"e3", "c0", "P3"}};
  t.rotation = {{"P1", {"e1", "e2"}}, {"c0", {"e2", "e3"}}};
  t.vertex_map = {{"P1", "P2"}, {"P2", "P3"}, {"P3", "P2"}, {"c0", "P1"}};
  t.edge_map = {{"e1", {{"e3", true}, {"e2", true}, {"e1", true}}},
                {"e2", {{"e1", false}}},
                {"e3", {{"e1", true}}}};
  return t;
}

// Douady rabbit: critical 3-cycle v0 -> v1 -> v2 -> v0, all edges meeting at
// the fixed branch point alpha, rotated one step ccw by the map.
inline HubbardTree tree_rabbit() {
  HubbardTree t;
  t.name = "rabbit";
  t.degree = 2;
  t.vertices = {{"al", 1, false, false},
                {"v0", 2, true, true},
                {"v1", 1, false, true},
                {"v2", 1, false, true}};
  t.edges = {{"e1", "al", "v0"}, {"e2", "al", "v1"}, {"e3", "al", "v2"}};
  t.rotation = {{"al", {"e1", "e2", "e3"}}};
  t.vertex_map = {{"al", "al"}, {"v0", "v1"}, {"v1", "v2"}, {"v2", "v0"}};
  t.edge_map = {{"e1", {{"e2", false}}},
                {"e2", {{"e3", false}}},
                {"e3", {{"e1", false}}}};
  return t;
}

// z^2-2: postcritical set {-2, 2}, single edge folded over itself twice.
// The interior fold point 0 is critical but not postcritical, so it is not
// a tree vertex; validate_tree warns about the slack multiplicity budget.
inline HubbardTree tree_self_double() {
  HubbardTree t;
  t.name = "self_double";
  t.degree = 2;
  t.vertices = {{"a", 1, false, true}, {"b", 1, false, true}};
  t.edges = {{"e", "a", "b"}};
  t.vertex_map = {{"a", "b"}, {"b", "b"}};
  t.edge_map = {{"e", {{"e", true}, {"e", false}}}};
  return t;
}

// Degree-4 star: super-attracting fixed center, three leaves in a 3-cycle.
inline HubbardTree tree_star() {
  HubbardTree t;
  t.name = "star";
  t.degree = 4;
  t.vertices = {{"s0", 4, true, true},
                {"l1", 1, false, true},
                {"l2", 1, false, true},
                {"l3", 1, false, true}};
  t.edges = {{"g1", "s0", "l1"}, {"g2", "s0", "l2"}, {"g3", "s0", "l3"}};
  t.rotation = {{"s0", {"g1", "g2", "g3"}}};
  t.vertex_map = {{"s0", "s0"}, {"l1", "l2"}, {"l2", "l3"}, {"l3", "l1"}};
  t.edge_map = {{"g1", {{"g2", false}}},
                {"g2", {{"g3", false}}},
                {"g3", {{"g1", false}}}};
  return t;
}

// Two-edge example: e1 doubles over itself, e2 feeds into it (transient).
inline HubbardTree tree_transient_example() {
  HubbardTree t;
  t.name = "transient_example";
  t.degree = 2;
  t.vertices = {{"v", 2, true, true}, {"w", 1, false, false}, {"u", 1, false, false}};
  t.edges = {{"e1", "v", "w"}, {"e2", "w", "u"}};
  t.rotation = {{"w", {"e1", "e2"}}};
  t.vertex_map = {{"v", "v"}, {"w", "v"}, {"u", "w"}};
  t.edge_map = {{"e1", {{"e1", false}, {"e1", true}}}, {"e2", {{"e1", false}}}};
  return t;
}

// A homeomorphically periodic edge whose endpoints never meet a critical
// cycle. classify_edges must reject this input.
inline HubbardTree tree_no_superattracting() {
  HubbardTree t;
  t.name = "no_superattracting";
  t.degree = 2;
  t.vertices = {{"x", 1, false, true}, {"y", 1, false, true}};
  t.edges = {{"h", "x", "y"}};
  t.vertex_map = {{"x", "y"}, {"y", "x"}};
  t.edge_map = {{"h", {{"h", true}}}};
  return t;
}

// ---- arc complexes ----------------------------------------------------------

// z^2+i. Punctures P1=i, P2=-1+i, P3=-i with rays 1/6, 1/3, 2/3. The three
// arcs land on the tree at the fixed point with ray triple {1/7,2/7,4/7} and
// its iterated preimages: A1=(2/7,4/7) cuts off {P2}, A2=(15/112,65/112) and
// A3=(9/14,11/14) both cut off {P3}. Under the map A1 -> A3 -> A1 (period 2);
// A2's image separates {P1} alone and is parallel to no family arc, so A2
// stays outside F0.
inline PlanarComplex complex_z2i() {
  PlanarComplex cx;
  cx.name = "z2i";
  cx.punctures = {"P1", "P2", "P3"};
  cx.cells = {
      cell("A1", "", ray(2, 7), ray(4, 7)),
      cell("A2", "", ray(15, 112), ray(65, 112)),
      cell("A3", "", ray(9, 14), ray(11, 14)),
      cell("s1", "P1", ray(1, 6), ray(1, 6)),
      cell("s2", "P2", ray(1, 3), ray(1, 3)),
      cell("s3", "P3", ray(2, 3), ray(2, 3)),
  };
  // ccw by angle: 15/112, 1/6, 2/7, 1/3, 4/7, 65/112... sorted:
  // A2.0(15/112) s1(1/6) A1.0(2/7) s2(1/3) A1.1(4/7) A2.1(65/112)
  // A3.0(9/14) s3(2/3) A3.1(11/14)
  cx.rot_inf = {{1, 0}, {3, 0}, {0, 0}, {4, 0}, {0, 1}, {1, 1}, {2, 0}, {5, 0}, {2, 1}};
  cx.rot_at = {{"P1", {{3, 1}}}, {"P2", {{4, 1}}}, {"P3", {{5, 1}}}};
  cx.arcs = {
      {"A1", {0}, "e1", true, "A3", "repelling"},
      {"A2", {1}, "e2", false, "", ""},
      {"A3", {2}, "e3", true, "A1", "repelling"},
  };
  cx.period = 2;
  cx.leash = {{"P1", "s1"}, {"P2", "s2"}, {"P3", "s3"}};
  return cx;
}

// The rabbit. Punctures are the critical orbit v0=0 -> v1 -> v2 -> v0 at the
// centers of the period-3 basin. Each arc B_k runs through v_k: external ray
// to the basin boundary, internal ray to the center, out the other pair. The
// map sends B0 -> B1 -> B2 -> B0; f doubles internal angles on U0 (critical),
// so the halves of B0 swap into B1.
inline PlanarComplex complex_rabbit() {
  PlanarComplex cx;
  cx.name = "rabbit";
  cx.punctures = {"v0", "v1", "v2"};
  cx.cells = {
      cell("B0a", "v0", ray(40, 63), ray(1, 3)),
      cell("B0b", "v0", ray(5, 63), ray(2, 3)),
      cell("B1a", "v1", ray(10, 63), ray(1, 3)),
      cell("B1b", "v1", ray(17, 63), ray(2, 3)),
      cell("B2a", "v2", ray(20, 63), ray(1, 3)),
      cell("B2b", "v2", ray(34, 63), ray(2, 3)),
  };
  // ccw by external angle: 5/63 10/63 17/63 20/63 34/63 40/63
  cx.rot_inf = {{1, 0}, {2, 0}, {3, 0}, {4, 0}, {5, 0}, {0, 0}};
  // ccw by internal angle at each center
  cx.rot_at = {{"v0", {{0, 1}, {1, 1}}},
               {"v1", {{2, 1}, {3, 1}}},
               {"v2", {{4, 1}, {5, 1}}}};
  cx.arcs = {
      {"B0", {0, 1}, "e1", true, "B1", "attracting"},
      {"B1", {2, 3}, "e2", true, "B2", "attracting"},
      {"B2", {4, 5}, "e3", true, "B0", "attracting"},
  };
  cx.period = 3;
  cx.leash = {{"v0", "B0a"}, {"v1", "B1a"}, {"v2", "B2a"}};
  cx.centers = {"v0", "v1", "v2"};
  return cx;
}

// z^2-2. Punctures a=-2 (ray 1/2) and b=2 (ray 0). The single arc A=(1/3,2/3)
// lands at the fixed point -1 on the segment; its image is the (2/3,1/3)-arc,
// the same arc with ends exchanged, so A is periodic of period 1 and carries
// a repelling tag (one doubled edge, 2x1 transition matrix [2]).
inline PlanarComplex complex_self_double() {
  PlanarComplex cx;
  cx.name = "self_double";
  cx.punctures = {"a", "b"};
  cx.cells = {
      cell("A", "", ray(1, 3), ray(2, 3)),
      cell("sa", "a", ray(1, 2), ray(1, 2)),
      cell("sb", "b", ray(0, 1), ray(0, 1)),
  };
  // ccw by angle: 0 (sb), 1/3 (A.0), 1/2 (sa), 2/3 (A.1)
  cx.rot_inf = {{2, 0}, {0, 0}, {1, 0}, {0, 1}};
  cx.rot_at = {{"a", {{1, 1}}}, {"b", {{2, 1}}}};
  cx.arcs = {{"A", {0}, "e", true, "A", "repelling"}};
  cx.period = 1;
  cx.leash = {{"a", "sa"}, {"b", "sb"}};
  return cx;
}

// z^2-1: the critical point 0 and critical value -1 swap, a super-attracting
// 2-cycle. The tree is the segment [-1, 0]; its image is itself reversed.
inline HubbardTree tree_basilica() {
  HubbardTree t;
  t.name = "basilica";
  t.degree = 2;
  t.vertices = {{"p0", 2, true, true}, {"pm1", 1, false, true}};
  t.edges = {{"e", "pm1", "p0"}};
  t.vertex_map = {{"p0", "pm1"}, {"pm1", "p0"}};
  t.edge_map = {{"e", {{"e", true}}}};
  return t;
}

// The arc A=(1/3,2/3) lands at the alpha fixed point and separates the two
// basin centers. Both rays are periodic of period 2 with the pair swapped, so
// A maps to itself with ends exchanged. Each leash follows one of A's rays,
// hugging it on the side away from A's span so it stays in its own puncture's
// region (p0 lives on the side of A containing angle 0), then enters the basin
// along the internal ray 0.
inline PlanarComplex complex_basilica() {
  PlanarComplex cx;
  cx.name = "basilica";
  cx.punctures = {"p0", "pm1"};
  cx.cells = {
      cell("A", "", ray(1, 3), ray(2, 3)),
      cell("l0", "p0", ray(1, 3, -1), ray(0, 1)),
      cell("lm1", "pm1", ray(2, 3, -1), ray(0, 1)),
  };
  // ccw by angle: 1/3- (l0), 1/3 (A.0), 2/3- (lm1), 2/3 (A.1)
  cx.rot_inf = {{1, 0}, {0, 0}, {2, 0}, {0, 1}};
  cx.rot_at = {{"p0", {{1, 1}}}, {"pm1", {{2, 1}}}};
  cx.arcs = {{"A", {0}, "e", true, "A", "repelling"}};
  cx.period = 1;
  cx.leash = {{"p0", "l0"}, {"pm1", "lm1"}};
  cx.centers = {"p0", "pm1"};
  return cx;
}

// ---- one-step covers over the families above ---------------------------------
//
// Each cover lists the full preimage of the base family cell by cell: the
// halved ray pair of every chord in each fundamental sector, and one lift of
// every leash ray per preimage of its landing point. Copies drawn on a base
// cell carry its exact angles one nesting depth up; fresh ends near a shared
// ray record which side they hug.

inline CoveringSpec cover_z2i() {
  CoveringSpec s;
  s.base = complex_z2i();
  s.degree = 2;
  s.level = 1;
  PlanarComplex& t = s.total;
  t.name = "z2i^1";
  t.punctures = {"P1", "P2", "P3"};
  t.other_vertices = {"c0", "w"};
  t.cells = {
      cell("t0", "", ray(1, 7), ray(2, 7, -1)),
      cell("t1", "", ray(9, 14, 0, 1), ray(11, 14, 0, 1)),
      cell("t2", "", ray(65, 224), ray(127, 224)),
      cell("t3", "", ray(15, 224), ray(177, 224)),
      cell("t4", "", ray(9, 28), ray(11, 28)),
      cell("t5", "", ray(23, 28), ray(25, 28)),
      cell("t6", "c0", ray(1, 12), ray(1, 12)),
      cell("t7", "c0", ray(7, 12), ray(7, 12)),
      cell("t8", "P1", ray(1, 6, 0, 1), ray(1, 6, 0, 1)),
      cell("t9", "P3", ray(2, 3, 0, 1), ray(2, 3, 0, 1)),
      cell("t10", "P2", ray(1, 3, 0, 1), ray(1, 3, 0, 1)),
      cell("t11", "w", ray(5, 6), ray(5, 6)),
  };
  t.rot_inf = {{3, 0}, {6, 0}, {0, 0}, {8, 0},  {0, 1}, {2, 0},
               {4, 0}, {10, 0}, {4, 1}, {2, 1},  {7, 0}, {1, 0},
               {9, 0}, {1, 1},  {3, 1}, {5, 0},  {11, 0}, {5, 1}};
  t.rot_at = {{"P1", {{8, 1}}},
              {"P2", {{10, 1}}},
              {"P3", {{9, 1}}},
              {"c0", {{6, 1}, {7, 1}}},
              {"w", {{11, 1}}}};
  for (int c = 0; c < 6; ++c)
    t.arcs.push_back({t.cells[c].id, {c}, "", false, "", ""});
  t.period = 0;
  t.leash = {{"P1", "t8"}, {"P2", "t10"}, {"P3", "t9"}};
  s.cell_over = {0, 0, 1, 1, 2, 2, 3, 3, 4, 4, 5, 5};
  s.cell_orient = {1, 1, -1, 1, 1, 1, 1, 1, 1, 1, 1, 1};
  s.coincident = {-1, 2, -1, -1, -1, -1, -1, -1, 3, 5, 4, -1};
  s.vertex_over = {{"P1", "P2"}, {"P2", "P3"}, {"P3", "P2"},
                   {"c0", "P1"}, {"w", "P3"}};
  s.local_degree = {{"c0", 2}};
  s.designated = {{"A1", {4}}, {"A3", {1}}};
  return s;
}

inline CoveringSpec cover_rabbit() {
  CoveringSpec s;
  s.base = complex_rabbit();
  s.degree = 2;
  s.level = 1;
  PlanarComplex& t = s.total;
  t.name = "rabbit^1";
  t.punctures = {"v0", "v1", "v2"};
  t.other_vertices = {"m", "mp"};
  t.cells = {
      cell("u0", "v0", ray(5, 63, 0, 1), ray(2, 3, 0, 1)),
      cell("u1", "v0", ray(73, 126), ray(1, 6)),
      cell("u2", "v0", ray(17, 126), ray(5, 6)),
      cell("u3", "v0", ray(40, 63, 0, 1), ray(1, 3, 0, 1)),
      cell("u4", "v1", ray(10, 63, 0, 1), ray(1, 3, 0, 1)),
      cell("u5", "mp", ray(83, 126), ray(1, 3)),
      cell("u6", "v1", ray(17, 63, 0, 1), ray(2, 3, 0, 1)),
      cell("u7", "mp", ray(97, 126), ray(2, 3)),
      cell("u8", "v2", ray(20, 63, 0, 1), ray(1, 3, 0, 1)),
      cell("u9", "m", ray(103, 126), ray(1, 3)),
      cell("u10", "v2", ray(34, 63, 0, 1), ray(2, 3, 0, 1)),
      cell("u11", "m", ray(5, 126), ray(2, 3)),
  };
  t.rot_inf = {{11, 0}, {0, 0}, {2, 0}, {4, 0}, {6, 0}, {8, 0},
               {10, 0}, {1, 0}, {3, 0}, {5, 0}, {7, 0}, {9, 0}};
  t.rot_at = {{"v0", {{1, 1}, {3, 1}, {0, 1}, {2, 1}}},
              {"v1", {{4, 1}, {6, 1}}},
              {"v2", {{8, 1}, {10, 1}}},
              {"m", {{9, 1}, {11, 1}}},
              {"mp", {{5, 1}, {7, 1}}}};
  t.arcs = {{"u0", {0, 3}, "", false, "", ""},
            {"u4", {4, 6}, "", false, "", ""},
            {"u8", {8, 10}, "", false, "", ""}};
  t.period = 0;
  t.leash = {{"v0", "u3"}, {"v1", "u4"}, {"v2", "u8"}};
  t.centers = {"v0", "v1", "v2", "m", "mp"};
  s.cell_over = {2, 2, 3, 3, 4, 4, 5, 5, 0, 0, 1, 1};
  s.cell_orient = {1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1};
  s.coincident = {1, -1, -1, 0, 2, -1, 3, -1, 4, -1, 5, -1};
  s.vertex_over = {{"v0", "v1"}, {"v1", "v2"}, {"v2", "v0"},
                   {"m", "v0"}, {"mp", "v2"}};
  s.local_degree = {{"v0", 2}};
  s.designated = {{"B0", {0, 3}}, {"B1", {4, 6}}, {"B2", {8, 10}}};
  return s;
}

inline CoveringSpec cover_self_double() {
  CoveringSpec s;
  s.base = complex_self_double();
  s.degree = 2;
  s.level = 1;
  PlanarComplex& t = s.total;
  t.name = "self_double^1";
  t.punctures = {"a", "b"};
  t.other_vertices = {"c0"};
  t.cells = {
      cell("w0", "", ray(1, 3, 0, 1), ray(2, 3, 0, 1)),
      cell("w1", "", ray(1, 6), ray(5, 6)),
      cell("w2", "b", ray(0, 1, 0, 1), ray(0, 1, 0, 1)),
      cell("w3", "a", ray(1, 2, 0, 1), ray(1, 2, 0, 1)),
      cell("w4", "c0", ray(1, 4), ray(1, 4)),
      cell("w5", "c0", ray(3, 4), ray(3, 4)),
  };
  t.rot_inf = {{2, 0}, {1, 0}, {4, 0}, {0, 0}, {3, 0}, {0, 1}, {5, 0}, {1, 1}};
  t.rot_at = {{"a", {{3, 1}}}, {"b", {{2, 1}}}, {"c0", {{4, 1}, {5, 1}}}};
  t.arcs = {{"w0", {0}, "", false, "", ""}, {"w1", {1}, "", false, "", ""}};
  t.period = 0;
  t.leash = {{"a", "w3"}, {"b", "w2"}};
  s.cell_over = {0, 0, 2, 2, 1, 1};
  s.cell_orient = {-1, 1, 1, 1, 1, 1};
  s.coincident = {0, -1, 2, 1, -1, -1};
  s.vertex_over = {{"a", "b"}, {"b", "b"}, {"c0", "a"}};
  s.local_degree = {{"c0", 2}};
  s.designated = {{"A", {0}}};
  return s;
}

inline CoveringSpec cover_basilica() {
  CoveringSpec s;
  s.base = complex_basilica();
  s.degree = 2;
  s.level = 1;
  PlanarComplex& t = s.total;
  t.name = "basilica^1";
  t.punctures = {"p0", "pm1"};
  t.other_vertices = {"q"};
  t.cells = {
      cell("x0", "", ray(1, 3, 0, 1), ray(2, 3, 0, 1)),
      cell("x1", "", ray(1, 6), ray(5, 6)),
      cell("x2", "pm1", ray(2, 3, -1, 1), ray(0, 1, 0, 1)),
      cell("x3", "q", ray(1, 6, -1), ray(0, 1)),
      cell("x4", "p0", ray(1, 3, -1, 1), ray(0, 1, 0, 1)),
      cell("x5", "p0", ray(5, 6, -1), ray(1, 2)),
  };
  t.rot_inf = {{3, 0}, {1, 0}, {4, 0}, {0, 0}, {2, 0}, {0, 1}, {5, 0}, {1, 1}};
  t.rot_at = {{"p0", {{4, 1}, {5, 1}}}, {"pm1", {{2, 1}}}, {"q", {{3, 1}}}};
  t.arcs = {{"x0", {0}, "", false, "", ""}, {"x1", {1}, "", false, "", ""}};
  t.period = 0;
  t.leash = {{"p0", "x4"}, {"pm1", "x2"}};
  t.centers = {"p0", "pm1", "q"};
  s.cell_over = {0, 0, 1, 1, 2, 2};
  s.cell_orient = {-1, 1, 1, 1, 1, 1};
  s.coincident = {0, -1, 2, -1, 1, -1};
  s.vertex_over = {{"p0", "pm1"}, {"pm1", "p0"}, {"q", "p0"}};
  s.local_degree = {{"p0", 2}};
  s.designated = {{"A", {0}}};
  return s;
}

}  // namespace curvedyn

#include <catch2/catch_amalgamated.hpp>

#include "curvedyn/builtins.hpp"
#include "curvedyn/covering.hpp"
#include "curvedyn/curve.hpp"

using namespace curvedyn;

namespace {

std::vector<CoveringSpec> shipped_covers() {
  return {cover_z2i(), cover_rabbit(), cover_self_double(), cover_basilica()};
}

const Cell* cell_by_id(const PlanarComplex& cx, const std::string& id) {
  for (auto& c : cx.cells)
    if (c.id == id) return &c;
  return nullptr;
}

}  // namespace

TEST_CASE("shipped covers validate") {
  for (auto& s : shipped_covers()) {
    auto r = validate_covering(s);
    INFO(s.total.name << ": " << r.joined());
    CHECK(r.pass());
  }
}

TEST_CASE("identity cover validates and composes as a unit") {
  for (auto& s : shipped_covers()) {
    CoveringSpec id = identity_spec(s.base);
    auto r = validate_covering(id);
    INFO(s.base.name << " identity: " << r.joined());
    REQUIRE(r.pass());
    CHECK(cover_signature(compose(s, id)) == cover_signature(s));
    CHECK(cover_signature(compose(id, s)) == cover_signature(s));
  }
}

TEST_CASE("face fibers of the shipped covers") {
  for (auto& s : shipped_covers()) {
    detail::FaceCover fc = detail::face_cover(s);
    INFO(s.total.name);
    REQUIRE(fc.above.size() == s.base.topo().faces.size());
    // no cover here branches inside a face: two sheets over every base face
    for (auto& fs : fc.above) CHECK(fs.size() == 2);
    for (int dg : fc.face_deg) CHECK(dg == 1);
  }
}

TEST_CASE("derived covers match the shipped tables") {
  auto same = [](const CoveringSpec& got, const CoveringSpec& want) {
    auto r = validate_covering(got);
    INFO("derived " << want.total.name << ": " << r.joined());
    REQUIRE(r.pass());
    CHECK(cover_signature(got) == cover_signature(want));
  };
  same(derive_unicritical(complex_z2i(), tree_z2i()), cover_z2i());
  same(derive_unicritical(complex_rabbit(), tree_rabbit()), cover_rabbit());
  same(derive_unicritical(complex_self_double(), tree_self_double()),
       cover_self_double());
  same(derive_unicritical(complex_basilica(), tree_basilica()), cover_basilica());
}

TEST_CASE("composed double cover of z2i") {
  CoveringSpec s = cover_z2i();
  CoveringSpec s2 = compose(s, s);
  auto r = validate_covering(s2);
  INFO(r.joined());
  REQUIRE(r.pass());
  CHECK(s2.degree == 4);
  CHECK(s2.level == 2);
  REQUIRE(s2.total.cells.size() == 24);
  CHECK(s2.total.other_vertices.size() == 6);  // 3 punctures + 6 others = 9
  CHECK(s2.total.topo().faces.size() == 16);

  std::map<int, int> fiber;
  for (int b : s2.cell_over) fiber[b]++;
  for (auto& [b, n] : fiber) CHECK(n == 4);
  REQUIRE(fiber.size() == 6);

  // marked lifts: A1's sits on the drawn copy chain t1 over t4, A3's is the
  // quartered ray pair around the P3 leash
  REQUIRE(s2.designated.at("A1").size() == 1);
  const Cell& dA1 = s2.total.cells[s2.designated.at("A1")[0]];
  CHECK(dA1.id == "t1/t4");
  CHECK(dA1.pos[0].th == Frac(9, 28));
  CHECK(dA1.pos[1].th == Frac(11, 28));
  REQUIRE(s2.designated.at("A3").size() == 1);
  const Cell& dA3 = s2.total.cells[s2.designated.at("A3")[0]];
  CHECK(dA3.pos[0].th == Frac(37, 56));
  CHECK(dA3.pos[1].th == Frac(39, 56));

  // the two fresh lifts of t0, with the shared-ray pushes they acquire
  std::set<std::string> fresh;
  for (size_t t = 0; t < s2.total.cells.size(); ++t) {
    const Cell& c = s2.total.cells[t];
    if (s2.cell_over[t] != 0 || !c.land.empty()) continue;
    if (c.id.rfind("t0@", 0) != 0) continue;
    fresh.insert(c.pos[0].th.str() + "|" + std::to_string(c.pos[0].side) + " " +
                 c.pos[1].th.str() + "|" + std::to_string(c.pos[1].side));
  }
  CHECK(fresh == std::set<std::string>{"1/14|0 1/7|-1", "4/7|1 9/14|-1"});

  CHECK(cover_signature(power_spec(s, 2)) == cover_signature(s2));
}

TEST_CASE("pullback around single postcritical points of z2i") {
  CoveringSpec s = cover_z2i();
  const PlanarComplex& base = s.base;

  // around P2: two marked preimages, one loop each
  Pullback pb = pullback_curve(s, from_word(base, {"s2"}));
  REQUIRE(pb.components.size() == 2);
  CHECK(pb.degrees == std::vector<int>{1, 1});
  std::set<std::string> keys;
  for (auto& c : pb.components) keys.insert(canonical_key(base, c));
  CHECK(keys == std::set<std::string>{canonical_key(base, from_word(base, {"s1"})),
                                      canonical_key(base, from_word(base, {"s3"}))});

  // around P1: only the critical point upstairs, loop contracts downstairs
  Pullback pc = pullback_curve(s, from_word(base, {"s1"}));
  REQUIRE(pc.components.size() == 1);
  CHECK(pc.degrees == std::vector<int>{2});
  CHECK(pc.components[0].trivial());
  int res = pc.components[0].resident_face;
  REQUIRE(res >= 0);
  const Topology& tb = base.topo();
  CHECK(tb.merged_content[tb.merged_of_face[res]].empty());
}

TEST_CASE("pullback around P1 and P3 together") {
  CoveringSpec s = cover_z2i();
  const PlanarComplex& base = s.base;
  NormalCurve around13 = from_word(base, {"s1", "A2", "A3", "s3", "A3", "A2"});
  REQUIRE(enclosed(base, around13) == std::set<std::string>{"P1", "P3"});
  Pullback pb = pullback_curve(s, around13);
  REQUIRE(pb.components.size() == 1);
  CHECK(pb.degrees == std::vector<int>{2});
  CHECK(canonical_key(base, pb.components[0]) ==
        canonical_key(base, from_word(base, {"s2"})));
}

TEST_CASE("pullback of the curve around everything") {
  for (auto& s : shipped_covers()) {
    const PlanarComplex& base = s.base;
    // a loop around all punctures: word of every landing cell in circular order
    std::vector<std::string> word;
    for (auto ce : base.rot_inf)
      if (!base.cells[ce.cell].land.empty()) word.push_back(base.cells[ce.cell].id);
    NormalCurve all = from_word(base, word);
    std::set<std::string> ps(base.punctures.begin(), base.punctures.end());
    REQUIRE(enclosed(base, all) == ps);
    Pullback pb = pullback_curve(s, all);
    INFO(s.total.name);
    REQUIRE(pb.components.size() == 1);
    CHECK(pb.degrees == std::vector<int>{s.degree});
    CHECK(canonical_key(base, pb.components[0]) == canonical_key(base, all));
  }
}

TEST_CASE("companion arcs of the shipped families") {
  {
    StripData sd = find_companion_arc(cover_self_double(), "A");
    CHECK(sd.l == 1);
    CHECK_FALSE(sd.doubled);
    CHECK(sd.cover.degree == 2);
    REQUIRE(sd.cells.size() == 1);
    CHECK(sd.cover.total.cells[sd.cells[0]].id == "w1");
    CHECK(sd.through.empty());
  }
  {
    StripData bs = find_companion_arc(cover_basilica(), "A");
    CHECK(bs.l == 1);
    CHECK(bs.doubled);
    CHECK(bs.cover.degree == 4);
    REQUIRE(bs.cells.size() == 1);
    CHECK(bs.cover.total.cells[bs.cells[0]].id == "x0/x0");
  }
  {
    StripData z1 = find_companion_arc(cover_z2i(), "A1");
    CHECK(z1.l == 1);
    CHECK_FALSE(z1.doubled);
    CHECK(z1.cover.degree == 4);
    REQUIRE(z1.cells.size() == 1);
    CHECK(z1.cover.total.cells[z1.cells[0]].id == "t1/t4");
  }
  {
    StripData z3 = find_companion_arc(cover_z2i(), "A3");
    CHECK(z3.l == 1);
    CHECK_FALSE(z3.doubled);
    REQUIRE(z3.cells.size() == 1);
    const Cell& c = z3.cover.total.cells[z3.cells[0]];
    CHECK(c.pos[0].th == Frac(37, 56));
    CHECK(c.pos[1].th == Frac(39, 56));
  }
  {
    StripData rb = find_companion_arc(cover_rabbit(), "B0");
    CHECK(rb.l == 1);
    CHECK_FALSE(rb.doubled);
    CHECK(rb.cover.degree == 8);
    CHECK(rb.through == "v0");
    REQUIRE(rb.cells.size() == 2);
  }
}

TEST_CASE("covering mismatches are named") {
  CHECK_THROWS_WITH(compose(cover_z2i(), cover_rabbit()),
                    Catch::Matchers::ContainsSubstring("incompatible complexes"));

  CoveringSpec s = cover_z2i();
  s.designated.erase("A1");
  auto r = validate_covering(s);
  CHECK(r.joined().find("no designated lift recorded") != std::string::npos);

  CoveringSpec s2 = cover_z2i();
  s2.cell_orient[0] = -1;
  CHECK_FALSE(validate_covering(s2).pass());

  CoveringSpec s3 = cover_z2i();
  s3.cell_over[5] = 1;  // t5 claimed over A2: fiber counts break
  CHECK(validate_covering(s3).joined().find("arc preimage count") !=
        std::string::npos);
}

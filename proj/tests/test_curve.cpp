#include <algorithm>
#include <catch2/catch_amalgamated.hpp>
#include <random>

#include "curvedyn/builtins.hpp"
#include "curvedyn/curve.hpp"
#include "curvedyn/oracle.hpp"

using namespace curvedyn;

namespace {
using SSet = std::set<std::string>;

NormalCurve rotated(NormalCurve cv, size_t by) {
  std::rotate(cv.trace.begin(), cv.trace.begin() + by, cv.trace.end());
  return cv;
}

NormalCurve reversed(NormalCurve cv) {
  std::reverse(cv.trace.begin(), cv.trace.end());
  for (auto& s : cv.trace) s.side = 1 - s.side;
  return cv;
}
}  // namespace

TEST_CASE("loop around one puncture, z2i") {
  PlanarComplex cx = complex_z2i();
  NormalCurve cv = from_word(cx, {"s2"});
  REQUIRE(cv.trace.size() == 1);
  CHECK(validate_curve(cx, cv).pass());
  CHECK(complexity(cx, cv) == 0);  // leash spokes are not family arcs
  CHECK(enclosed(cx, cv) == SSet{"P2"});
  CHECK(is_peripheral(cx, cv) == Peripherality::AroundOne);
  CHECK(canonical_key(cx, cv) == "s2:0:0|");
}

TEST_CASE("wobble across an arc reduces away, z2i") {
  PlanarComplex cx = complex_z2i();
  NormalCurve cv = from_word(cx, {"A1", "s2", "A1"});
  REQUIRE(cv.trace.size() == 3);
  REQUIRE(validate_curve(cx, cv).pass());
  CHECK(complexity(cx, cv) == 2);

  NormalCurve red = reduce(cx, cv);
  CHECK(red.trace.size() == 1);
  CHECK(canonical_key(cx, red) == canonical_key(cx, from_word(cx, {"s2"})));
  CHECK(complexity(cx, red) == 0);

  // reduction is idempotent and ignores the starting rotation
  CHECK(canonical_key(cx, reduce(cx, red)) == canonical_key(cx, red));
  for (size_t k = 1; k < 3; ++k)
    CHECK(canonical_key(cx, reduce(cx, rotated(cv, k))) == canonical_key(cx, red));
}

TEST_CASE("curve around two of three punctures, z2i") {
  PlanarComplex cx = complex_z2i();
  NormalCurve cv = from_word(cx, {"s1", "A2", "A3", "s3", "A3", "A2"});
  REQUIRE(cv.trace.size() == 6);
  REQUIRE(validate_curve(cx, cv).pass());

  CHECK(complexity(cx, cv) == 4);
  CHECK(complexity_f0(cx, cv) == 2);  // only the two A3 crossings count
  CHECK(intersection_number(cx, cv, "A1") == 0);
  CHECK(intersection_number(cx, cv, "A2") == 2);
  CHECK(intersection_number(cx, cv, "A3") == 2);
  auto counts = per_arc_counts(cx, cv);
  CHECK(counts.at("A1") == 0);
  CHECK(counts.at("A2") == 2);
  CHECK(counts.at("A3") == 2);

  CHECK(enclosed(cx, cv) == SSet{"P1", "P3"});
  CHECK(is_peripheral(cx, cv) == Peripherality::No);
  CHECK(reduce(cx, cv).trace.size() == 6);  // already bigon-free

  // the canonical key is blind to rotation and orientation
  std::string key = canonical_key(cx, cv);
  for (size_t k = 0; k < 6; ++k) {
    CHECK(canonical_key(cx, rotated(cv, k)) == key);
    CHECK(canonical_key(cx, reversed(rotated(cv, k))) == key);
  }

  // deterministic: same word, same trace
  NormalCurve cv2 = from_word(cx, {"s1", "A2", "A3", "s3", "A3", "A2"});
  CHECK(cv2.trace == cv.trace);
}

TEST_CASE("curve around everything, z2i") {
  PlanarComplex cx = complex_z2i();
  // one crossing per cell end at infinity, in rotation order
  NormalCurve cv = from_word(cx, {"A2", "s1", "A1", "s2", "A1", "A2", "A3", "s3", "A3"});
  REQUIRE(cv.trace.size() == 9);
  REQUIRE(validate_curve(cx, cv).pass());
  CHECK(complexity(cx, cv) == 6);
  CHECK(enclosed(cx, cv) == SSet{"P1", "P2", "P3"});
  CHECK(is_peripheral(cx, cv) == Peripherality::AroundAll);
  CHECK(reduce(cx, cv).trace.size() == 9);
}

TEST_CASE("even wobble on a spoke is contractible, z2i") {
  PlanarComplex cx = complex_z2i();
  NormalCurve cv = from_word(cx, {"s1", "s1"});
  REQUIRE(cv.trace.size() == 2);
  NormalCurve red = reduce(cx, cv);
  CHECK(red.trivial());
  CHECK(canonical_key(cx, red) == "trivial");
  CHECK(is_peripheral(cx, cv) == Peripherality::Trivial);
}

TEST_CASE("word errors") {
  PlanarComplex z = complex_z2i();
  CHECK_THROWS_WITH(from_word(z, {"A1"}), "not closed");
  CHECK_THROWS_WITH(from_word(z, {"A1", "A2", "A3"}), "not closed");
  CHECK_THROWS_WITH(from_word(z, {"bogus"}), "unknown arc/face: bogus");
  CHECK_THROWS_WITH(from_word(z, {"s2", "@F9"}), "unknown arc/face: @F9");
  CHECK_THROWS_WITH(from_word(z, {"@F1", "s2"}), "unknown arc/face: @F1");

  PlanarComplex r = complex_rabbit();
  // B0 names two cells, so a word has to pick the half explicitly
  CHECK_THROWS_WITH(from_word(r, {"B0"}), "unknown arc/face: B0");
  // a doubled loop around v0 closes face-wise but cannot be embedded
  CHECK_THROWS_WITH(from_word(r, {"B0a", "B0b", "B0a", "B0b"}), "self-crossing forced");
}

TEST_CASE("face pins pick the chord routing") {
  PlanarComplex cx = complex_z2i();
  NormalCurve cv = from_word(cx, {"A1", "@F0", "A1"});
  REQUIRE(cv.trace.size() == 2);
  // both chords of a two-crossing wobble: one in F0 (pinned), the wrap in F1
  int f0 = cx.topo().face_of_dart[exit_dart(cv.trace[0])];
  CHECK(f0 == 0);
  CHECK(reduce(cx, cv).trivial());
}

TEST_CASE("curves through the rabbit's punctures") {
  PlanarComplex cx = complex_rabbit();

  NormalCurve around_v0 = from_word(cx, {"B0a", "B0b"});
  REQUIRE(validate_curve(cx, around_v0).pass());
  CHECK(enclosed(cx, around_v0) == SSet{"v0"});
  CHECK(is_peripheral(cx, around_v0) == Peripherality::AroundOne);
  // both halves belong to the arc family, so even this peripheral loop
  // carries positive complexity
  CHECK(complexity(cx, around_v0) == 2);
  CHECK(intersection_number(cx, around_v0, "B0") == 2);

  NormalCurve all = from_word(cx, {"B0b", "B1a", "B1b", "B2a", "B2b", "B0a"});
  REQUIRE(validate_curve(cx, all).pass());
  CHECK(enclosed(cx, all) == SSet{"v0", "v1", "v2"});
  CHECK(is_peripheral(cx, all) == Peripherality::AroundAll);
  CHECK(complexity(cx, all) == 6);
}

TEST_CASE("curves on the doubled-edge complex") {
  PlanarComplex cx = complex_self_double();

  NormalCurve around_a = from_word(cx, {"sa"});
  CHECK(enclosed(cx, around_a) == SSet{"a"});
  CHECK(is_peripheral(cx, around_a) == Peripherality::AroundOne);
  CHECK(complexity(cx, around_a) == 0);

  NormalCurve all = from_word(cx, {"sb", "A", "sa", "A"});
  CHECK(enclosed(cx, all) == SSet{"a", "b"});
  CHECK(is_peripheral(cx, all) == Peripherality::AroundAll);
  CHECK(complexity(cx, all) == 2);
}

TEST_CASE("bigon insertion round-trips through reduce") {
  PlanarComplex cx = complex_z2i();
  NormalCurve base = from_word(cx, {"s1", "A2", "A3", "s3", "A3", "A2"});
  std::string key = canonical_key(cx, base);

  std::mt19937 rng(20240817);
  for (int trial = 0; trial < 40; ++trial) {
    NormalCurve cur = base;
    int pushes = 1 + int(rng() % 3);
    for (int k = 0; k < pushes; ++k) {
      auto opts = oracle::bigon_insertions(cx, cur);
      REQUIRE_FALSE(opts.empty());
      cur = opts[rng() % opts.size()];
    }
    REQUIRE(validate_curve(cx, cur).pass());
    CHECK(complexity(cx, cur) >= 4);
    CHECK(canonical_key(cx, reduce(cx, cur)) == key);

    // every removal order lands on the same normal form
    auto forms = oracle::normal_forms(cx, cur, 200000);
    REQUIRE(forms.size() == 1);
    CHECK(forms.begin()->first == key);
    CHECK(canonical_key(cx, oracle::brute_force_minimize(cx, cur, 200000)) == key);
  }
}

TEST_CASE("oracle budget error") {
  PlanarComplex cx = complex_z2i();
  NormalCurve base = from_word(cx, {"A1", "s2", "A1"});
  NormalCurve cur = base;
  for (int k = 0; k < 4; ++k) {
    auto opts = oracle::bigon_insertions(cx, cur);
    REQUIRE_FALSE(opts.empty());
    cur = opts.front();
  }
  CHECK_THROWS_WITH(oracle::normal_forms(cx, cur, 2), "budget exceeded");
}

#pragma once
// Simple closed curves in normal position with respect to an arc complex.
// A curve is a cyclic trace of crossings; each step records the cell hit,
// the side exited into, and the crossing's rank along the cell (0 nearest
// end 0). Chords between consecutive crossings live in faces; since faces
// are unpunctured disks, a chord is determined by its endpoints and a curve
// by its trace. Reduction is bigon removal; keys are rotation/reversal
// minimal serializations.

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "curvedyn/complex.hpp"

namespace curvedyn {

struct Step {
  int cell = -1;
  int side = 0;  // side exited into
  int rank = 0;
  friend bool operator==(const Step& a, const Step& b) {
    return a.cell == b.cell && a.side == b.side && a.rank == b.rank;
  }
};

struct NormalCurve {
  std::vector<Step> trace;  // empty = contractible
  int resident_face = -1;   // merged face hint for the crossing-free case

  bool trivial() const { return trace.empty(); }
};

namespace detail {

// Position of a chord endpoint on its face's boundary circle. `idx` is the
// crossing's index in the cell's rank order; on the dart running end1->end0
// the along-dart order is reversed, so the key flips it with a large bias.
struct CirclePos {
  int dart_pos;
  long long along;
  friend bool operator<(const CirclePos& a, const CirclePos& b) {
    return a.dart_pos != b.dart_pos ? a.dart_pos < b.dart_pos : a.along < b.along;
  }
  friend bool operator==(const CirclePos& a, const CirclePos& b) {
    return a.dart_pos == b.dart_pos && a.along == b.along;
  }
};

inline CirclePos circle_pos(const Topology& t, int dart, int rank_idx, int n_on_cell) {
  long long along = dart_toward(dart) == 1 ? rank_idx : (n_on_cell - 1 - rank_idx);
  return {t.pos_in_face[dart], along};
}

// Chords {a,b}, {c,d} on one circle cross iff exactly one of c,d lies in the
// open interval (a,b).
inline bool chords_cross(CirclePos a, CirclePos b, CirclePos c, CirclePos d) {
  if (b < a) std::swap(a, b);
  bool cin = a < c && c < b;
  bool din = a < d && d < b;
  return cin != din;
}

}  // namespace detail

inline int exit_dart(const Step& s) { return side_dart(s.cell, s.side); }
inline int entry_dart(const Step& s) { return side_dart(s.cell, 1 - s.side); }

inline Report validate_curve(const PlanarComplex& cx, const NormalCurve& cv) {
  Report r;
  const Topology& t = cx.topo();
  const auto& tr = cv.trace;
  if (tr.empty()) return r;

  std::map<int, std::set<int>> ranks;
  for (auto& s : tr) {
    if (s.cell < 0 || s.cell >= int(cx.cells.size())) {
      r.fail("step on unknown cell");
      return r;
    }
    if (s.side != 0 && s.side != 1) r.fail("bad side");
    if (!ranks[s.cell].insert(s.rank).second)
      r.fail("duplicate rank on cell " + cx.cells[s.cell].id);
  }
  for (auto& [c, rs] : ranks)
    if (*rs.begin() != 0 || *rs.rbegin() != int(rs.size()) - 1)
      r.fail("ranks on cell " + cx.cells[c].id + " are not 0..n-1");
  if (!r.pass()) return r;

  size_t n = tr.size();
  for (size_t i = 0; i < n; ++i) {
    const Step& a = tr[i];
    const Step& b = tr[(i + 1) % n];
    if (t.face_of_dart[exit_dart(a)] != t.face_of_dart[entry_dart(b)])
      r.fail("face mismatch after step " + std::to_string(i));
  }
  if (!r.pass()) return r;

  // chords must be pairwise non-crossing inside each face
  std::map<int, int> n_on_cell;
  for (auto& s : tr) n_on_cell[s.cell]++;
  auto pos = [&](const Step& s, bool exiting) {
    int d = exiting ? exit_dart(s) : entry_dart(s);
    return detail::circle_pos(t, d, s.rank, n_on_cell[s.cell]);
  };
  std::map<int, std::vector<std::pair<detail::CirclePos, detail::CirclePos>>> by_face;
  for (size_t i = 0; i < n; ++i) {
    const Step& a = tr[i];
    const Step& b = tr[(i + 1) % n];
    by_face[t.face_of_dart[exit_dart(a)]].push_back({pos(a, true), pos(b, false)});
  }
  for (auto& [f, chords] : by_face)
    for (size_t i = 0; i < chords.size(); ++i)
      for (size_t j = i + 1; j < chords.size(); ++j)
        if (detail::chords_cross(chords[i].first, chords[i].second, chords[j].first,
                                 chords[j].second))
          r.fail("crossing chords in face " + face_name(f));
  return r;
}

// One bigon pass: consecutive steps through the same cell from opposite
// sides at adjacent ranks bound an empty disk. Removing them keeps the trace
// valid; ranks above the removed pair shift down by two.
inline bool remove_one_bigon(NormalCurve& cv) {
  auto& tr = cv.trace;
  size_t n = tr.size();
  if (n < 2) return false;
  for (size_t i = 0; i < n; ++i) {
    size_t j = (i + 1) % n;
    const Step &a = tr[i], &b = tr[j];
    if (a.cell != b.cell || b.side != 1 - a.side) continue;
    if (a.rank != b.rank + 1 && b.rank != a.rank + 1) continue;
    int cell = a.cell, hi = std::max(a.rank, b.rank);
    if (j > i) {
      tr.erase(tr.begin() + j);
      tr.erase(tr.begin() + i);
    } else {
      tr.erase(tr.begin() + i);
      tr.erase(tr.begin() + j);
    }
    for (auto& s : tr)
      if (s.cell == cell && s.rank > hi) s.rank -= 2;
    return true;
  }
  return false;
}

inline NormalCurve reduce(const PlanarComplex& cx, NormalCurve cv) {
  (void)cx;
  while (remove_one_bigon(cv)) {
  }
  return cv;
}

inline std::string canonical_key(const PlanarComplex& cx, const NormalCurve& cv) {
  if (cv.trace.empty()) return "trivial";
  size_t n = cv.trace.size();
  auto serialize = [&](const std::vector<Step>& tr, size_t start) {
    std::string s;
    for (size_t k = 0; k < tr.size(); ++k) {
      const Step& st = tr[(start + k) % tr.size()];
      s += cx.cells[st.cell].id + ":" + std::to_string(st.side) + ":" +
           std::to_string(st.rank) + "|";
    }
    return s;
  };
  std::vector<Step> rev(cv.trace.rbegin(), cv.trace.rend());
  for (auto& s : rev) s.side = 1 - s.side;
  std::string best;
  for (size_t start = 0; start < n; ++start)
    for (const auto* tr : {&std::as_const(cv.trace), &std::as_const(rev)}) {
      std::string s = serialize(*tr, start);
      if (best.empty() || s < best) best = std::move(s);
    }
  return best;
}

// Punctures separated from infinity by the curve: odd crossing parity with
// the leash cell (a path from the puncture to infinity).
inline std::set<std::string> enclosed(const PlanarComplex& cx, const NormalCurve& cv) {
  std::set<std::string> out;
  for (auto& [p, leash_id] : cx.leash) {
    int c = cx.cell_idx(leash_id);
    int cnt = 0;
    for (auto& s : cv.trace)
      if (s.cell == c) ++cnt;
    if (cnt % 2) out.insert(p);
  }
  return out;
}

enum class Peripherality { Trivial, AroundOne, AroundAll, No };

inline const char* peripherality_name(Peripherality p) {
  switch (p) {
    case Peripherality::Trivial: return "trivial";
    case Peripherality::AroundOne: return "around-one";
    case Peripherality::AroundAll: return "around-all";
    default: return "no";
  }
}

inline Peripherality is_peripheral(const PlanarComplex& cx, const NormalCurve& cv) {
  NormalCurve red = reduce(cx, cv);
  if (red.trivial()) return Peripherality::Trivial;
  auto inside = enclosed(cx, red);
  require(!inside.empty(), "reduced curve encloses nothing");
  if (inside.size() == 1) return Peripherality::AroundOne;
  if (inside.size() == cx.punctures.size()) return Peripherality::AroundAll;
  return Peripherality::No;
}

inline int intersection_number(const PlanarComplex& cx, const NormalCurve& cv,
                               const std::string& arc_id) {
  int ai = cx.arc_idx(arc_id);
  require(ai >= 0, "unknown arc " + arc_id);
  int cnt = 0;
  for (auto& s : cv.trace)
    if (cx.topo().arc_of_cell[s.cell] == ai) ++cnt;
  return cnt;
}

// Total crossings with the arc family (all arcs / F0 arcs). Counts the given
// representative; reduce first to get the complexity of the class.
inline int complexity(const PlanarComplex& cx, const NormalCurve& cv) {
  int cnt = 0;
  for (auto& s : cv.trace)
    if (cx.topo().arc_of_cell[s.cell] >= 0) ++cnt;
  return cnt;
}

inline int complexity_f0(const PlanarComplex& cx, const NormalCurve& cv) {
  int cnt = 0;
  for (auto& s : cv.trace) {
    int a = cx.topo().arc_of_cell[s.cell];
    if (a >= 0 && cx.arcs[a].in_f0) ++cnt;
  }
  return cnt;
}

inline std::map<std::string, int> per_arc_counts(const PlanarComplex& cx,
                                                 const NormalCurve& cv) {
  std::map<std::string, int> out;
  for (auto& a : cx.arcs) out[a.id] = 0;
  for (auto& s : cv.trace) {
    int a = cx.topo().arc_of_cell[s.cell];
    if (a >= 0) out[cx.arcs[a].id]++;
  }
  return out;
}

// ---- word input ------------------------------------------------------------
//
// A word is a sequence of cell ids; a token "@F<k>" after a cell pins the
// face of the chord leaving that crossing. Sides and crossing order along
// cells are chosen by a deterministic depth-first search (smallest side,
// then earliest insertion position); the first embedded closed realization
// wins. Words that close on no side assignment are rejected as "not closed",
// words whose every realization forces crossing chords as "self-crossing
// forced".

namespace detail {

struct WordItem {
  int cell;
  int forced_face = -1;
};

struct WordSearch {
  const PlanarComplex& cx;
  const Topology& t;
  std::vector<WordItem> items;
  std::vector<int> sides;
  std::vector<std::vector<size_t>> order;  // per cell: step indices in rank order
  std::vector<std::pair<int, int>> chords_dart;  // per committed chord: darts
  bool found = false;

  explicit WordSearch(const PlanarComplex& c, std::vector<WordItem> it)
      : cx(c), t(c.topo()), items(std::move(it)) {
    sides.assign(items.size(), -1);
    order.assign(cx.cells.size(), {});
  }

  CirclePos pos_now(size_t step, bool exiting) const {
    int cell = items[step].cell;
    int d = exiting ? side_dart(cell, sides[step]) : side_dart(cell, 1 - sides[step]);
    const auto& lst = order[cell];
    int idx = -1;
    for (size_t k = 0; k < lst.size(); ++k)
      if (lst[k] == step) idx = int(k);
    return circle_pos(t, d, idx, int(lst.size()));
  }

  bool chord_ok(size_t from, size_t to) const {
    int f = t.face_of_dart[side_dart(items[from].cell, sides[from])];
    CirclePos a = pos_now(from, true), b = pos_now(to, false);
    size_t n = items.size();
    for (size_t i = 0; i < n; ++i) {
      size_t j = (i + 1) % n;
      if (i == from) continue;
      if (sides[i] < 0 || sides[j] < 0) continue;
      int g = t.face_of_dart[side_dart(items[i].cell, sides[i])];
      if (g != f) continue;
      if (chords_cross(a, b, pos_now(i, true), pos_now(j, false))) return false;
    }
    return true;
  }

  bool face_chain_only(size_t i) {  // closability ignoring embeddedness
    if (i == items.size()) {
      int f = t.face_of_dart[side_dart(items.back().cell, sides.back())];
      if (items.back().forced_face >= 0 && f != items.back().forced_face) return false;
      return f == t.face_of_dart[side_dart(items[0].cell, 1 - sides[0])];
    }
    for (int s = 0; s < 2; ++s) {
      sides[i] = s;
      bool ok = true;
      if (i > 0) {
        int f = t.face_of_dart[side_dart(items[i - 1].cell, sides[i - 1])];
        if (items[i - 1].forced_face >= 0 && f != items[i - 1].forced_face) ok = false;
        if (ok && f != t.face_of_dart[side_dart(items[i].cell, 1 - s)]) ok = false;
      }
      if (ok && face_chain_only(i + 1)) return true;
    }
    sides[i] = -1;
    return false;
  }

  bool full(size_t i) {
    size_t n = items.size();
    if (i == n) {
      int f = t.face_of_dart[side_dart(items.back().cell, sides.back())];
      if (items.back().forced_face >= 0 && f != items.back().forced_face) return false;
      if (f != t.face_of_dart[side_dart(items[0].cell, 1 - sides[0])]) return false;
      return chord_ok(n - 1, 0);
    }
    int cell = items[i].cell;
    for (int s = 0; s < 2; ++s) {
      if (i > 0) {
        int f = t.face_of_dart[side_dart(items[i - 1].cell, sides[i - 1])];
        if (items[i - 1].forced_face >= 0 && f != items[i - 1].forced_face) continue;
        if (f != t.face_of_dart[side_dart(cell, 1 - s)]) continue;
      }
      sides[i] = s;
      auto& lst = order[cell];
      for (size_t p = 0; p <= lst.size(); ++p) {
        lst.insert(lst.begin() + p, i);
        bool ok = i == 0 || chord_ok(i - 1, i);
        if (ok && full(i + 1)) return true;
        lst.erase(lst.begin() + p);
      }
      sides[i] = -1;
    }
    return false;
  }
};

}  // namespace detail

inline NormalCurve from_word(const PlanarComplex& cx,
                             const std::vector<std::string>& word) {
  require(!word.empty(), "not closed");
  std::vector<detail::WordItem> items;
  for (auto& tok : word) {
    if (tok.size() > 1 && tok[0] == '@') {
      require(!items.empty(), "unknown arc/face: " + tok);
      std::string fname = tok.substr(1);
      int f = -1;
      for (size_t k = 0; k < cx.topo().faces.size(); ++k)
        if (face_name(int(k)) == fname) f = int(k);
      require(f >= 0, "unknown arc/face: " + tok);
      items.back().forced_face = f;
      continue;
    }
    int c = cx.cell_idx(tok);
    if (c < 0) {
      int a = cx.arc_idx(tok);
      if (a >= 0 && cx.arcs[a].cells.size() == 1) c = cx.arcs[a].cells[0];
    }
    require(c >= 0, "unknown arc/face: " + tok);
    items.push_back({c, -1});
  }

  detail::WordSearch probe(cx, items);
  require(probe.face_chain_only(0), "not closed");
  detail::WordSearch search(cx, items);
  require(search.full(0), "self-crossing forced");

  NormalCurve cv;
  cv.trace.resize(items.size());
  for (size_t i = 0; i < items.size(); ++i)
    cv.trace[i] = {items[i].cell, search.sides[i], 0};
  for (size_t c = 0; c < search.order.size(); ++c)
    for (size_t k = 0; k < search.order[c].size(); ++k)
      cv.trace[search.order[c][k]].rank = int(k);
  auto rep = validate_curve(cx, cv);
  require(rep.pass(), "self-crossing forced");
  return cv;
}

}  // namespace curvedyn

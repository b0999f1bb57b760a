#pragma once
// One iterate of a postcritically finite polynomial acting on its invariant
// arc family, stored as a branched cover of the plane in combinatorial form.
// The total complex is the full preimage of the base family; every total cell
// maps onto a base cell, finite vertices map with local degrees, and drawn-on
// copies (a preimage arc that coincides with a base arc) are flagged, since
// they are what lets a lifted curve be re-read against the base family.
//
// On top of the raw tables: validation, pullback of curves (lift, then carry
// the trace back to base coordinates), composition of iterates, companion
// arcs with puncture-free strips, derivation of the level-one cover from a
// Hubbard tree, and a canonical signature for comparing covers.

#include <algorithm>
#include <array>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "curvedyn/complex.hpp"
#include "curvedyn/curve.hpp"
#include "curvedyn/tree.hpp"

namespace curvedyn {

struct CoveringSpec {
  PlanarComplex base;
  PlanarComplex total;
  int degree = 1;
  int level = 1;  // iterates of the map this cover represents
  std::vector<int> cell_over;    // total cell -> base cell it maps onto
  std::vector<int> cell_orient;  // +1 end-preserving, -1 ends swapped
  std::vector<int> coincident;   // base cell the total cell is drawn on, or -1
  std::map<std::string, std::string> vertex_over;  // finite vertex fibers
  std::map<std::string, int> local_degree;         // branching; absent means 1
  std::map<std::string, std::vector<int>> designated;  // F0 arc -> marked lift
};

inline int local_deg(const CoveringSpec& s, const std::string& v) {
  auto it = s.local_degree.find(v);
  return it == s.local_degree.end() ? 1 : it->second;
}

namespace detail {

inline int dart_over(const CoveringSpec& s, int d) {
  int c = dart_cell(d);
  int t = s.cell_orient[c] > 0 ? dart_toward(d) : 1 - dart_toward(d);
  return dart_id(s.cell_over[c], t);
}

// Total faces against base faces: each total face walk must read as one base
// face walk repeated a whole number of times.
struct FaceCover {
  std::vector<int> face_over, face_deg;
  std::vector<std::vector<int>> above;  // base face -> total faces over it
};

inline FaceCover face_cover(const CoveringSpec& s) {
  const Topology& tb = s.base.topo();
  const Topology& tt = s.total.topo();
  FaceCover fc;
  fc.face_over.assign(tt.faces.size(), -1);
  fc.face_deg.assign(tt.faces.size(), 0);
  fc.above.resize(tb.faces.size());
  for (size_t f = 0; f < tt.faces.size(); ++f) {
    const auto& walk = tt.faces[f];
    int bd0 = dart_over(s, walk[0]);
    int bf = tb.face_of_dart[bd0];
    const auto& bwalk = tb.faces[bf];
    size_t nb = bwalk.size();
    size_t k0 = std::find(bwalk.begin(), bwalk.end(), bd0) - bwalk.begin();
    bool ok = walk.size() % nb == 0;
    for (size_t i = 0; ok && i < walk.size(); ++i)
      ok = dart_over(s, walk[i]) == bwalk[(k0 + i) % nb];
    require(ok, "face " + face_name(int(f)) + " does not lie over a base face");
    fc.face_over[f] = bf;
    fc.face_deg[f] = int(walk.size() / nb);
    fc.above[bf].push_back(int(f));
  }
  return fc;
}

// The unique dart of total face f over base dart bd.
inline int lift_dart(const CoveringSpec& s, const Topology& tt, int f, int bd) {
  int hit = -1;
  for (int d : tt.faces[f]) {
    if (dart_over(s, d) != bd) continue;
    require(hit < 0, "ambiguous dart lift in " + face_name(f));
    hit = d;
  }
  require(hit >= 0, "no dart lift in " + face_name(f));
  return hit;
}

// Cyclic position on a face's boundary circle. Even majors are points on the
// walk's darts, minor counting progress along the dart; odd majors are the
// corner after each dart, minor counting guests with the walk (which runs
// clockwise along every vertex circle, so ccw placement is reversed).
struct FacePos {
  int major = 0, minor = 0;
  friend bool operator<(const FacePos& a, const FacePos& b) {
    return a.major != b.major ? a.major < b.major : a.minor < b.minor;
  }
  friend bool operator==(const FacePos& a, const FacePos& b) {
    return a.major == b.major && a.minor == b.minor;
  }
};

inline bool pos_between(FacePos a, FacePos x, FacePos b) {
  if (a == b || x == a || x == b) return false;
  if (a < b) return a < x && x < b;
  return a < x || x < b;
}
inline bool pos_cross(FacePos p, FacePos q, FacePos x, FacePos y) {
  return pos_between(p, x, q) != pos_between(p, y, q);
}

// Where a curve crossing sits on the face circle of the dart it exits/enters.
inline FacePos step_pos(const Topology& t, int dart, int rank, int n_on_cell) {
  int along = dart_toward(dart) == 1 ? rank : n_on_cell - 1 - rank;
  return {2 * t.pos_in_face[dart], along};
}

// Placement of one complex (the guest) into the faces of another (the host)
// drawn over the same sphere without crossings. Each guest end lands in a
// corner of a host face: the corner between two consecutive host ends is
// owned by the host dart arriving at the ccw-later one. Guest-only landing
// vertices (hubs) sit inside a single host face.
struct Hosting {
  std::vector<std::array<int, 2>> face, corner_dart;
  std::vector<std::array<FacePos, 2>> pos;
  std::map<std::string, int> hub_face;
};

inline Hosting host_guest(const PlanarComplex& host, const PlanarComplex& guest,
                          const std::vector<char>& skip) {
  const Topology& th = host.topo();
  Hosting hg;
  hg.face.assign(guest.cells.size(), {-1, -1});
  hg.corner_dart.assign(guest.cells.size(), {-1, -1});
  hg.pos.assign(guest.cells.size(), {});

  // A guest run between consecutive host ends u, w sits in one face corner.
  // At infinity the face walk descends through the gap after arriving via w;
  // at a finite vertex it ascends through it after arriving via u.
  auto weave = [&](std::vector<EndRef> ends, bool at_inf) {
    std::sort(ends.begin(), ends.end(), end_less);
    int n = int(ends.size());
    for (int i = 0; i < n; ++i) {
      const EndRef& a = ends[i];
      const EndRef& b = ends[(i + 1) % n];
      if (n > 1 && a.at == b.at)
        throw Error("overlay ends collide: " +
                    (a.group ? guest : host).cells[a.end.cell].id + " / " +
                    (b.group ? guest : host).cells[b.end.cell].id);
    }
    int start = -1;
    for (int i = 0; i < n && start < 0; ++i)
      if (ends[i].group == 0) start = i;
    require(start >= 0, "guest cells surround no host end");
    const EndRef* prev_host = &ends[start];
    std::vector<const EndRef*> gap;
    for (int k = 1; k <= n; ++k) {
      const EndRef& e = ends[(start + k) % n];
      if (e.group != 0) {
        gap.push_back(&e);
        continue;
      }
      const EndRef& owner = at_inf ? e : *prev_host;
      int dart = dart_id(owner.end.cell, owner.end.end);
      int f = th.face_of_dart[dart];
      int run = int(gap.size());
      for (int g = 0; g < run; ++g) {
        hg.face[gap[g]->end.cell][gap[g]->end.end] = f;
        hg.corner_dart[gap[g]->end.cell][gap[g]->end.end] = dart;
        hg.pos[gap[g]->end.cell][gap[g]->end.end] = {
            2 * th.pos_in_face[dart] + 1, at_inf ? run - 1 - g : g};
      }
      gap.clear();
      prev_host = &e;
    }
  };

  // circle at infinity first: it settles every end 0, which hub placement uses
  {
    auto ends = ends_at_inf(host, 0);
    for (auto& e : ends_at_inf(guest, 1))
      if (!skip[e.end.cell]) ends.push_back(e);
    weave(ends, true);
  }

  std::set<std::string> landing;
  for (size_t c = 0; c < guest.cells.size(); ++c)
    if (!skip[c] && !guest.cells[c].land.empty()) landing.insert(guest.cells[c].land);
  for (const auto& v : landing) {
    if (host.is_finite_vertex(v)) {
      auto ends = ends_at_vertex(host, v, 0);
      for (auto& e : ends_at_vertex(guest, v, 1))
        if (!skip[e.end.cell]) ends.push_back(e);
      weave(ends, false);
    } else {
      int f = -1;
      for (size_t c = 0; c < guest.cells.size(); ++c) {
        if (skip[c] || guest.cells[c].land != v) continue;
        int f0 = hg.face[c][0];
        if (f < 0) f = f0;
        if (f != f0)
          throw Error("hub " + v + " has spokes in different host faces");
        hg.face[c][1] = f0;
      }
      hg.hub_face[v] = f;
    }
  }

  for (size_t c = 0; c < guest.cells.size(); ++c) {
    if (skip[c]) continue;
    if (hg.face[c][0] != hg.face[c][1])
      throw Error("guest cell " + guest.cells[c].id + " straddles host faces");
  }
  return hg;
}

// Punctures split by the two sides of a separating arc given as its cells;
// punctures the arc lands at are on neither side. Empty when the cells fail
// to cut the sphere in two.
inline std::optional<std::set<std::set<std::string>>> bipartition(
    const PlanarComplex& cx, const std::vector<int>& cells) {
  const Topology& t = cx.topo();
  std::set<int> blocked(cells.begin(), cells.end());
  auto [comp, labels] = face_components(t, blocked);
  if (labels != 2) return std::nullopt;
  std::set<std::string> on;
  for (int c : cells)
    if (!cx.cells[c].land.empty()) on.insert(cx.cells[c].land);
  std::array<std::set<std::string>, 2> sides;
  for (auto& p : cx.punctures) {
    if (on.count(p)) continue;
    sides[comp[*t.star.at(p).begin()]].insert(p);
  }
  return std::set<std::set<std::string>>{sides[0], sides[1]};
}

// The marked lift of an F0 arc. The drawn-on copy of the arc's own cells wins
// when it exists (two preimages can separate the punctures identically, as for
// the period-one arc of z^2-2); otherwise the unique candidate separating the
// punctures the way the arc does.
inline std::vector<int> select_designated(const PlanarComplex& probe,
                                          const std::vector<int>& cell_over,
                                          const std::vector<int>& coincident,
                                          const PlanarComplex& base, const Arc& a,
                                          const Arc& target) {
  std::vector<std::vector<int>> cands;
  size_t nt = probe.cells.size();
  if (target.cells.size() == 1) {
    for (size_t t = 0; t < nt; ++t)
      if (cell_over[t] == target.cells[0] && probe.cells[t].land.empty())
        cands.push_back({int(t)});
  } else {
    const std::string& va = base.cells[a.cells[0]].land;
    for (size_t t0 = 0; t0 < nt; ++t0) {
      if (cell_over[t0] != target.cells[0] || probe.cells[t0].land != va) continue;
      for (size_t t1 = 0; t1 < nt; ++t1) {
        if (cell_over[t1] != target.cells[1] || probe.cells[t1].land != va) continue;
        cands.push_back({int(t0), int(t1)});
      }
    }
  }
  std::multiset<int> own(a.cells.begin(), a.cells.end());
  for (auto& cd : cands) {
    std::multiset<int> on;
    for (int c : cd)
      if (coincident[c] >= 0) on.insert(coincident[c]);
    if (on.size() == cd.size() && on == own) return cd;
  }
  auto want = bipartition(base, a.cells);
  require(bool(want), "arc " + a.id + " does not separate the base");
  std::optional<std::vector<int>> found;
  for (auto& cd : cands) {
    auto bp = bipartition(probe, cd);
    if (!bp || !(*bp == *want)) continue;
    require(!found, "designated lift of " + a.id + " is ambiguous");
    found = cd;
  }
  require(bool(found), "no designated lift of " + a.id);
  return *found;
}

// The unique candidate angle (src.th + k)/m inside the corner that the sorted
// circle assigns to arrival end w (between w and its ccw predecessor). A
// candidate exactly on a wall's ray resolves by stacking order.
inline Ang pin_in_corner(const std::vector<EndRef>& circle, CellEnd w, const Ang& src,
                         int m, const std::string& what) {
  int n = int(circle.size());
  int wi = -1;
  for (int i = 0; i < n; ++i)
    if (circle[i].end == w) wi = i;
  require(wi >= 0, "corner end missing from its circle");
  const EndRef& wr = circle[wi];
  const EndRef& ur = circle[(wi + n - 1) % n];
  Ang got;
  int hits = 0;
  for (int k = 0; k < m; ++k) {
    Frac cand = ((src.th + Frac{k, 1}) / m).mod1();
    EndRef ex{Ang{cand, src.side, src.depth}, cand, 1, {-1, 0}};
    bool in;
    if (n == 1)
      in = !(cand == wr.at.th);
    else if (ur.at.th == wr.at.th)
      in = cand == wr.at.th && end_less(ur, ex) && end_less(ex, wr);
    else if (cand == wr.at.th)
      in = end_less(ex, wr);
    else if (cand == ur.at.th)
      in = end_less(ur, ex);
    else
      in = ccw_between(ur.at.th, cand, wr.at.th);
    if (in) {
      got = ex.at;
      ++hits;
    }
  }
  require(hits == 1, "lifted end of " + what + " not pinned to one corner");
  return got;
}

}  // namespace detail

// The trivial cover: the base drawn on itself one level deeper.
inline CoveringSpec identity_spec(const PlanarComplex& base) {
  CoveringSpec s;
  s.base = base;
  s.total = base;
  s.total.name = base.name + "^0";
  s.total.period = 0;
  for (auto& c : s.total.cells) {
    c.pos[0].depth++;
    c.pos[1].depth++;
  }
  for (auto& a : s.total.arcs) a.in_f0 = false;
  int n = int(base.cells.size());
  s.cell_over.resize(n);
  std::iota(s.cell_over.begin(), s.cell_over.end(), 0);
  s.cell_orient.assign(n, 1);
  s.coincident = s.cell_over;
  for (auto& p : base.punctures) s.vertex_over[p] = p;
  for (auto& v : base.other_vertices) s.vertex_over[v] = v;
  s.degree = 1;
  s.level = 0;
  for (auto& a : base.arcs)
    if (a.in_f0) s.designated[a.id] = a.cells;
  return s;
}

inline Report validate_covering(const CoveringSpec& s) {
  Report r;
  {
    Report rb = validate_complex(s.base);
    for (auto& m : rb.failures) r.fail("base: " + m);
    Report rt = validate_complex(s.total);
    for (auto& m : rt.failures) r.fail("total: " + m);
  }
  if (!r.pass()) return r;

  size_t nt = s.total.cells.size(), nb = s.base.cells.size();
  if (s.degree < 1) r.fail("degree must be positive");
  if (s.level < 0) r.fail("level must be nonnegative");
  if (s.cell_over.size() != nt || s.cell_orient.size() != nt ||
      s.coincident.size() != nt) {
    r.fail("cell tables do not match the total complex");
    return r;
  }
  for (size_t t = 0; t < nt; ++t) {
    if (s.cell_over[t] < 0 || s.cell_over[t] >= int(nb)) {
      r.fail("cell " + s.total.cells[t].id + " maps outside the base");
      return r;
    }
    if (s.cell_orient[t] != 1 && s.cell_orient[t] != -1)
      r.fail("cell " + s.total.cells[t].id + " has a bad orientation");
    if (s.coincident[t] < -1 || s.coincident[t] >= int(nb)) {
      r.fail("cell " + s.total.cells[t].id + " drawn on a bad cell");
      return r;
    }
  }
  {
    std::set<std::string> pb(s.base.punctures.begin(), s.base.punctures.end());
    std::set<std::string> pt(s.total.punctures.begin(), s.total.punctures.end());
    if (pb != pt) r.fail("puncture sets differ");
  }

  std::set<std::string> tv, bv, pset(s.base.punctures.begin(), s.base.punctures.end());
  for (auto& p : s.total.punctures) tv.insert(p);
  for (auto& v : s.total.other_vertices) tv.insert(v);
  for (auto& p : s.base.punctures) bv.insert(p);
  for (auto& v : s.base.other_vertices) bv.insert(v);
  for (auto& [y, x] : s.vertex_over) {
    if (!tv.count(y))
      r.fail("vertex map lists unknown vertex " + y);
    else if (!bv.count(x))
      r.fail("vertex " + y + " maps to unknown vertex " + x);
    else if (pset.count(y) && !pset.count(x))
      r.fail("puncture " + y + " must map to a puncture");
  }
  for (auto& y : tv)
    if (!s.vertex_over.count(y)) r.fail("vertex " + y + " has no image");
  for (auto& [y, d] : s.local_degree) {
    if (!tv.count(y)) r.fail("local degree at unknown vertex " + y);
    if (d < 1) r.fail("local degree at " + y + " must be positive");
  }
  if (!r.pass()) return r;

  long long branch = 0;
  for (auto& y : tv) branch += local_deg(s, y) - 1;
  if (branch != s.degree - 1)
    r.fail("total branching is " + std::to_string(branch) + ", want " +
           std::to_string(s.degree - 1));
  for (auto& y : tv) {
    bool ct = s.total.centers.count(y) > 0;
    bool cb = s.base.centers.count(s.vertex_over.at(y)) > 0;
    if (ct != cb) r.fail("Fatou centers disagree at " + y);
  }

  for (size_t t = 0; t < nt; ++t) {
    const Cell& ct = s.total.cells[t];
    const Cell& cb = s.base.cells[s.cell_over[t]];
    bool tch = ct.land.empty(), bch = cb.land.empty();
    if (tch != bch) {
      r.fail("cell " + ct.id + " and its image disagree about landing");
      continue;
    }
    if (!tch) {
      if (s.cell_orient[t] != 1) r.fail("landing cell " + ct.id + " cannot swap ends");
      if (s.vertex_over.at(ct.land) != cb.land)
        r.fail("cell " + ct.id + " lands off its fiber");
    }
    for (int e = 0; e < (tch ? 2 : 1); ++e) {
      int be = s.cell_orient[t] > 0 ? e : 1 - e;
      if (!((s.degree * ct.pos[e].th).mod1() == cb.pos[be].th))
        r.fail("cell " + ct.id + " end angle off its fiber");
    }
    if (!tch) {
      if (s.total.centers.count(ct.land)) {
        int m = local_deg(s, ct.land);
        if (!((m * ct.pos[1].th).mod1() == cb.pos[1].th))
          r.fail("cell " + ct.id + " internal angle off its fiber");
      } else {
        if (!(ct.pos[1].th == ct.pos[0].th))
          r.fail("cell " + ct.id + " access angle differs from its ray");
        if (!(cb.pos[1].th == cb.pos[0].th))
          r.fail("cell " + cb.id + " access angle differs from its ray");
      }
    }
    int co = s.coincident[t];
    if (co >= 0) {
      const Cell& cc = s.base.cells[co];
      bool ok = cc.land.empty() == tch && (tch || ct.land == cc.land);
      for (int e = 0; e < 2 && ok; ++e)
        ok = ct.pos[e].th == cc.pos[e].th && ct.pos[e].side == cc.pos[e].side &&
             ct.pos[e].depth > cc.pos[e].depth;
      if (!ok) r.fail("cell " + ct.id + " is not drawn on " + cc.id);
    }
  }
  {
    std::set<int> used;
    for (size_t t = 0; t < nt; ++t)
      if (s.coincident[t] >= 0 && !used.insert(s.coincident[t]).second)
        r.fail("two cells drawn on " + s.base.cells[s.coincident[t]].id);
  }

  for (size_t b = 0; b < nb; ++b) {
    int cnt = 0;
    for (size_t t = 0; t < nt; ++t)
      if (s.cell_over[t] == int(b)) ++cnt;
    if (cnt != s.degree)
      r.fail("arc preimage count over " + s.base.cells[b].id + " is " +
             std::to_string(cnt));
  }
  for (auto& y : tv) {
    for (size_t b = 0; b < nb; ++b) {
      if (s.base.cells[b].land != s.vertex_over.at(y)) continue;
      int cnt = 0;
      for (size_t t = 0; t < nt; ++t)
        if (s.cell_over[t] == int(b) && s.total.cells[t].land == y) ++cnt;
      if (cnt != local_deg(s, y))
        r.fail("cells over " + s.base.cells[b].id + " landing at " + y + ": " +
               std::to_string(cnt));
    }
  }
  if (!r.pass()) return r;

  try {
    std::vector<char> skip_t(nt, 0);
    for (size_t t = 0; t < nt; ++t) skip_t[t] = s.coincident[t] >= 0;
    detail::host_guest(s.base, s.total, skip_t);
    std::vector<char> skip_b(nb, 0);
    for (size_t t = 0; t < nt; ++t)
      if (s.coincident[t] >= 0) skip_b[s.coincident[t]] = 1;
    detail::host_guest(s.total, s.base, skip_b);
  } catch (const Error& e) {
    r.fail(e.what());
  }

  try {
    auto fc = detail::face_cover(s);
    for (size_t bf = 0; bf < fc.above.size(); ++bf) {
      int sum = 0;
      for (int f : fc.above[bf]) sum += fc.face_deg[f];
      if (sum != s.degree)
        r.fail("face degree sum over " + face_name(int(bf)) + " is " +
               std::to_string(sum));
    }
  } catch (const Error& e) {
    r.fail(e.what());
  }

  for (auto& a : s.base.arcs) {
    if (!a.in_f0) continue;
    auto it = s.designated.find(a.id);
    if (it == s.designated.end()) {
      r.fail("no designated lift recorded for " + a.id);
      continue;
    }
    const auto& cd = it->second;
    bool bad = false;
    for (int c : cd) bad |= c < 0 || c >= int(nt);
    if (bad) {
      r.fail("designated lift of " + a.id + " references a bad cell");
      continue;
    }
    const Arc* target = &a;
    for (int k = 0; k < s.level; ++k) {
      int ti = s.base.arc_idx(target->maps_to);
      if (ti < 0) {
        r.fail("arc map breaks down at " + target->id);
        target = nullptr;
        break;
      }
      target = &s.base.arcs[ti];
    }
    if (!target) continue;
    std::multiset<int> got, want(target->cells.begin(), target->cells.end());
    for (int c : cd) got.insert(s.cell_over[c]);
    if (got != want) r.fail("designated lift of " + a.id + " is over the wrong cells");
    std::string aland = s.base.cells[a.cells[0]].land;
    for (int c : cd)
      if (s.total.cells[c].land != aland)
        r.fail("designated lift of " + a.id + " lands at the wrong vertex");
    auto bp = detail::bipartition(s.total, cd);
    auto ba = detail::bipartition(s.base, a.cells);
    if (!bp || !ba || !(*bp == *ba))
      r.fail("designated copy of " + a.id + " separates differently");
    bool grouped = false;
    std::set<int> cdset(cd.begin(), cd.end());
    for (auto& ta : s.total.arcs)
      grouped |= std::set<int>(ta.cells.begin(), ta.cells.end()) == cdset;
    if (!grouped) r.fail("designated lift of " + a.id + " is not grouped as an arc");
  }
  for (auto& [aid, cd] : s.designated) {
    int ai = s.base.arc_idx(aid);
    if (ai < 0 || !s.base.arcs[ai].in_f0)
      r.fail("designated entry for unknown arc " + aid);
  }
  return r;
}

// ---- composition -----------------------------------------------------------

// g after h: lift every cell of g's total family through the cover h. Cells
// drawn on a base cell lift to the h-preimages of that cell verbatim; other
// cells lift once into each total face over the face hosting them, ends
// pinned into the lifted corner.
inline CoveringSpec compose(const CoveringSpec& g, const CoveringSpec& h) {
  bool same = g.base.name == h.base.name && g.base.punctures == h.base.punctures &&
              g.base.cells.size() == h.base.cells.size();
  if (same)
    for (size_t i = 0; i < g.base.cells.size(); ++i)
      same = same && g.base.cells[i].id == h.base.cells[i].id;
  require(same, "incompatible complexes");

  const PlanarComplex& B = g.base;
  const Topology& tth = h.total.topo();

  std::vector<char> skip_g(g.total.cells.size(), 0);
  for (size_t t = 0; t < skip_g.size(); ++t) skip_g[t] = g.coincident[t] >= 0;
  auto hgB = detail::host_guest(B, g.total, skip_g);
  auto fch = detail::face_cover(h);

  auto inf_circle = detail::ends_at_inf(h.total, 0);
  std::sort(inf_circle.begin(), inf_circle.end(), detail::end_less);
  std::map<std::string, std::vector<detail::EndRef>> vertex_circle;
  for (auto& [v, rot] : h.total.rot_at) {
    auto ends = detail::ends_at_vertex(h.total, v, 0);
    std::sort(ends.begin(), ends.end(), detail::end_less);
    vertex_circle[v] = std::move(ends);
  }

  CoveringSpec out;
  out.base = B;
  out.degree = g.degree * h.degree;
  out.level = g.level + h.level;
  out.total.name = B.name + "^" + std::to_string(out.level);
  out.total.punctures = B.punctures;
  out.total.period = 0;

  // vertices: all of h's persist; g-only hubs lift into each face over theirs
  std::set<std::string> vnames(B.punctures.begin(), B.punctures.end());
  out.total.other_vertices = h.total.other_vertices;
  for (auto& v : h.total.other_vertices)
    require(vnames.insert(v).second, "vertex name collision: " + v);
  for (auto& [y, x] : h.vertex_over) {
    require(g.vertex_over.count(x), "base vertex " + x + " missing upstairs");
    out.vertex_over[y] = g.vertex_over.at(x);
    int ld = local_deg(h, y) * local_deg(g, x);
    if (ld != 1) out.local_degree[y] = ld;
    if (h.total.centers.count(y)) out.total.centers.insert(y);
  }
  std::map<std::pair<std::string, int>, std::string> hub_name;
  for (auto& [v, bf] : hgB.hub_face) {
    bool single = fch.above[bf].size() == 1;
    for (int F : fch.above[bf]) {
      require(fch.face_deg[F] == 1, "vertex " + v + " lifts through a branched face");
      std::string nm = single ? v : v + "@" + face_name(F);
      require(vnames.insert(nm).second, "vertex name collision: " + nm);
      hub_name[{v, F}] = nm;
      out.total.other_vertices.push_back(nm);
      out.vertex_over[nm] = g.vertex_over.at(v);
      int ld = local_deg(g, v);
      if (ld != 1) out.local_degree[nm] = ld;
      if (g.total.centers.count(v)) out.total.centers.insert(nm);
    }
  }

  // a lifted end that comes to share a base chord's ray hugs the side away
  // from the rest of the lift; riding a ray into a puncture has no side
  auto fresh_push = [&](Ang& a, const Frac& other_th, const std::string& what) {
    if (a.side != 0) return;
    for (auto& cb : B.cells) {
      bool lands = !cb.land.empty();
      for (int e = 0; e < (lands ? 1 : 2); ++e) {
        if (!(cb.pos[e].th == a.th) || cb.pos[e].side != 0) continue;
        require(!lands, "lift of " + what + " rides a leash ray");
        bool inside = ccw_between(cb.pos[0].th, other_th, cb.pos[1].th);
        a.side = (e == 1) == inside ? -1 : +1;
        return;
      }
    }
  };

  auto& TC = out.total.cells;
  for (size_t tau = 0; tau < g.total.cells.size(); ++tau) {
    const Cell& ct = g.total.cells[tau];
    int b = g.coincident[tau];
    if (b >= 0) {
      for (size_t sg = 0; sg < h.total.cells.size(); ++sg) {
        if (h.cell_over[sg] != b) continue;
        const Cell& cs = h.total.cells[sg];
        Cell nc = cs;
        nc.id = cs.id == B.cells[b].id   ? ct.id
                : ct.id == B.cells[b].id ? cs.id
                                         : ct.id + "/" + cs.id;
        TC.push_back(nc);
        out.cell_over.push_back(g.cell_over[tau]);
        out.cell_orient.push_back(g.cell_orient[tau] * h.cell_orient[sg]);
        out.coincident.push_back(h.coincident[sg]);
      }
      continue;
    }

    int bf = hgB.face[tau][0];
    bool single = fch.above[bf].size() == 1;
    bool chord = ct.land.empty();
    for (int F : fch.above[bf]) {
      require(fch.face_deg[F] == 1, "cell " + ct.id + " lifts through a branched face");
      Cell nc;
      nc.id = single ? ct.id : ct.id + "@" + face_name(F);
      for (int e = 0; e < (chord ? 2 : 1); ++e) {
        int bd = hgB.corner_dart[tau][e];
        int dd = detail::lift_dart(h, tth, F, bd);
        nc.pos[e] = detail::pin_in_corner(inf_circle, {dart_cell(dd), dart_toward(dd)},
                                          ct.pos[e], h.degree, ct.id);
      }
      int coin = -1;
      if (chord) {
        for (size_t b2 = 0; b2 < B.cells.size() && coin < 0; ++b2) {
          const Cell& cb = B.cells[b2];
          if (!cb.land.empty()) continue;
          bool hit = true;
          for (int e = 0; e < 2; ++e)
            hit = hit && nc.pos[e].th == cb.pos[e].th && nc.pos[e].side == cb.pos[e].side;
          if (hit) coin = int(b2);
        }
        if (coin >= 0) {
          for (int e = 0; e < 2; ++e) {
            nc.pos[e] = B.cells[coin].pos[e];
            nc.pos[e].depth++;
          }
        } else {
          fresh_push(nc.pos[0], nc.pos[1].th, ct.id);
          fresh_push(nc.pos[1], nc.pos[0].th, ct.id);
        }
      } else {
        int bd1 = hgB.corner_dart[tau][1];
        if (bd1 >= 0) {
          // lands at a vertex the base also carries
          int dd1 = detail::lift_dart(h, tth, F, bd1);
          const std::string& y = h.total.cells[dart_cell(dd1)].land;
          nc.land = y;
          for (size_t b2 = 0; b2 < B.cells.size() && coin < 0; ++b2) {
            const Cell& cb = B.cells[b2];
            if (cb.land != y) continue;
            if (nc.pos[0].th == cb.pos[0].th && nc.pos[0].side == cb.pos[0].side)
              coin = int(b2);
          }
          if (coin >= 0) {
            for (int e = 0; e < 2; ++e) {
              nc.pos[e] = B.cells[coin].pos[e];
              nc.pos[e].depth++;
            }
          } else {
            fresh_push(nc.pos[0], nc.pos[0].th, ct.id);
            if (h.total.centers.count(y))
              nc.pos[1] = detail::pin_in_corner(vertex_circle.at(y),
                                                {dart_cell(dd1), 1}, ct.pos[1],
                                                local_deg(h, y), ct.id);
            else
              nc.pos[1] = nc.pos[0];
          }
        } else {
          // hub landing: the whole germ lifts untouched into face F
          nc.land = hub_name.at({ct.land, F});
          fresh_push(nc.pos[0], nc.pos[0].th, ct.id);
          nc.pos[1] = g.total.centers.count(ct.land) ? ct.pos[1] : nc.pos[0];
        }
      }
      TC.push_back(nc);
      out.cell_over.push_back(g.cell_over[tau]);
      out.cell_orient.push_back(g.cell_orient[tau]);
      out.coincident.push_back(coin);
    }
  }

  // rotations from the exact positions
  {
    auto er = detail::ends_at_inf(out.total, 0);
    std::sort(er.begin(), er.end(), detail::end_less);
    for (auto& e : er) out.total.rot_inf.push_back(e.end);
    for (auto& v : vnames) {
      auto ev = detail::ends_at_vertex(out.total, v, 0);
      if (ev.empty()) continue;
      std::sort(ev.begin(), ev.end(), detail::end_less);
      auto& rot = out.total.rot_at[v];
      for (auto& e : ev) rot.push_back(e.end);
    }
  }

  // leashes follow the drawn copies of the base leashes
  for (auto& p : out.total.punctures) {
    int bl = B.cell_idx(B.leash.at(p));
    int copy = -1;
    for (size_t t = 0; t < TC.size() && copy < 0; ++t)
      if (out.coincident[t] == bl) copy = int(t);
    require(copy >= 0, "no drawn copy of the leash of " + p);
    out.total.leash[p] = TC[copy].id;
  }

  // designated lifts, marked before arcs are attached so the topo stays fresh
  {
    PlanarComplex probe = out.total;
    for (auto& a : B.arcs) {
      if (!a.in_f0) continue;
      const Arc* target = &a;
      for (int k = 0; k < out.level; ++k) target = &B.arcs[B.arc_idx(target->maps_to)];
      out.designated[a.id] = detail::select_designated(probe, out.cell_over,
                                                       out.coincident, B, a, *target);
    }
  }

  // arcs: every chord stands alone unless a designated pair claims its cells
  std::set<int> paired;
  for (auto& [aid, cd] : out.designated)
    if (cd.size() == 2) paired.insert(cd.begin(), cd.end());
  for (size_t t = 0; t < TC.size(); ++t)
    if (TC[t].land.empty())
      out.total.arcs.push_back({TC[t].id, {int(t)}, "", false, "", ""});
  for (auto& [aid, cd] : out.designated)
    if (cd.size() == 2)
      out.total.arcs.push_back({TC[cd[0]].id, cd, "", false, "", ""});

  return out;
}

inline CoveringSpec power_spec(const CoveringSpec& s, int k) {
  require(k >= 1, "power must be positive");
  CoveringSpec acc = identity_spec(s.base);
  for (int i = 0; i < k; ++i) acc = compose(acc, s);
  return acc;
}

// ---- pullback --------------------------------------------------------------

struct Pullback {
  std::vector<NormalCurve> components;  // carried to the base and reduced
  std::vector<int> degrees;             // covering degree of each component
};

namespace detail {

// Re-read a lifted curve against the base family: crossings of drawn-on
// copies transfer directly; in each face, the connecting chords pierce the
// hosted base chords they separate endpoints of.
inline NormalCurve carry(const CoveringSpec& s, const NormalCurve& lifted,
                         const Hosting& hg, const Hosting& hg_back) {
  const Topology& tt = s.total.topo();
  int n = int(lifted.trace.size());
  std::map<int, int> count_on;
  for (auto& st : lifted.trace) count_on[st.cell]++;

  std::map<int, std::vector<int>> hosted;  // total face -> base chords inside
  for (size_t b = 0; b < s.base.cells.size(); ++b)
    if (hg.face[b][0] >= 0 && s.base.cells[b].land.empty())
      hosted[hg.face[b][0]].push_back(int(b));

  struct Ev {
    int bcell, side, rank;
    FacePos e;
    bool transfer;
  };
  std::vector<Ev> evs;
  for (int j = 0; j < n; ++j) {
    const Step& st = lifted.trace[j];
    int b = s.coincident[st.cell];
    if (b >= 0) evs.push_back({b, st.side, st.rank, {}, true});
    const Step& st2 = lifted.trace[(j + 1) % n];
    int exd = side_dart(st.cell, st.side);
    int end = side_dart(st2.cell, 1 - st2.side);
    int F = tt.face_of_dart[exd];
    FacePos p = step_pos(tt, exd, st.rank, count_on[st.cell]);
    FacePos q = step_pos(tt, end, st2.rank, count_on[st2.cell]);
    auto it = hosted.find(F);
    if (it == hosted.end()) continue;
    std::vector<int> hits;
    for (int b2 : it->second)
      if (pos_cross(p, q, hg.pos[b2][0], hg.pos[b2][1])) hits.push_back(b2);
    std::sort(hits.begin(), hits.end(), [&](int b1, int b2) {
      // hit chords are disjoint, so "nearer the start" is well defined
      bool b1p = pos_between(hg.pos[b2][0], hg.pos[b1][0], hg.pos[b2][1]);
      bool pp = pos_between(hg.pos[b2][0], p, hg.pos[b2][1]);
      return b1p == pp;
    });
    for (int b2 : hits) {
      bool into0 = pos_between(hg.pos[b2][1], q, hg.pos[b2][0]);
      evs.push_back({b2, into0 ? 0 : 1, -1, into0 ? q : p, false});
    }
  }

  // piercing ranks run from end 0 of each base chord
  std::map<int, std::vector<int>> by_cell;
  for (size_t i = 0; i < evs.size(); ++i)
    if (!evs[i].transfer) by_cell[evs[i].bcell].push_back(int(i));
  for (auto& [b, idxs] : by_cell) {
    FacePos x0 = hg.pos[b][0];
    std::sort(idxs.begin(), idxs.end(), [&](int A, int Bx) {
      return pos_between(evs[Bx].e, evs[A].e, x0);
    });
    for (size_t k = 0; k < idxs.size(); ++k) evs[idxs[k]].rank = int(k);
  }

  NormalCurve out;
  for (auto& ev : evs) out.trace.push_back({ev.bcell, ev.side, ev.rank});
  if (out.trace.empty()) {
    int res = -1;
    for (auto& st : lifted.trace)
      if (res < 0 && s.coincident[st.cell] < 0) res = hg_back.face[st.cell][0];
    require(res >= 0, "carried curve lost its face");
    out.resident_face = res;
  }
  Report r = validate_curve(s.base, out);
  require(r.pass(), "carried trace invalid: " + r.joined());
  return out;
}

}  // namespace detail

inline Pullback pullback_curve(const CoveringSpec& s, const NormalCurve& curve) {
  {
    Report r = validate_curve(s.base, curve);
    require(r.pass(), "pullback input: " + r.joined());
  }
  require(!curve.trivial(), "pullback needs a nontrivial curve");
  const Topology& tt = s.total.topo();
  int n = int(curve.trace.size());
  int nt = int(s.total.cells.size());

  std::map<int, int> base_count;
  for (auto& st : curve.trace) base_count[st.cell]++;

  std::vector<std::pair<int, int>> lifts;  // (trace index, total cell)
  std::map<std::pair<int, int>, int> lid;
  for (int i = 0; i < n; ++i)
    for (int t = 0; t < nt; ++t)
      if (s.cell_over[t] == curve.trace[i].cell) {
        lid[{i, t}] = int(lifts.size());
        lifts.push_back({i, t});
      }

  auto lifted_side = [&](int i, int t) {
    return s.cell_orient[t] > 0 ? curve.trace[i].side : 1 - curve.trace[i].side;
  };
  auto lifted_rank = [&](int i, int t) {
    int r = curve.trace[i].rank;
    return s.cell_orient[t] > 0 ? r : base_count[curve.trace[i].cell] - 1 - r;
  };

  std::vector<int> succ(lifts.size()), indeg(lifts.size(), 0);
  for (size_t L = 0; L < lifts.size(); ++L) {
    auto [i, t] = lifts[L];
    int j = (i + 1) % n;
    int F = tt.face_of_dart[side_dart(t, lifted_side(i, t))];
    int bentry = side_dart(curve.trace[j].cell, 1 - curve.trace[j].side);
    int dd;
    try {
      dd = detail::lift_dart(s, tt, F, bentry);
    } catch (const Error&) {
      throw Error("stitching failure at step " + std::to_string(i));
    }
    int t2 = dart_cell(dd);
    require(lifted_side(j, t2) == 1 - dart_side(dd),
            "stitching failure at step " + std::to_string(i));
    succ[L] = lid.at({j, t2});
    indeg[succ[L]]++;
  }
  for (size_t L = 0; L < lifts.size(); ++L)
    require(indeg[L] == 1, "stitching failure: lifts do not close up");

  // hostings used to carry every component back down
  std::vector<char> skip_b(s.base.cells.size(), 0);
  for (int t = 0; t < nt; ++t)
    if (s.coincident[t] >= 0) skip_b[s.coincident[t]] = 1;
  for (size_t b = 0; b < s.base.cells.size(); ++b)
    if (!s.base.cells[b].land.empty())
      require(skip_b[b], "no drawn copy of landing cell " + s.base.cells[b].id);
  auto hg = detail::host_guest(s.total, s.base, skip_b);
  std::vector<char> skip_t(nt, 0);
  for (int t = 0; t < nt; ++t) skip_t[t] = s.coincident[t] >= 0;
  auto hg_back = detail::host_guest(s.base, s.total, skip_t);

  Pullback out;
  std::vector<char> seen(lifts.size(), 0);
  for (size_t L0 = 0; L0 < lifts.size(); ++L0) {
    if (seen[L0]) continue;
    std::vector<int> cyc;
    for (int L = int(L0); !seen[L]; L = succ[L]) {
      seen[L] = 1;
      cyc.push_back(L);
    }
    size_t at = 0;  // start the trace at the smallest lift for determinism
    for (size_t k = 1; k < cyc.size(); ++k)
      if (lifts[cyc[k]] < lifts[cyc[at]]) at = k;
    NormalCurve comp;
    for (size_t k = 0; k < cyc.size(); ++k) {
      auto [i, t] = lifts[cyc[(at + k) % cyc.size()]];
      comp.trace.push_back({t, lifted_side(i, t), lifted_rank(i, t)});
    }
    // global ranks -> ranks within this component, order preserved
    std::map<int, std::vector<int>> on_cell;
    for (size_t k = 0; k < comp.trace.size(); ++k)
      on_cell[comp.trace[k].cell].push_back(int(k));
    for (auto& [c, ks] : on_cell) {
      std::sort(ks.begin(), ks.end(), [&](int a, int b) {
        return comp.trace[a].rank < comp.trace[b].rank;
      });
      for (size_t k = 0; k < ks.size(); ++k) comp.trace[ks[k]].rank = int(k);
    }
    Report r = validate_curve(s.total, comp);
    require(r.pass(), "pullback produced an invalid lift: " + r.joined());

    out.components.push_back(reduce(s.base, detail::carry(s, comp, hg, hg_back)));
    out.degrees.push_back(int(cyc.size()) / n);
  }

  int sum = std::accumulate(out.degrees.begin(), out.degrees.end(), 0);
  require(sum == s.degree,
          "pullback degree sum is " + std::to_string(sum) + ", want " +
              std::to_string(s.degree));
  return out;
}

// ---- companion arcs --------------------------------------------------------

struct StripData {
  std::string arc;
  int l = 1;
  bool doubled = false;          // companion found only after squaring the cover
  std::vector<int> cells;        // companion cells, indices into cover.total
  std::string through;           // landing vertex for an attracting pair
  CoveringSpec cover;            // the cover the companion lives in
  std::string report;
};

namespace detail {

struct CompanionScan {
  std::optional<std::vector<int>> cells;
  std::string through;
  bool orientation_blocked = false;
  std::string notes;
};

// Merged circle of two complexes, for interval reasoning by index.
struct MergedRing {
  std::vector<EndRef> ends;
  int find(int group, CellEnd ce) const {
    for (size_t i = 0; i < ends.size(); ++i)
      if (ends[i].group == group && ends[i].end == ce) return int(i);
    throw Error("end missing from merged circle");
  }
  // open ccw interval (lo, hi)
  bool contains(int lo, int hi, int x) const {
    int n = int(ends.size());
    int dx = (x - lo + n) % n, dh = (hi - lo + n) % n;
    return dx > 0 && dx < dh;
  }
  bool empty_open(int lo, int hi) const {
    return (lo + 1) % int(ends.size()) == hi;
  }
};

inline CompanionScan scan_companion(const CoveringSpec& S, const Arc& a) {
  CompanionScan out;
  MergedRing ring;
  ring.ends = ends_at_inf(S.base, 0);
  for (auto& e : ends_at_inf(S.total, 1)) ring.ends.push_back(e);
  std::sort(ring.ends.begin(), ring.ends.end(), end_less);

  // a puncture sits where its leash comes down; total leashes cross nothing
  std::map<std::string, int> locator;
  for (auto& p : S.total.punctures)
    locator[p] = ring.find(1, {S.total.cell_idx(S.total.leash.at(p)), 0});

  auto note = [&](const std::string& m) { out.notes += m + "\n"; };

  if (a.cells.size() == 1) {
    int cb = a.cells[0];
    int i0 = ring.find(0, {cb, 0}), i1 = ring.find(0, {cb, 1});
    for (size_t t = 0; t < S.total.cells.size(); ++t) {
      if (S.cell_over[t] != cb || !S.total.cells[t].land.empty()) continue;
      const std::string& id = S.total.cells[t].id;
      if (S.coincident[t] == cb) {
        if (S.cell_orient[t] > 0) {
          note("candidate " + id + ": drawn on " + a.id + ", orientation preserved");
          if (!out.cells) out.cells = std::vector<int>{int(t)};
        } else {
          note("candidate " + id + ": drawn on " + a.id + ", orientation reversed");
          out.orientation_blocked = true;
        }
        continue;
      }
      int j0 = ring.find(1, {int(t), 0}), j1 = ring.find(1, {int(t), 1});
      bool in0 = ring.contains(i0, i1, j0), in1 = ring.contains(i0, i1, j1);
      if (in0 != in1) {
        note("candidate " + id + ": crosses " + a.id);
        continue;
      }
      bool bin0 = ring.contains(j0, j1, i0), bin1 = ring.contains(j0, j1, i1);
      if (bin0 != bin1) {
        note("candidate " + id + ": crosses " + a.id);
        continue;
      }
      // the strip between the arc and the candidate: the facing side of each
      int alo = in0 ? i0 : i1, ahi = in0 ? i1 : i0;
      int blo = bin0 ? j0 : j1, bhi = bin0 ? j1 : j0;
      std::string inside;
      for (auto& [p, li] : locator)
        if (ring.contains(alo, ahi, li) && ring.contains(blo, bhi, li))
          inside += (inside.empty() ? "" : ", ") + p;
      if (!inside.empty()) {
        note("candidate " + id + ": puncture " + inside + " in the strip");
        continue;
      }
      if (S.cell_orient[t] > 0) {
        note("candidate " + id + ": strip clear, orientation preserved");
        if (!out.cells) out.cells = std::vector<int>{int(t)};
      } else {
        note("candidate " + id + ": strip clear, orientation reversed");
        out.orientation_blocked = true;
      }
    }
    return out;
  }

  // attracting: two halves through a landing vertex
  const std::string& va = S.base.cells[a.cells[0]].land;
  out.through = va;
  MergedRing vr;
  vr.ends = ends_at_vertex(S.base, va, 0);
  for (auto& e : ends_at_vertex(S.total, va, 1)) vr.ends.push_back(e);
  std::sort(vr.ends.begin(), vr.ends.end(), end_less);

  auto half_ok = [&](int bcell, int tc, std::string& why) {
    int bi = vr.find(0, {bcell, 1}), ti = vr.find(1, {tc, 1});
    // the germ wedge between the two accesses must hold nothing at all
    bool w1 = vr.empty_open(bi, ti), w2 = vr.empty_open(ti, bi);
    if (!w1 && !w2) {
      why = "no bare wedge at " + va;
      return false;
    }
    // matching interval at infinity, on the side away from the other halves
    int other_b = a.cells[0] == bcell ? a.cells[1] : a.cells[0];
    int eb = ring.find(0, {bcell, 0}), et = ring.find(1, {tc, 0});
    int ob = ring.find(0, {other_b, 0});
    auto clean = [&](int lo, int hi) {
      if (ring.contains(lo, hi, ob)) return false;
      for (size_t u = 0; u < S.total.cells.size(); ++u) {
        if (S.cell_over[u] != other_b || S.total.cells[u].land != va) continue;
        if (ring.contains(lo, hi, ring.find(1, {int(u), 0}))) return false;
      }
      return true;
    };
    bool c1 = clean(eb, et), c2 = clean(et, eb);
    if (c1 == c2) {
      why = c1 ? "ambiguous strip at infinity" : "other half inside the strip";
      return false;
    }
    int lo = c1 ? eb : et, hi = c1 ? et : eb;
    for (auto& [p, li] : locator)
      if (ring.contains(lo, hi, li)) {
        why = "puncture " + p + " in the strip";
        return false;
      }
    return true;
  };

  std::vector<int> over0, over1;
  for (size_t t = 0; t < S.total.cells.size(); ++t) {
    if (S.total.cells[t].land != va) continue;
    if (S.cell_over[t] == a.cells[0]) over0.push_back(int(t));
    if (S.cell_over[t] == a.cells[1]) over1.push_back(int(t));
  }
  for (int t0 : over0)
    for (int t1 : over1) {
      std::string id = S.total.cells[t0].id + "+" + S.total.cells[t1].id;
      std::string why0, why1;
      bool ok0 = half_ok(a.cells[0], t0, why0);
      bool ok1 = half_ok(a.cells[1], t1, why1);
      if (ok0 && ok1) {
        note("candidate " + id + ": both wedges bare, strips clear");
        if (!out.cells) out.cells = std::vector<int>{t0, t1};
      } else {
        note("candidate " + id + ": " + (ok0 ? why1 : why0));
      }
    }
  if (!out.cells) {
    // swapped germs pass exactly when the map turns the arc around
    for (int t0 : over0)
      for (int t1 : over1) {
        std::string why0, why1;
        if (half_ok(a.cells[1], t0, why0) && half_ok(a.cells[0], t1, why1)) {
          note("candidate " + S.total.cells[t0].id + "+" + S.total.cells[t1].id +
               ": germs pair only after swapping halves, orientation reversed");
          out.orientation_blocked = true;
        }
      }
  }
  return out;
}

}  // namespace detail

// Companion of a periodic F0 arc inside an already-composed cover whose level
// is a multiple of the arc's period. When every viable candidate comes back
// orientation-reversed, the square of the cover is searched instead and the
// doubling is reported.
inline StripData find_companion_arc(const CoveringSpec& spec_F, const std::string& arc_id) {
  int ai = spec_F.base.arc_idx(arc_id);
  require(ai >= 0, "unknown arc " + arc_id);
  const Arc& a = spec_F.base.arcs[ai];
  require(a.in_f0, "companions exist for F0 arcs only");
  int p = 0;
  {
    std::string cur = a.id;
    do {
      cur = spec_F.base.arcs[spec_F.base.arc_idx(cur)].maps_to;
      ++p;
    } while (cur != a.id);
  }
  require(spec_F.level > 0 && spec_F.level % p == 0,
          "cover level is not a multiple of the arc period");

  StripData out;
  out.arc = arc_id;
  out.l = spec_F.level / p;

  auto scan = detail::scan_companion(spec_F, a);
  if (scan.cells) {
    out.cells = *scan.cells;
    out.through = scan.through;
    out.cover = spec_F;
    out.report = scan.notes;
    return out;
  }
  if (scan.orientation_blocked) {
    CoveringSpec sq = compose(spec_F, spec_F);
    auto scan2 = detail::scan_companion(sq, a);
    if (scan2.cells) {
      out.doubled = true;
      out.cells = *scan2.cells;
      out.through = scan2.through;
      out.cover = std::move(sq);
      out.report = scan.notes + "orientation reversed at this level; doubling\n" +
                   scan2.notes;
      return out;
    }
  }
  throw Error("no orientation-preserving companion at this l");
}

// ---- derivation from a Hubbard tree -----------------------------------------

// Level-one cover of a unicritical family: lift every base cell through one
// application of z -> z^d + c, reading angles off the sector decomposition cut
// by the d rays over the critical value's access.
inline CoveringSpec derive_unicritical(const PlanarComplex& base, const HubbardTree& tree) {
  int d = tree.degree;
  require(d >= 2, "unsupported configuration: degree below two");

  std::string crit, cv;
  for (auto& v : tree.vertices)
    if (v.is_critical) {
      require(crit.empty(), "unsupported configuration: several critical points");
      crit = v.id;
    }
  if (!crit.empty()) {
    require(tree.vertex_map.count(crit), "unsupported configuration: critical image");
    cv = tree.vertex_map.at(crit);
  } else {
    for (auto& p : base.punctures) {
      bool reached = false;
      for (auto& [v, w] : tree.vertex_map) reached |= w == p;
      if (!reached) {
        require(cv.empty(), "unsupported configuration: several critical values");
        cv = p;
      }
    }
    require(!cv.empty(), "unsupported configuration: no critical value");
    crit = "c0";
  }
  require(base.leash.count(cv), "unsupported configuration: critical value off the family");

  std::map<std::string, std::vector<Frac>> access;  // vertex -> all rays into it
  for (auto& cb : base.cells)
    if (!cb.land.empty()) access[cb.land].push_back(cb.pos[0].th);
  Frac Theta = base.cells[base.cell_idx(base.leash.at(cv))].pos[0].th;

  std::vector<Frac> bnd;  // sector boundaries, ascending
  for (int j = 0; j < d; ++j) bnd.push_back(((Theta + Frac{j, 1}) / d).mod1());
  auto sector_of = [&](const Frac& th) {
    // a boundary ray opens the sector it begins
    int sec = d - 1;
    for (int j = 0; j < d; ++j)
      if (bnd[j] <= th) sec = j;
    return sec;
  };

  std::map<std::string, std::vector<std::string>> tpre;  // base vertex -> tree fiber
  for (auto& [v, w] : tree.vertex_map) tpre[w].push_back(v);

  CoveringSpec out;
  out.base = base;
  out.degree = d;
  out.level = 1;
  out.total.name = base.name + "^1";
  out.total.punctures = base.punctures;
  out.total.period = 0;
  out.vertex_over[crit] = cv;
  if (d > 1) out.local_degree[crit] = d;

  bool crit_is_puncture =
      std::count(base.punctures.begin(), base.punctures.end(), crit) > 0;
  std::set<std::string> vused(base.punctures.begin(), base.punctures.end());
  vused.insert(crit);
  if (!crit_is_puncture) out.total.other_vertices.push_back(crit);
  int fresh_count = 0;
  auto fresh_vertex = [&]() {
    std::string nm;
    do nm = "y" + std::to_string(fresh_count++);
    while (vused.count(nm));
    vused.insert(nm);
    out.total.other_vertices.push_back(nm);
    return nm;
  };

  auto push_rule = [&](Ang& a, const Frac& other_th, const std::string& what) {
    if (a.side != 0) return;
    for (auto& cb : base.cells) {
      bool lands = !cb.land.empty();
      for (int e = 0; e < (lands ? 1 : 2); ++e) {
        if (!(cb.pos[e].th == a.th) || cb.pos[e].side != 0) continue;
        require(!lands, "lift of " + what + " rides a leash ray");
        bool inside = ccw_between(cb.pos[0].th, other_th, cb.pos[1].th);
        a.side = (e == 1) == inside ? -1 : +1;
        return;
      }
    }
  };

  struct Made {
    Cell cell;
    int over, orient, coin;
  };
  std::vector<Made> made;

  for (size_t b = 0; b < base.cells.size(); ++b) {
    const Cell& cb = base.cells[b];
    std::vector<Made> lifts;
    if (cb.land.empty()) {
      for (int j = 0; j < d; ++j) {
        Frac r0, r1;
        int found0 = 0, found1 = 0;
        for (int k = 0; k < d; ++k) {
          Frac c0 = ((cb.pos[0].th + Frac{k, 1}) / d).mod1();
          Frac c1 = ((cb.pos[1].th + Frac{k, 1}) / d).mod1();
          if (sector_of(c0) == j) {
            r0 = c0;
            ++found0;
          }
          if (sector_of(c1) == j) {
            r1 = c1;
            ++found1;
          }
        }
        require(found0 == 1 && found1 == 1, "unsupported configuration: sector pairing");
        Made m;
        m.over = int(b);
        m.orient = 1;
        m.coin = -1;
        m.cell.pos[0] = Ang{r0, cb.pos[0].side, 0};
        m.cell.pos[1] = Ang{r1, cb.pos[1].side, 0};
        // drawn-on copies, straight or turned around
        for (size_t b2 = 0; b2 < base.cells.size() && m.coin < 0; ++b2) {
          const Cell& c2 = base.cells[b2];
          if (!c2.land.empty()) continue;
          auto match = [&](const Ang& x, const Ang& y) {
            return x.th == y.th && x.side == y.side;
          };
          if (match(m.cell.pos[0], c2.pos[0]) && match(m.cell.pos[1], c2.pos[1]))
            m.coin = int(b2);
          else if (match(m.cell.pos[0], c2.pos[1]) && match(m.cell.pos[1], c2.pos[0])) {
            std::swap(m.cell.pos[0], m.cell.pos[1]);
            m.orient = -1;
            m.coin = int(b2);
          }
        }
        if (m.coin >= 0) {
          for (int e = 0; e < 2; ++e) {
            m.cell.pos[e] = base.cells[m.coin].pos[e];
            m.cell.pos[e].depth++;
          }
        } else {
          if (m.cell.pos[1].th < m.cell.pos[0].th) {
            std::swap(m.cell.pos[0], m.cell.pos[1]);
            m.orient = -m.orient;
          }
          push_rule(m.cell.pos[0], m.cell.pos[1].th, cb.id);
          push_rule(m.cell.pos[1], m.cell.pos[0].th, cb.id);
        }
        lifts.push_back(m);
      }
    } else {
      const std::string& x = cb.land;
      // known access angles downstairs pick out the marked preimages
      for (auto& v : tpre[x])
        require(v == crit || access.count(v),
                "unsupported configuration: unmarked preimage of " + x);
      for (int k = 0; k < d; ++k) {
        Frac rk = ((cb.pos[0].th + Frac{k, 1}) / d).mod1();
        Made m;
        m.over = int(b);
        m.orient = 1;
        m.coin = -1;
        m.cell.pos[0] = Ang{rk, cb.pos[0].side, 0};
        std::string land;
        if (x == cv)
          land = crit;
        else {
          for (auto& v : tpre[x]) {
            if (v == crit) continue;
            for (auto& th : access.at(v))
              if (th == rk) {
                require(land.empty() || land == v,
                        "unsupported configuration: shared access over " + x);
                land = v;
              }
          }
          if (land.empty()) land = fresh_vertex();
        }
        m.cell.land = land;
        for (size_t b2 = 0; b2 < base.cells.size() && m.coin < 0; ++b2) {
          const Cell& c2 = base.cells[b2];
          if (c2.land != land) continue;
          if (c2.pos[0].th == rk && c2.pos[0].side == m.cell.pos[0].side)
            m.coin = int(b2);
        }
        if (m.coin >= 0) {
          for (int e = 0; e < 2; ++e) {
            m.cell.pos[e] = base.cells[m.coin].pos[e];
            m.cell.pos[e].depth++;
          }
        } else {
          push_rule(m.cell.pos[0], m.cell.pos[0].th, cb.id);
          m.cell.pos[1] = m.cell.pos[0];  // centers refine this below
        }
        lifts.push_back(m);
      }
    }
    std::sort(lifts.begin(), lifts.end(), [](const Made& a2, const Made& b2) {
      const Ang &pa = a2.cell.pos[0], &pb = b2.cell.pos[0];
      if (!(pa.th == pb.th)) return pa.th < pb.th;
      if (pa.side != pb.side) return pa.side < pb.side;
      return pa.depth < pb.depth;
    });
    char suffix = 'a';
    for (auto& m : lifts) {
      m.cell.id = cb.id + "'" + std::string(1, suffix++);
      made.push_back(m);
    }
  }

  // vertex images and centers; internal angles at centers by elimination
  std::map<std::string, std::string> land_over;
  for (auto& m : made)
    if (!m.cell.land.empty()) land_over[m.cell.land] = base.cells[m.over].land;
  for (auto& [y, x] : land_over)
    if (!out.vertex_over.count(y)) out.vertex_over[y] = x;
  for (auto& p : base.punctures) {
    require(tree.vertex_map.count(p), "unsupported configuration: puncture off the tree");
    out.vertex_over[p] = tree.vertex_map.at(p);
  }
  for (auto& [y, x] : out.vertex_over)
    if (base.centers.count(x)) out.total.centers.insert(y);

  std::map<std::string, std::vector<int>> by_vertex;
  for (size_t i = 0; i < made.size(); ++i)
    if (!made[i].cell.land.empty()) by_vertex[made[i].cell.land].push_back(int(i));
  for (auto& [y, idxs] : by_vertex) {
    if (!out.total.centers.count(y)) continue;
    int m = y == crit ? d : 1;
    std::map<int, std::set<std::string>> used;  // base cell -> internal angles taken
    for (int i : idxs)
      if (made[i].coin >= 0) used[made[i].over].insert(made[i].cell.pos[1].th.str());
    for (int i : idxs) {
      if (made[i].coin >= 0) continue;
      const Frac& phi = base.cells[made[i].over].pos[1].th;
      std::optional<Frac> pick;
      for (int j = 0; j < m; ++j) {
        Frac cand = ((phi + Frac{j, 1}) / m).mod1();
        if (used[made[i].over].count(cand.str())) continue;
        require(!pick, "unsupported configuration: internal angles at " + y);
        pick = cand;
      }
      require(bool(pick), "unsupported configuration: internal angles at " + y);
      used[made[i].over].insert(pick->str());
      made[i].cell.pos[1] = Ang{*pick, 0, 0};
    }
  }

  for (auto& m : made) {
    out.total.cells.push_back(m.cell);
    out.cell_over.push_back(m.over);
    out.cell_orient.push_back(m.orient);
    out.coincident.push_back(m.coin);
  }

  {
    auto er = detail::ends_at_inf(out.total, 0);
    std::sort(er.begin(), er.end(), detail::end_less);
    for (auto& e : er) out.total.rot_inf.push_back(e.end);
    for (auto& v : vused) {
      auto ev = detail::ends_at_vertex(out.total, v, 0);
      if (ev.empty()) continue;
      std::sort(ev.begin(), ev.end(), detail::end_less);
      auto& rot = out.total.rot_at[v];
      for (auto& e : ev) rot.push_back(e.end);
    }
  }

  for (auto& p : out.total.punctures) {
    int bl = base.cell_idx(base.leash.at(p));
    int copy = -1;
    for (size_t t = 0; t < out.total.cells.size() && copy < 0; ++t)
      if (out.coincident[t] == bl) copy = int(t);
    require(copy >= 0, "no drawn copy of the leash of " + p);
    out.total.leash[p] = out.total.cells[copy].id;
  }

  {
    PlanarComplex probe = out.total;
    for (auto& a : base.arcs) {
      if (!a.in_f0) continue;
      const Arc& target = base.arcs[base.arc_idx(a.maps_to)];
      out.designated[a.id] = detail::select_designated(probe, out.cell_over,
                                                       out.coincident, base, a, target);
    }
  }

  std::set<int> paired;
  for (auto& [aid, cd] : out.designated)
    if (cd.size() == 2) paired.insert(cd.begin(), cd.end());
  for (size_t t = 0; t < out.total.cells.size(); ++t)
    if (out.total.cells[t].land.empty())
      out.total.arcs.push_back({out.total.cells[t].id, {int(t)}, "", false, "", ""});
  for (auto& [aid, cd] : out.designated)
    if (cd.size() == 2)
      out.total.arcs.push_back({out.total.cells[cd[0]].id, cd, "", false, "", ""});

  return out;
}

// ---- canonical signature -----------------------------------------------------

// Order cells by their infinity end, rename non-puncture vertices in order of
// first landing, and serialize everything the cover means. Two presentations
// of one cover agree here whatever their labels or orderings.
inline std::string cover_signature(const CoveringSpec& s) {
  size_t nt = s.total.cells.size();
  std::vector<int> order(nt);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    const Ang &pa = s.total.cells[a].pos[0], &pb = s.total.cells[b].pos[0];
    if (!(pa.th == pb.th)) return pa.th < pb.th;
    if (pa.side != pb.side) return pa.side < pb.side;
    return pa.depth < pb.depth;
  });
  std::vector<int> rank(nt);
  for (size_t i = 0; i < nt; ++i) rank[order[i]] = int(i);

  std::set<std::string> pset(s.total.punctures.begin(), s.total.punctures.end());
  std::map<std::string, std::string> rename;
  int next = 0;
  for (int t : order) {
    const std::string& v = s.total.cells[t].land;
    if (v.empty() || pset.count(v) || rename.count(v)) continue;
    rename[v] = "y" + std::to_string(next++);
  }
  auto nm = [&](const std::string& v) { return pset.count(v) ? v : rename.at(v); };

  auto ang = [](const Ang& a) {
    return a.th.str() + (a.side < 0 ? "-" : a.side > 0 ? "+" : "") +
           (a.depth ? "^" + std::to_string(a.depth) : "");
  };
  std::string sig = "deg " + std::to_string(s.degree) + " lvl " +
                    std::to_string(s.level) + "\n";
  for (int t : order) {
    const Cell& c = s.total.cells[t];
    sig += ang(c.pos[0]) + " " + ang(c.pos[1]);
    sig += c.land.empty() ? " -" : " " + nm(c.land);
    sig += " over " + std::to_string(s.cell_over[t]);
    sig += s.cell_orient[t] > 0 ? " +" : " -";
    sig += " on " + std::to_string(s.coincident[t]) + "\n";
  }
  std::map<std::string, std::string> vlines;
  for (auto& [y, x] : s.vertex_over)
    vlines[nm(y)] = x + " ld " + std::to_string(local_deg(s, y)) +
                    (s.total.centers.count(y) ? " center" : "");
  for (auto& [y, line] : vlines) sig += y + " -> " + line + "\n";
  for (auto& [aid, cd] : s.designated) {
    std::vector<int> rs;
    for (int c : cd) rs.push_back(rank[c]);
    std::sort(rs.begin(), rs.end());
    sig += "mark " + aid + ":";
    for (int x : rs) sig += " " + std::to_string(x);
    sig += "\n";
  }
  for (auto& p : s.base.punctures)
    sig += "leash " + p + " " + std::to_string(rank[s.total.cell_idx(s.total.leash.at(p))]) + "\n";
  return sig;
}

}  // namespace curvedyn

#pragma once
// Arc complex on the punctured sphere, stored as a cellulation whose vertices
// are infinity plus the finite marked points. Every cell (edge) has at least
// one end at infinity: separating arcs have both ends there, landing cells
// (leash spokes, or arc halves through a puncture) have end 1 at a finite
// vertex. Faces come out of the rotation systems; they are unpunctured open
// disks, which is what makes curve reduction and keys unambiguous downstream.

#include <algorithm>
#include <array>
#include <map>
#include <memory>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "curvedyn/util.hpp"

namespace curvedyn {

// Ends are (cell, end) with end 0 at infinity always; end 1 is at infinity
// for separating cells and at `land` otherwise.
struct CellEnd {
  int cell = -1;
  int end = 0;
  friend bool operator==(const CellEnd& a, const CellEnd& b) {
    return a.cell == b.cell && a.end == b.end;
  }
};

// Exact circle position of a cell end. `th` is the external angle for ends at
// infinity and for accesses at dendrite landing points, or the internal angle
// of the basin ray at a Fatou-center landing point. Cells that share a single
// ray with another cell are isotoped off it: `side` records which side of the
// shared ray they hug. Fully coincident copies stack up at equal angles and
// are ordered by `depth` (0 for the cell that owns the ray).
struct Ang {
  Frac th;
  int side = 0;
  int depth = 0;
  friend bool operator==(const Ang& a, const Ang& b) {
    return a.th == b.th && a.side == b.side && a.depth == b.depth;
  }
};

struct Cell {
  std::string id;
  std::string land;        // "" when both ends are at infinity
  std::array<Ang, 2> pos;  // [0] at infinity; [1] at infinity or at `land`
};

// Grouping of one or two cells into a separating arc of the family. Two cells
// occur when the arc passes through a puncture (its halves land there).
struct Arc {
  std::string id;
  std::vector<int> cells;
  std::string edge;     // dual tree edge
  bool in_f0 = false;
  std::string maps_to;  // image arc under the map, "" when not tracked
  std::string type;     // "repelling" or "attracting" for F0 arcs
};

struct Topology;

struct PlanarComplex {
  std::string name;
  std::vector<std::string> punctures;
  std::vector<std::string> other_vertices;  // finite non-puncture vertices
  std::vector<Cell> cells;
  std::vector<CellEnd> rot_inf;                       // ccw around infinity
  std::map<std::string, std::vector<CellEnd>> rot_at; // ccw around finite vertices
  std::vector<Arc> arcs;
  int period = 0;                                     // least common F0 period
  std::map<std::string, std::string> leash;           // puncture -> cell id
  std::set<std::string> centers;  // Fatou centers: cells land there along internal rays

  int cell_idx(const std::string& id) const {
    for (size_t i = 0; i < cells.size(); ++i)
      if (cells[i].id == id) return int(i);
    return -1;
  }
  int arc_idx(const std::string& id) const {
    for (size_t i = 0; i < arcs.size(); ++i)
      if (arcs[i].id == id) return int(i);
    return -1;
  }
  bool is_finite_vertex(const std::string& v) const {
    return std::count(punctures.begin(), punctures.end(), v) ||
           std::count(other_vertices.begin(), other_vertices.end(), v);
  }

  // Lazily built combinatorial topology. Build it once (first call) before
  // sharing a complex across threads.
  const Topology& topo() const;

 private:
  mutable std::shared_ptr<const Topology> topo_cache;
};

// Darts: cell c gives dart 2c+1 (end 0 -> end 1) and dart 2c (end 1 -> end 0).
// Side s of a cell is the face left of the dart it exits through:
// side 0 <-> dart 2c+1, side 1 <-> dart 2c.
inline int dart_id(int cell, int toward_end) { return 2 * cell + toward_end; }
inline int dart_cell(int d) { return d / 2; }
inline int dart_toward(int d) { return d % 2; }
inline int side_dart(int cell, int side) { return 2 * cell + 1 - side; }
inline int dart_side(int d) { return 1 - dart_toward(d); }

struct Topology {
  std::vector<std::vector<int>> faces;  // face -> darts in boundary order
  std::vector<int> face_of_dart;        // dart -> face
  std::vector<int> pos_in_face;         // dart -> index within its face
  std::vector<int> merged_of_face;      // face -> merged face (spokes erased)
  std::vector<std::vector<int>> merged_faces;           // merged -> faces
  std::vector<std::vector<std::string>> merged_content; // merged -> punctures inside
  std::map<std::string, std::set<int>> star;            // finite vertex -> faces around it
  std::vector<int> arc_of_cell;         // cell -> arc index, -1 for spokes

  int face_of_side(int cell, int side) const { return face_of_dart[side_dart(cell, side)]; }
};

namespace detail {

// One cell end placed on a circle (at infinity or around a finite vertex),
// together with the angle its other end sits at. Sorting EndRefs is how
// rotation orders are derived from exact positions, and how two complexes
// over the same sphere get interleaved onto one circle.
struct EndRef {
  Ang at;
  Frac other;     // circle angle of the cell's far end (own angle if it lands)
  int group = 0;  // final tie-break, used by overlays to keep sort stable
  CellEnd end;
};

// ccw order around a circle, angles increasing. Where several ends share a
// ray, minus-pushed ends come first, then the coincident stack by depth, then
// plus-pushed ends. A pushed group nests by far endpoints: the chord whose
// far end is ccw-closer to the shared ray is squeezed tightest against it,
// so it sorts first. That is the only crossing-free arrangement.
inline bool end_less(const EndRef& x, const EndRef& y) {
  if (!(x.at.th == y.at.th)) return x.at.th < y.at.th;
  if (x.at.side != y.at.side) return x.at.side < y.at.side;
  if (x.at.side != 0) {
    Frac dx = x.at.side < 0 ? ccw_dist(x.other, x.at.th) : ccw_dist(x.at.th, x.other);
    Frac dy = y.at.side < 0 ? ccw_dist(y.other, y.at.th) : ccw_dist(y.at.th, y.other);
    if (dx != dy) return dx < dy;
  }
  if (x.at.depth != y.at.depth) return x.at.depth < y.at.depth;
  if (x.group != y.group) return x.group < y.group;
  if (x.end.cell != y.end.cell) return x.end.cell < y.end.cell;
  return x.end.end < y.end.end;
}

inline bool same_cyclic_order(std::vector<EndRef> ends, const std::vector<CellEnd>& rot) {
  if (ends.size() != rot.size()) return false;
  if (ends.empty()) return true;
  std::sort(ends.begin(), ends.end(), end_less);
  size_t off = 0;
  while (off < ends.size() && !(ends[off].end == rot[0])) ++off;
  if (off == ends.size()) return false;
  for (size_t i = 0; i < ends.size(); ++i)
    if (!(ends[(off + i) % ends.size()].end == rot[i])) return false;
  return true;
}

// All ends of cx on the circle at infinity / around finite vertex v.
inline std::vector<EndRef> ends_at_inf(const PlanarComplex& cx, int group = 0) {
  std::vector<EndRef> out;
  for (size_t c = 0; c < cx.cells.size(); ++c) {
    const Cell& cl = cx.cells[c];
    bool lands = !cl.land.empty();
    out.push_back({cl.pos[0], lands ? cl.pos[0].th : cl.pos[1].th, group, {int(c), 0}});
    if (!lands) out.push_back({cl.pos[1], cl.pos[0].th, group, {int(c), 1}});
  }
  return out;
}
inline std::vector<EndRef> ends_at_vertex(const PlanarComplex& cx, const std::string& v,
                                          int group = 0) {
  std::vector<EndRef> out;
  for (size_t c = 0; c < cx.cells.size(); ++c)
    if (cx.cells[c].land == v)
      out.push_back({cx.cells[c].pos[1], cx.cells[c].pos[1].th, group, {int(c), 1}});
  return out;
}

// The boundary walk: arriving at the circle at infinity, the face continues
// along the previous entry of the ccw rotation; arriving at a finite vertex it
// continues along the next one. (Disjoint arcs between the outer circle and an
// interior point keep their cyclic order, so the two circles bound each face
// corner from opposite sides.) This orientation matches the hand-checked face
// tables of the builtin complexes.
inline int next_dart(const PlanarComplex& cx, int d) {
  int c = dart_cell(d), t = dart_toward(d);
  bool at_vertex = t == 1 && !cx.cells[c].land.empty();
  const std::vector<CellEnd>* rot =
      at_vertex ? &cx.rot_at.at(cx.cells[c].land) : &cx.rot_inf;
  int pos = -1;
  for (size_t i = 0; i < rot->size(); ++i)
    if ((*rot)[i] == CellEnd{c, t}) pos = int(i);
  require(pos >= 0, "rotation data missing end of cell " + cx.cells[c].id);
  int n = int(rot->size());
  const CellEnd& over = (*rot)[(pos + (at_vertex ? 1 : n - 1)) % n];
  return dart_id(over.cell, 1 - over.end);
}

}  // namespace detail

inline Topology build_topology(const PlanarComplex& cx) {
  Topology t;
  int nd = 2 * int(cx.cells.size());
  t.face_of_dart.assign(nd, -1);
  t.pos_in_face.assign(nd, -1);
  for (int d0 = 0; d0 < nd; ++d0) {
    if (t.face_of_dart[d0] >= 0) continue;
    int f = int(t.faces.size());
    t.faces.push_back({});
    int d = d0;
    do {
      require(t.face_of_dart[d] < 0, "face traversal revisits a dart");
      t.face_of_dart[d] = f;
      t.pos_in_face[d] = int(t.faces[f].size());
      t.faces[f].push_back(d);
      d = detail::next_dart(cx, d);
    } while (d != d0);
  }

  t.arc_of_cell.assign(cx.cells.size(), -1);
  for (size_t a = 0; a < cx.arcs.size(); ++a)
    for (int c : cx.arcs[a].cells) t.arc_of_cell[c] = int(a);

  // merge faces across spoke cells
  std::vector<int> uf(t.faces.size());
  for (size_t i = 0; i < uf.size(); ++i) uf[i] = int(i);
  auto find = [&](int x) {
    while (uf[x] != x) x = uf[x] = uf[uf[x]];
    return x;
  };
  for (size_t c = 0; c < cx.cells.size(); ++c)
    if (t.arc_of_cell[c] < 0) {
      int fa = find(t.face_of_dart[dart_id(int(c), 0)]);
      int fb = find(t.face_of_dart[dart_id(int(c), 1)]);
      if (fa != fb) uf[std::max(fa, fb)] = std::min(fa, fb);
    }
  std::map<int, int> root_to_merged;
  t.merged_of_face.assign(t.faces.size(), -1);
  for (size_t f = 0; f < t.faces.size(); ++f) {
    int r = find(int(f));
    if (!root_to_merged.count(r)) {
      root_to_merged[r] = int(t.merged_faces.size());
      t.merged_faces.push_back({});
    }
    t.merged_of_face[f] = root_to_merged[r];
    t.merged_faces[t.merged_of_face[f]].push_back(int(f));
  }

  for (auto& [v, rot] : cx.rot_at)
    for (auto& e : rot) {
      t.star[v].insert(t.face_of_dart[dart_id(e.cell, 0)]);
      t.star[v].insert(t.face_of_dart[dart_id(e.cell, 1)]);
    }

  t.merged_content.assign(t.merged_faces.size(), {});
  for (auto& p : cx.punctures) {
    auto it = t.star.find(p);
    require(it != t.star.end(), "puncture " + p + " has no landing cell");
    std::set<int> merged;
    for (int f : it->second) merged.insert(t.merged_of_face[f]);
    if (merged.size() == 1) t.merged_content[*merged.begin()].push_back(p);
  }
  return t;
}

inline const Topology& PlanarComplex::topo() const {
  if (!topo_cache) topo_cache = std::make_shared<const Topology>(build_topology(*this));
  return *topo_cache;
}

// Region adjacent to an arc once the arc is deleted: the union of merged
// faces touching its cells. The arc is redundant when that union would hold
// at most one puncture, counting punctures released off the arc itself.
inline bool arc_removable(const PlanarComplex& cx, const Arc& arc) {
  const Topology& t = cx.topo();
  std::set<int> region;
  for (int c : arc.cells) {
    region.insert(t.merged_of_face[t.face_of_side(c, 0)]);
    region.insert(t.merged_of_face[t.face_of_side(c, 1)]);
  }
  int count = 0;
  for (auto& p : cx.punctures) {
    std::set<int> merged;
    for (int f : t.star.at(p)) merged.insert(t.merged_of_face[f]);
    bool inside = true;
    for (int m : merged)
      if (!region.count(m)) inside = false;
    if (inside) ++count;
  }
  return count <= 1;
}

struct Separation {
  std::set<std::string> side0, side1, on_boundary;
};

namespace detail {

// Components of the face adjacency graph once a set of cells is uncrossable.
inline std::pair<std::vector<int>, int> face_components(const Topology& t,
                                                        const std::set<int>& blocked) {
  std::vector<int> comp(t.faces.size(), -1);
  int labels = 0;
  for (size_t f0 = 0; f0 < t.faces.size(); ++f0) {
    if (comp[f0] >= 0) continue;
    int label = labels++;
    std::vector<int> stack{int(f0)};
    comp[f0] = label;
    while (!stack.empty()) {
      int f = stack.back();
      stack.pop_back();
      for (int d : t.faces[f]) {
        int c = dart_cell(d);
        if (blocked.count(c)) continue;
        int g = t.face_of_dart[dart_id(c, 1 - dart_toward(d))];
        if (comp[g] < 0) {
          comp[g] = label;
          stack.push_back(g);
        }
      }
    }
  }
  return {comp, labels};
}

}  // namespace detail

// Split the punctures by the two sides of one arc: flood fill over faces,
// crossing every cell except the arc's own.
inline Separation separation_query(const PlanarComplex& cx, const std::string& arc_id) {
  int ai = cx.arc_idx(arc_id);
  require(ai >= 0, "unknown arc " + arc_id);
  const Arc& arc = cx.arcs[ai];
  const Topology& t = cx.topo();

  std::set<int> blocked(arc.cells.begin(), arc.cells.end());
  auto [comp, labels] = detail::face_components(t, blocked);
  require(labels == 2, "arc does not separate: " + arc_id);

  int side0_label = comp[t.face_of_side(arc.cells[0], 0)];
  Separation out;
  std::set<std::string> arc_lands;
  for (int c : arc.cells)
    if (!cx.cells[c].land.empty()) arc_lands.insert(cx.cells[c].land);
  for (auto& p : cx.punctures) {
    if (arc_lands.count(p)) {
      out.on_boundary.insert(p);
      continue;
    }
    int f = *t.star.at(p).begin();
    (comp[f] == side0_label ? out.side0 : out.side1).insert(p);
  }
  return out;
}

inline Report validate_complex(const PlanarComplex& cx) {
  Report r;
  std::set<std::string> vset;
  for (auto& p : cx.punctures)
    if (!vset.insert(p).second) r.fail("duplicate vertex " + p);
  for (auto& v : cx.other_vertices)
    if (!vset.insert(v).second) r.fail("duplicate vertex " + v);

  std::set<std::string> cset;
  for (auto& c : cx.cells) {
    if (!cset.insert(c.id).second) r.fail("duplicate cell " + c.id);
    if (!c.land.empty() && !vset.count(c.land))
      r.fail("cell " + c.id + " lands at unknown vertex " + c.land);
  }
  for (auto& v : cx.centers)
    if (!vset.count(v)) r.fail("center " + v + " is not a vertex");
  if (!r.pass()) return r;

  // rotation coverage: each end appears exactly once in the right system
  std::vector<std::array<int, 2>> seen(cx.cells.size(), {0, 0});
  for (auto& e : cx.rot_inf) {
    if (e.cell < 0 || e.cell >= int(cx.cells.size()) || e.end < 0 || e.end > 1) {
      r.fail("rotation at infinity lists a bad end");
      return r;
    }
    if (e.end == 1 && !cx.cells[e.cell].land.empty())
      r.fail("rotation at infinity lists landing end of " + cx.cells[e.cell].id);
    seen[e.cell][e.end]++;
  }
  for (auto& [v, rot] : cx.rot_at) {
    if (!vset.count(v)) r.fail("rotation at unknown vertex " + v);
    for (auto& e : rot) {
      if (e.cell < 0 || e.cell >= int(cx.cells.size()) || e.end != 1 ||
          cx.cells[e.cell].land != v) {
        r.fail("rotation at " + v + " lists a bad end");
        return r;
      }
      seen[e.cell][e.end]++;
    }
  }
  for (size_t c = 0; c < cx.cells.size(); ++c)
    if (seen[c][0] != 1 || seen[c][1] != 1)
      r.fail("cell " + cx.cells[c].id + " ends not listed exactly once");
  for (auto& v : vset)
    if (!cx.rot_at.count(v) || cx.rot_at.at(v).empty())
      r.fail("finite vertex " + v + " has no landing cell");
  if (!r.pass()) return r;

  // the rotation systems must agree with the exact circle positions, and no
  // two ends may occupy the same position outright (stacked copies of one ray
  // carry distinct depths, pushed-off neighbors distinct sides)
  {
    auto check_circle = [&](std::vector<detail::EndRef> ends,
                            const std::vector<CellEnd>& rot, const std::string& where) {
      std::sort(ends.begin(), ends.end(), detail::end_less);
      for (size_t i = 0; i + 1 < ends.size(); ++i)
        if (ends[i].at == ends[i + 1].at)
          r.fail("ends of " + cx.cells[ends[i].end.cell].id + " and " +
                 cx.cells[ends[i + 1].end.cell].id + " collide " + where);
      if (!detail::same_cyclic_order(ends, rot))
        r.fail("rotation " + where + " does not match circle positions");
    };
    check_circle(detail::ends_at_inf(cx), cx.rot_inf, "at infinity");
    for (auto& [v, rot] : cx.rot_at)
      check_circle(detail::ends_at_vertex(cx, v), rot, "at " + v);
  }
  if (!r.pass()) return r;

  const Topology& t = cx.topo();
  long long V = 1 + (long long)vset.size();
  long long E = (long long)cx.cells.size();
  long long F = (long long)t.faces.size();
  if (V - E + F != 2)
    r.fail("Euler relation violated: V-E+F = " + std::to_string(V - E + F));

  for (size_t m = 0; m < t.merged_content.size(); ++m)
    if (t.merged_content[m].size() > 1)
      r.fail("face with " + std::to_string(t.merged_content[m].size()) + " punctures");

  std::set<std::string> aset;
  std::set<int> arc_cells;
  for (auto& a : cx.arcs) {
    if (!aset.insert(a.id).second) r.fail("duplicate arc " + a.id);
    if (a.cells.empty() || a.cells.size() > 2)
      r.fail("arc " + a.id + " must group one or two cells");
    for (int c : a.cells) {
      if (c < 0 || c >= int(cx.cells.size())) {
        r.fail("arc " + a.id + " references a bad cell");
        return r;
      }
      if (!arc_cells.insert(c).second) r.fail("cell in two arcs: " + cx.cells[c].id);
    }
    if (a.cells.size() == 1 && !cx.cells[a.cells[0]].land.empty())
      r.fail("arc " + a.id + ": a single-cell arc must not land");
    if (a.cells.size() == 2 &&
        (cx.cells[a.cells[0]].land.empty() ||
         cx.cells[a.cells[0]].land != cx.cells[a.cells[1]].land))
      r.fail("arc " + a.id + ": halves must land at one puncture");
    if (a.in_f0) {
      if (a.maps_to.empty() || cx.arc_idx(a.maps_to) < 0 ||
          !cx.arcs[cx.arc_idx(a.maps_to)].in_f0)
        r.fail("arc " + a.id + ": F0 arcs must map into F0");
      if (a.type != "repelling" && a.type != "attracting")
        r.fail("arc " + a.id + ": F0 arcs carry a repelling/attracting tag");
    }
  }

  // F0 must be a union of arc_map cycles whose lcm of lengths is `period`
  if (r.pass()) {
    long long p = 1;
    for (auto& a : cx.arcs) {
      if (!a.in_f0) continue;
      std::string cur = a.id;
      int len = 0;
      do {
        cur = cx.arcs[cx.arc_idx(cur)].maps_to;
        ++len;
        if (len > int(cx.arcs.size())) {
          r.fail("arc_map does not cycle on F0");
          break;
        }
      } while (cur != a.id);
      p = std::lcm(p, (long long)len);
    }
    bool any_f0 = false;
    for (auto& a : cx.arcs) any_f0 |= a.in_f0;
    if (any_f0 && p != cx.period)
      r.fail("period mismatch: arc_map cycles give " + std::to_string(p));
  }

  for (auto& p : cx.punctures) {
    auto it = cx.leash.find(p);
    if (it == cx.leash.end()) {
      r.fail("puncture " + p + " has no leash");
      continue;
    }
    int c = cx.cell_idx(it->second);
    if (c < 0 || cx.cells[c].land != p)
      r.fail("leash of " + p + " must land there");
  }

  if (r.pass())
    for (auto& a : cx.arcs)
      if (arc_removable(cx, a))
        r.warn("arc " + a.id + " removable (family not minimal)");
  return r;
}

// Deterministic display names for faces, used by the word format and reports.
inline std::string face_name(int f) { return "F" + std::to_string(f); }

}  // namespace curvedyn

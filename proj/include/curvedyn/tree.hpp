#pragma once
// Invariant tree of a PCF polynomial: validation, edge transition matrix,
// edge classification (expanding / attracting / transient), covering time.

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "curvedyn/util.hpp"

namespace curvedyn {

struct TreeVertex {
  std::string id;
  int local_degree = 1;
  bool is_critical = false;
  bool is_postcritical = false;
};

struct TreeEdge {
  std::string id;
  std::string a, b;  // stored orientation a -> b
};

// One step of an edge-image path: `edge` traversed a->b, or b->a when rev.
struct Dedge {
  std::string edge;
  bool rev = false;
};

struct HubbardTree {
  std::string name;
  int degree = 2;
  std::vector<TreeVertex> vertices;
  std::vector<TreeEdge> edges;
  std::map<std::string, std::vector<std::string>> rotation;  // ccw edges at vertex
  std::map<std::string, std::string> vertex_map;
  std::map<std::string, std::vector<Dedge>> edge_map;

  const TreeVertex* vertex(const std::string& id) const {
    for (auto& v : vertices)
      if (v.id == id) return &v;
    return nullptr;
  }
  const TreeEdge* edge(const std::string& id) const {
    for (auto& e : edges)
      if (e.id == id) return &e;
    return nullptr;
  }
  int edge_index(const std::string& id) const {
    for (size_t i = 0; i < edges.size(); ++i)
      if (edges[i].id == id) return int(i);
    return -1;
  }
};

inline std::string dedge_from(const HubbardTree& t, const Dedge& d) {
  const TreeEdge* e = t.edge(d.edge);
  return d.rev ? e->b : e->a;
}
inline std::string dedge_to(const HubbardTree& t, const Dedge& d) {
  const TreeEdge* e = t.edge(d.edge);
  return d.rev ? e->a : e->b;
}

inline Report validate_tree(const HubbardTree& t) {
  Report r;
  std::set<std::string> vids;
  for (auto& v : t.vertices) {
    if (!vids.insert(v.id).second) r.fail("duplicate vertex id " + v.id);
    if (v.local_degree < 1) r.fail("local degree < 1 at " + v.id);
    if (v.is_critical != (v.local_degree >= 2))
      r.fail("local degree flag mismatch at " + v.id);
  }

  std::set<std::string> eids;
  for (auto& e : t.edges) {
    if (!eids.insert(e.id).second) r.fail("duplicate edge id " + e.id);
    if (!vids.count(e.a) || !vids.count(e.b))
      r.fail("edge " + e.id + " references unknown vertex");
    if (e.a == e.b) r.fail("edge " + e.id + " is a loop");
  }

  // Tree shape: |E| = |V| - 1 and connected.
  if (t.edges.size() + 1 != t.vertices.size()) {
    r.fail("not a tree: edge count");
  } else if (!t.vertices.empty()) {
    std::map<std::string, std::vector<std::string>> adj;
    for (auto& e : t.edges) {
      adj[e.a].push_back(e.b);
      adj[e.b].push_back(e.a);
    }
    std::set<std::string> seen{t.vertices[0].id};
    std::vector<std::string> stack{t.vertices[0].id};
    while (!stack.empty()) {
      auto v = stack.back();
      stack.pop_back();
      for (auto& w : adj[v])
        if (seen.insert(w).second) stack.push_back(w);
    }
    if (seen.size() != t.vertices.size()) r.fail("not a tree: disconnected");
  }

  // Critical multiplicity budget. A strict excess is inconsistent with the
  // degree; a deficit only means some critical points were left off the tree
  // (legitimate when no postcritical point lives there), so it warns.
  long long budget = 0;
  for (auto& v : t.vertices) budget += v.local_degree - 1;
  if (budget > t.degree - 1)
    r.fail("degree budget: critical multiplicities sum to " + std::to_string(budget) +
           " > d-1 = " + std::to_string(t.degree - 1));
  else if (budget < t.degree - 1)
    r.warn("degree budget: critical multiplicities sum to " + std::to_string(budget) +
           " < d-1 = " + std::to_string(t.degree - 1) +
           " (critical points not on the tree)");

  for (auto& v : t.vertices) {
    auto it = t.vertex_map.find(v.id);
    if (it == t.vertex_map.end()) {
      r.fail("vertex_map missing " + v.id);
      continue;
    }
    const TreeVertex* img = t.vertex(it->second);
    if (!img) {
      r.fail("vertex_map image unknown for " + v.id);
      continue;
    }
    if (v.is_postcritical && !img->is_postcritical)
      r.fail("postcritical set not forward-invariant at " + v.id);
  }

  for (auto& e : t.edges) {
    auto it = t.edge_map.find(e.id);
    if (it == t.edge_map.end()) {
      r.fail("edge_map missing " + e.id);
      continue;
    }
    const auto& path = it->second;
    if (path.empty()) {
      r.fail("edge_map empty for " + e.id);
      continue;
    }
    bool ok = true;
    for (auto& d : path)
      if (!t.edge(d.edge)) {
        r.fail("edge_map of " + e.id + " references unknown edge " + d.edge);
        ok = false;
      }
    if (!ok) continue;
    for (size_t i = 0; i + 1 < path.size(); ++i)
      if (dedge_to(t, path[i]) != dedge_from(t, path[i + 1])) ok = false;
    auto fa = t.vertex_map.count(e.a) ? t.vertex_map.at(e.a) : "";
    auto fb = t.vertex_map.count(e.b) ? t.vertex_map.at(e.b) : "";
    if (!ok || dedge_from(t, path.front()) != fa || dedge_to(t, path.back()) != fb)
      r.fail("edge_map endpoint mismatch at " + e.id);
  }

  // Rotation lists, where present, must permute the incident edges.
  for (auto& v : t.vertices) {
    std::set<std::string> incident;
    for (auto& e : t.edges)
      if (e.a == v.id || e.b == v.id) incident.insert(e.id);
    auto it = t.rotation.find(v.id);
    if (it == t.rotation.end()) {
      if (incident.size() >= 2) r.fail("rotation missing at " + v.id);
      continue;
    }
    std::set<std::string> listed(it->second.begin(), it->second.end());
    if (listed != incident || listed.size() != it->second.size())
      r.fail("rotation at " + v.id + " does not permute incident edges");
  }
  return r;
}

struct TransitionMatrix {
  std::vector<std::string> edge_order;            // declaration order
  std::vector<std::vector<long long>> m;          // m[row e'][col e] = traversals of e' by image of e
};

inline TransitionMatrix transition_matrix(const HubbardTree& t) {
  TransitionMatrix tm;
  for (auto& e : t.edges) tm.edge_order.push_back(e.id);
  size_t n = t.edges.size();
  tm.m.assign(n, std::vector<long long>(n, 0));
  for (size_t c = 0; c < n; ++c)
    for (auto& d : t.edge_map.at(t.edges[c].id))
      tm.m[t.edge_index(d.edge)][c] += 1;
  return tm;
}

enum class EdgeClass { Expanding, Attracting, Transient };

inline const char* edge_class_name(EdgeClass c) {
  switch (c) {
    case EdgeClass::Expanding: return "Expanding";
    case EdgeClass::Attracting: return "Attracting";
    default: return "Transient";
  }
}

namespace detail {

// Strongly connected components of the edge-coverage digraph, smallest first
// in reverse topological order (Kosaraju; the graphs here are tiny).
inline std::vector<std::vector<int>> sccs(const std::vector<std::vector<long long>>& m) {
  int n = int(m.size());
  std::vector<std::vector<int>> fwd(n), bwd(n);
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v)
      if (m[v][u] > 0) {
        fwd[u].push_back(v);
        bwd[v].push_back(u);
      }
  std::vector<int> order;
  std::vector<char> seen(n, 0);
  for (int s = 0; s < n; ++s) {
    if (seen[s]) continue;
    // iterative post-order
    std::vector<std::pair<int, size_t>> st{{s, 0}};
    seen[s] = 1;
    while (!st.empty()) {
      auto& [u, i] = st.back();
      if (i < fwd[u].size()) {
        int v = fwd[u][i++];
        if (!seen[v]) {
          seen[v] = 1;
          st.push_back({v, 0});
        }
      } else {
        order.push_back(u);
        st.pop_back();
      }
    }
  }
  std::vector<std::vector<int>> comps;
  std::vector<char> used(n, 0);
  for (int i = n - 1; i >= 0; --i) {
    int s = order[i];
    if (used[s]) continue;
    std::vector<int> comp{s};
    used[s] = 1;
    for (size_t k = 0; k < comp.size(); ++k)
      for (int v : bwd[comp[k]])
        if (!used[v]) {
          used[v] = 1;
          comp.push_back(v);
        }
    std::sort(comp.begin(), comp.end());
    comps.push_back(comp);
  }
  return comps;
}

// gcd of directed cycle lengths inside one strongly connected component.
inline long long cycle_gcd(const std::vector<std::vector<long long>>& m,
                           const std::vector<int>& comp) {
  std::set<int> in(comp.begin(), comp.end());
  std::map<int, long long> level;
  std::vector<int> queue{comp[0]};
  level[comp[0]] = 0;
  for (size_t k = 0; k < queue.size(); ++k) {
    int u = queue[k];
    for (int v : comp)
      if (m[v][u] > 0 && !level.count(v)) {
        level[v] = level[u] + 1;
        queue.push_back(v);
      }
  }
  long long g = 0;
  for (int u : comp)
    for (int v : comp)
      if (m[v][u] > 0) g = std::gcd(g, level[u] + 1 - level[v]);
  return g < 0 ? -g : g;
}

}  // namespace detail

// Classification is per strongly connected component of the coverage digraph.
// A component with a cycle is Expanding as soon as some member's image covers
// the component with multiplicity >= 2 (the excess pumps around the cycle);
// otherwise the component is a homeomorphically periodic edge cycle, which is
// Attracting exactly when its orbit touches a super-attracting vertex cycle.
inline std::map<std::string, EdgeClass> classify_edges(const HubbardTree& t) {
  auto tm = transition_matrix(t);
  int n = int(tm.edge_order.size());
  auto comps = detail::sccs(tm.m);

  // periodic vertices whose vertex cycle holds a critical point
  std::set<std::string> super;
  for (auto& v : t.vertices) {
    std::vector<std::string> orbit{v.id};
    std::string cur = v.id;
    bool periodic = false;
    for (size_t k = 0; k <= t.vertices.size(); ++k) {
      cur = t.vertex_map.at(cur);
      if (cur == v.id) {
        periodic = true;
        break;
      }
      orbit.push_back(cur);
    }
    if (!periodic) continue;
    for (auto& w : orbit)
      if (t.vertex(w)->is_critical) {
        super.insert(v.id);
        break;
      }
  }

  std::map<std::string, EdgeClass> cls;
  for (auto& comp : comps) {
    bool cycle = comp.size() > 1;
    if (!cycle)
      cycle = tm.m[comp[0]][comp[0]] > 0;
    if (!cycle) {
      cls[tm.edge_order[comp[0]]] = EdgeClass::Transient;
      continue;
    }
    long long max_out = 0;
    for (int u : comp) {
      long long out = 0;
      for (int v : comp) out += tm.m[v][u];
      max_out = std::max(max_out, out);
    }
    if (max_out >= 2) {
      for (int u : comp) cls[tm.edge_order[u]] = EdgeClass::Expanding;
      continue;
    }
    bool touches_super = false;
    for (int u : comp) {
      const TreeEdge& e = t.edges[u];
      if (super.count(e.a) || super.count(e.b)) touches_super = true;
    }
    if (!touches_super)
      throw Error("periodic degree-1 edge cycle has no super-attracting endpoint");
    for (int u : comp) cls[tm.edge_order[u]] = EdgeClass::Attracting;
  }
  (void)n;
  return cls;
}

// q: the eventual return period of the expanding/attracting edges, i.e. the
// lcm over cyclic components of the gcd of their cycle lengths. At any
// multiple of q (large enough), an expanding edge covers itself >= 2 times
// and an attracting edge returns homeomorphically.
// t: the least multiple of q by which every edge's image path has traversed
// some expanding or attracting edge.
inline std::pair<long long, long long> covering_time(const HubbardTree& t) {
  auto tm = transition_matrix(t);
  auto cls = classify_edges(t);
  int n = int(tm.edge_order.size());
  require(n > 0, "stabilization failed");

  long long q = 1;
  for (auto& comp : detail::sccs(tm.m)) {
    bool cycle = comp.size() > 1 || tm.m[comp[0]][comp[0]] > 0;
    if (!cycle) continue;
    q = std::lcm(q, detail::cycle_gcd(tm.m, comp));
  }

  std::vector<char> target(n, 0);
  for (int i = 0; i < n; ++i)
    target[i] = cls.at(tm.edge_order[i]) != EdgeClass::Transient;

  long long max_k = 1;
  for (int e = 0; e < n; ++e) {
    std::set<int> cur{e};
    long long k_e = 0;
    for (int k = 1; k <= n; ++k) {
      std::set<int> next;
      for (int u : cur)
        for (int v = 0; v < n; ++v)
          if (tm.m[v][u] > 0) next.insert(v);
      cur = std::move(next);
      bool hit = false;
      for (int u : cur)
        if (target[u]) hit = true;
      if (hit) {
        k_e = k;
        break;
      }
    }
    require(k_e > 0, "stabilization failed");
    max_k = std::max(max_k, k_e);
  }

  long long t_out = ((max_k + q - 1) / q) * q;
  return {q, t_out};
}

}  // namespace curvedyn

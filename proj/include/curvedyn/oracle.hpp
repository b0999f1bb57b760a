#pragma once
// Reference implementations used to cross-check the fast paths. Reduction is
// claimed confluent (any order of bigon removals reaches one normal form);
// the oracle explores every removal order exhaustively instead of trusting
// the first-found pass. Bigon insertion builds messy representatives of a
// known class for round-trip tests.

#include <map>
#include <set>
#include <string>
#include <vector>

#include "curvedyn/curve.hpp"

namespace curvedyn {
namespace oracle {

// Every curve obtained from cv by deleting one bigon pair.
inline std::vector<NormalCurve> bigon_removals(const NormalCurve& cv) {
  std::vector<NormalCurve> out;
  const auto& tr = cv.trace;
  size_t n = tr.size();
  if (n < 2) return out;
  for (size_t i = 0; i < n; ++i) {
    size_t j = (i + 1) % n;
    const Step &a = tr[i], &b = tr[j];
    if (a.cell != b.cell || b.side != 1 - a.side) continue;
    if (a.rank != b.rank + 1 && b.rank != a.rank + 1) continue;
    NormalCurve nc = cv;
    int cell = a.cell, hi = std::max(a.rank, b.rank);
    if (j > i) {
      nc.trace.erase(nc.trace.begin() + j);
      nc.trace.erase(nc.trace.begin() + i);
    } else {
      nc.trace.erase(nc.trace.begin() + i);
      nc.trace.erase(nc.trace.begin() + j);
    }
    for (auto& s : nc.trace)
      if (s.cell == cell && s.rank > hi) s.rank -= 2;
    out.push_back(std::move(nc));
  }
  return out;
}

// Every embedded curve obtained by pushing one chord of cv across a cell and
// back (inserting an innermost bigon). Candidates that fail normal-position
// validation are dropped.
inline std::vector<NormalCurve> bigon_insertions(const PlanarComplex& cx,
                                                 const NormalCurve& cv) {
  std::vector<NormalCurve> out;
  const Topology& t = cx.topo();
  size_t n = cv.trace.size();
  if (n == 0) return out;
  std::map<int, int> n_on_cell;
  for (auto& s : cv.trace) n_on_cell[s.cell]++;
  for (size_t k = 0; k < n; ++k) {
    int f = t.face_of_dart[exit_dart(cv.trace[k])];
    for (int d : t.faces[f]) {
      int c = dart_cell(d);
      int sx = dart_toward(d);  // entry through dart d means exiting side sx
      int m = n_on_cell.count(c) ? n_on_cell[c] : 0;
      for (int p = 0; p <= m; ++p)
        for (int first_low = 0; first_low < 2; ++first_low) {
          NormalCurve nc = cv;
          for (auto& s : nc.trace)
            if (s.cell == c && s.rank >= p) s.rank += 2;
          Step x{c, sx, first_low ? p : p + 1};
          Step y{c, 1 - sx, first_low ? p + 1 : p};
          nc.trace.insert(nc.trace.begin() + k + 1, {x, y});
          if (validate_curve(cx, nc).pass()) out.push_back(std::move(nc));
        }
    }
  }
  return out;
}

// All bigon-free forms reachable from cv by removal sequences, keyed.
inline std::map<std::string, NormalCurve> normal_forms(const PlanarComplex& cx,
                                                       const NormalCurve& cv,
                                                       long long budget) {
  std::map<std::string, NormalCurve> forms;
  std::set<std::string> seen;
  std::vector<NormalCurve> stack{cv};
  seen.insert(canonical_key(cx, cv));
  long long states = 1;
  while (!stack.empty()) {
    NormalCurve cur = std::move(stack.back());
    stack.pop_back();
    auto next = bigon_removals(cur);
    if (next.empty()) {
      forms[canonical_key(cx, cur)] = cur;
      continue;
    }
    for (auto& nc : next) {
      std::string key = canonical_key(cx, nc);
      if (!seen.insert(key).second) continue;
      require(++states <= budget, "budget exceeded");
      stack.push_back(std::move(nc));
    }
  }
  return forms;
}

// Minimal representative by exhaustive search over removal orders. Ties (which
// would mean reduction is not confluent) resolve to the smallest key.
inline NormalCurve brute_force_minimize(const PlanarComplex& cx, const NormalCurve& cv,
                                        long long budget) {
  auto forms = normal_forms(cx, cv, budget);
  require(!forms.empty(), "budget exceeded");
  const NormalCurve* best = nullptr;
  for (auto& [key, nc] : forms)
    if (!best || complexity(cx, nc) < complexity(cx, *best)) best = &nc;
  return *best;
}

}  // namespace oracle
}  // namespace curvedyn

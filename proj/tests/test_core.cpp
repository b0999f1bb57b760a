#include <catch2/catch_amalgamated.hpp>

#include "curvedyn/builtins.hpp"
#include "curvedyn/tree.hpp"

using namespace curvedyn;

namespace {

using Mat = std::vector<std::vector<long long>>;

Mat mat_mul(const Mat& a, const Mat& b) {
  size_t n = a.size();
  Mat c(n, std::vector<long long>(n, 0));
  for (size_t i = 0; i < n; ++i)
    for (size_t k = 0; k < n; ++k)
      if (a[i][k])
        for (size_t j = 0; j < n; ++j) c[i][j] += a[i][k] * b[k][j];
  return c;
}

Mat mat_pow(Mat a, long long p) {
  size_t n = a.size();
  Mat r(n, std::vector<long long>(n, 0));
  for (size_t i = 0; i < n; ++i) r[i][i] = 1;
  while (p > 0) {
    if (p & 1) r = mat_mul(r, a);
    a = mat_mul(a, a);
    p >>= 1;
  }
  return r;
}

}  // namespace

TEST_CASE("builtin trees validate") {
  for (auto t :
       {tree_z2i(), tree_rabbit(), tree_basilica(), tree_star(), tree_transient_example()}) {
    auto r = validate_tree(t);
    INFO(t.name << ": " << r.joined());
    CHECK(r.pass());
  }
  auto sd = validate_tree(tree_self_double());
  CHECK(sd.pass());
  REQUIRE(sd.warnings.size() == 1);
  CHECK(sd.warnings[0].find("degree budget") != std::string::npos);
}

TEST_CASE("validate_tree rejects an edge path not joining endpoint images") {
  auto t = tree_z2i();
  t.edge_map["e2"] = {{"e3", false}};  // starts at c0, but f(P1) = P2
  auto r = validate_tree(t);
  REQUIRE_FALSE(r.pass());
  bool found = false;
  for (auto& f : r.failures)
    if (f.find("edge_map endpoint mismatch") != std::string::npos) found = true;
  CHECK(found);
}

TEST_CASE("validate_tree rejects critical multiplicities summing to d") {
  auto t = tree_z2i();
  for (auto& v : t.vertices)
    if (v.id == "P1") {
      v.local_degree = 2;
      v.is_critical = true;
    }
  auto r = validate_tree(t);
  REQUIRE_FALSE(r.pass());
  bool found = false;
  for (auto& f : r.failures)
    if (f.find("degree budget") != std::string::npos) found = true;
  CHECK(found);
}

TEST_CASE("transition matrix of z2i") {
  auto tm = transition_matrix(tree_z2i());
  REQUIRE(tm.edge_order == std::vector<std::string>{"e1", "e2", "e3"});
  Mat want = {{1, 1, 1}, {1, 0, 0}, {1, 0, 0}};
  CHECK(tm.m == want);
}

TEST_CASE("transition matrix of the rabbit is the 3-cycle permutation") {
  auto tm = transition_matrix(tree_rabbit());
  Mat want = {{0, 0, 1}, {1, 0, 0}, {0, 1, 0}};
  CHECK(tm.m == want);
}

TEST_CASE("transition matrix of the self-doubling edge") {
  auto tm = transition_matrix(tree_self_double());
  CHECK(tm.m == Mat{{2}});
}

TEST_CASE("transition matrix conjugates under edge relabeling") {
  // relabel + reorder edges by a permutation sigma; the matrix must conjugate
  auto base = transition_matrix(tree_z2i());
  std::vector<std::vector<int>> perms = {{1, 2, 0}, {2, 0, 1}, {0, 2, 1}};
  for (auto& sigma : perms) {
    auto t = tree_z2i();
    HubbardTree s = t;
    s.edges.clear();
    s.edge_map.clear();
    std::map<std::string, std::string> newid;
    for (int i = 0; i < 3; ++i) newid[t.edges[i].id] = "f" + std::to_string(i);
    for (int i = 0; i < 3; ++i) {
      auto e = t.edges[sigma[i]];
      e.id = newid[e.id];
      s.edges.push_back(e);
    }
    for (auto& [eid, path] : t.edge_map) {
      auto p = path;
      for (auto& d : p) d.edge = newid[d.edge];
      s.edge_map[newid[eid]] = p;
    }
    for (auto& [v, rot] : s.rotation)
      for (auto& e : rot) e = newid[e];
    REQUIRE(validate_tree(s).pass());
    auto tm = transition_matrix(s);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) CHECK(tm.m[i][j] == base.m[sigma[i]][sigma[j]]);
  }
}

TEST_CASE("edge classification on the builtins") {
  auto z = classify_edges(tree_z2i());
  for (auto& [e, c] : z) CHECK(c == EdgeClass::Expanding);
  CHECK(z.size() == 3);

  auto r = classify_edges(tree_rabbit());
  for (auto& [e, c] : r) CHECK(c == EdgeClass::Attracting);
  CHECK(r.size() == 3);

  auto s = classify_edges(tree_self_double());
  CHECK(s.at("e") == EdgeClass::Expanding);

  auto b = classify_edges(tree_basilica());
  CHECK(b.at("e") == EdgeClass::Attracting);

  auto st = classify_edges(tree_star());
  for (auto& [e, c] : st) CHECK(c == EdgeClass::Attracting);
}

TEST_CASE("pre-periodic edge feeding an expanding cycle is transient") {
  auto c = classify_edges(tree_transient_example());
  CHECK(c.at("e1") == EdgeClass::Expanding);
  CHECK(c.at("e2") == EdgeClass::Transient);
}

TEST_CASE("periodic degree-1 cycle without super-attracting endpoint is rejected") {
  REQUIRE_THROWS_WITH(classify_edges(tree_no_superattracting()),
                      "periodic degree-1 edge cycle has no super-attracting endpoint");
}

TEST_CASE("covering time on the builtins") {
  CHECK(covering_time(tree_z2i()) == std::make_pair(1LL, 1LL));
  CHECK(covering_time(tree_rabbit()) == std::make_pair(3LL, 3LL));
  CHECK(covering_time(tree_self_double()) == std::make_pair(1LL, 1LL));
  CHECK(covering_time(tree_basilica()) == std::make_pair(1LL, 1LL));
  CHECK(covering_time(tree_star()) == std::make_pair(3LL, 3LL));
  CHECK(covering_time(tree_transient_example()) == std::make_pair(1LL, 1LL));
}

TEST_CASE("covering time satisfies its defining property under direct iteration") {
  for (auto t : {tree_z2i(), tree_rabbit(), tree_self_double(), tree_star(),
                 tree_transient_example()}) {
    auto tm = transition_matrix(t);
    auto cls = classify_edges(t);
    auto [q, tt] = covering_time(t);
    size_t n = tm.edge_order.size();
    INFO(t.name);

    // every edge's t-step image traverses an expanding or attracting edge
    auto mt = mat_pow(tm.m, tt);
    for (size_t col = 0; col < n; ++col) {
      bool hit = false;
      for (size_t row = 0; row < n; ++row)
        if (mt[row][col] > 0 && cls.at(tm.edge_order[row]) != EdgeClass::Transient)
          hit = true;
      CHECK(hit);
    }

    // q is a return period: attracting edges come back homeomorphically,
    // expanding edges self-cover >= 2 times at some multiple of q
    auto mq = mat_pow(tm.m, q);
    for (size_t e = 0; e < n; ++e) {
      auto c = cls.at(tm.edge_order[e]);
      if (c == EdgeClass::Attracting) {
        CHECK(mq[e][e] == 1);
        long long colsum = 0;
        for (size_t row = 0; row < n; ++row) colsum += mq[row][e];
        CHECK(colsum == 1);
      } else if (c == EdgeClass::Expanding) {
        bool doubled = false;
        for (long long k = 1; k <= 10 && !doubled; ++k)
          if (mat_pow(tm.m, k * q)[e][e] >= 2) doubled = true;
        CHECK(doubled);
      }
    }
  }
}

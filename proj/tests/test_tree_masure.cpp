#include <doctest.h>

#include <algorithm>
#include <functional>
#include <set>

#include "masurelab/error.hpp"
#include "masurelab/tree_masure.hpp"
#include "oracles/tree_graph.hpp"

using namespace masurelab;

namespace {

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::Parse;
}

std::uint64_t brute_fiber(const TreeMasure& t, std::int64_t lambda, std::int64_t mu) {
  std::uint64_t n = 0;
  t.for_each_vertex([&](const Vertex& v) {
    if (TreeMasure::rho_minus(v) == lambda && TreeMasure::rho_plus(v) == lambda + mu) ++n;
  });
  return n;
}

}  // namespace

TEST_CASE("build sizes") {
  CHECK(code_of([] { TreeMasure::build(1, 2); }) == ErrorCode::InvalidArgument);
  CHECK(code_of([] { TreeMasure::build(2, -1); }) == ErrorCode::InvalidArgument);
  auto flat = TreeMasure::build(2, 0);
  CHECK(flat.vertex_count() == 1);
  for (auto [q, d] : std::vector<std::pair<int, int>>{{2, 1}, {2, 3}, {3, 2}, {4, 2}}) {
    auto t = TreeMasure::build(q, d);
    oracle::TreeGraph g(q, d);
    CHECK(t.vertex_count() == g.size());
    std::uint64_t per_gate = 1;
    for (int k = 1; k <= d; ++k) per_gate += t.branch_size(k);
    CHECK(t.vertex_count() == static_cast<std::uint64_t>(2 * d + 1) * per_gate);
    std::uint64_t visited = 0;
    t.for_each_vertex([&](const Vertex& v) {
      CHECK(t.contains(v));
      ++visited;
    });
    CHECK(visited == t.vertex_count());
  }
  CHECK(code_of([] { TreeMasure::build(1000, 40); }) == ErrorCode::ResourceLimit);
}

TEST_CASE("retraction examples") {
  CHECK(TreeMasure::rho_plus(TreeMasure::apartment(4)) == 4);
  CHECK(TreeMasure::rho_minus(TreeMasure::apartment(4)) == 4);
  Vertex off{0, 1, 0};
  CHECK(TreeMasure::rho_minus(off) == 1);
  CHECK(TreeMasure::rho_plus(off) == -1);
  Vertex deep{-1, 2, 0};
  CHECK(TreeMasure::rho_minus(deep) == 1);
  CHECK(TreeMasure::rho_plus(deep) == -3);
}

TEST_CASE("geometry matches the adjacency-list model") {
  for (auto [q, d] : std::vector<std::pair<int, int>>{{2, 3}, {3, 2}}) {
    auto t = TreeMasure::build(q, d);
    oracle::TreeGraph g(q, d);
    auto rm = g.rho_minus();
    auto rp = g.rho_plus();
    for (std::size_t i = 0; i < g.size(); ++i) {
      const auto& v = g.labels()[i];
      CHECK(TreeMasure::rho_minus(v) == rm[i]);
      CHECK(TreeMasure::rho_plus(v) == rp[i]);
      auto dist = g.distances(static_cast<int>(i));
      for (std::size_t j = 0; j < g.size(); ++j) {
        CHECK(t.graph_distance(v, g.labels()[j]) == dist[j]);
        CHECK(t.dv(v, g.labels()[j]) == make_rational(dist[j], 2));
      }
      std::set<Vertex> expect;
      for (int w : g.neighbors(static_cast<int>(i))) expect.insert(g.labels()[static_cast<std::size_t>(w)]);
      auto nb = t.neighbors(v);
      CHECK(std::set<Vertex>(nb.begin(), nb.end()) == expect);
      bool interior = v.depth < d && v.gate > -d && v.gate < d;
      if (interior) CHECK(nb.size() == static_cast<std::size_t>(q + 1));
    }
  }
}

TEST_CASE("vectorial distance and spheres") {
  auto t = TreeMasure::build(2, 4);
  CHECK(t.dv(TreeMasure::apartment(0), TreeMasure::apartment(0)) == 0);
  CHECK(t.dv(TreeMasure::apartment(0), TreeMasure::apartment(3)) == make_rational(3, 2));
  CHECK(t.sphere(TreeMasure::apartment(0), 0) == std::vector<Vertex>{TreeMasure::apartment(0)});
  for (std::int64_t q : {2, 3, 4}) {
    auto u = TreeMasure::build(q, 3);
    CHECK(u.sphere(TreeMasure::apartment(0), 2).size() == static_cast<std::size_t>((q + 1) * q));
  }
  oracle::TreeGraph g(3, 3);
  auto u = TreeMasure::build(3, 3);
  for (std::int64_t c = -1; c <= 1; ++c)
    for (std::int64_t l = 0; l <= 2; ++l) {
      auto dist = g.distances(g.id(TreeMasure::apartment(c)));
      std::vector<Vertex> expect;
      for (std::size_t i = 0; i < g.size(); ++i)
        if (dist[i] == l) expect.push_back(g.labels()[i]);
      std::sort(expect.begin(), expect.end());
      auto got = u.sphere(TreeMasure::apartment(c), l);
      std::sort(got.begin(), got.end());
      CHECK(got == expect);
    }
  CHECK(code_of([&] { u.sphere(TreeMasure::apartment(0), 6); }) == ErrorCode::DepthExceeded);
}

TEST_CASE("projections toward the ends") {
  auto t = TreeMasure::build(3, 3);
  auto on = t.y_t_plus(TreeMasure::apartment(2));
  CHECK(on.y == 2);
  CHECK(on.t == 0);
  auto off = t.y_t_plus(Vertex{0, 1, 0});
  CHECK(off.y == 0);
  CHECK(off.t == make_rational(1, 2));
  t.for_each_vertex([&](const Vertex& v) {
    auto p = t.y_t_plus(v);
    auto m = t.y_t_minus(v);
    CHECK(p.y == TreeMasure::rho_plus(v) + 2 * p.t);
    CHECK(TreeMasure::rho_minus(v) == m.y + 2 * m.t);
    CHECK(p.t >= 0);
    CHECK(m.t >= 0);
    // T bounded by the height of rho_- - rho_+
    Rational h = make_rational(TreeMasure::rho_minus(v) - TreeMasure::rho_plus(v), 2);
    CHECK(p.t <= h);
    CHECK(m.t <= h);
  });
}

TEST_CASE("translation") {
  auto t = TreeMasure::build(2, 3);
  t.for_each_vertex([&](const Vertex& v) {
    CHECK(TreeMasure::translate(v, 0) == v);
    auto w = TreeMasure::translate(v, 1);
    CHECK(TreeMasure::rho_minus(w) == TreeMasure::rho_minus(v) + 2);
    CHECK(TreeMasure::rho_plus(w) == TreeMasure::rho_plus(v) + 2);
    CHECK(TreeMasure::translate(TreeMasure::translate(v, 2), -3) == TreeMasure::translate(v, -1));
  });
}

TEST_CASE("count_bi_retraction examples") {
  for (std::int64_t q : {2, 3, 4}) {
    auto t = TreeMasure::build(q, 6);
    CHECK(t.count_bi_retraction(0, 0).count == 1);
    CHECK(t.count_bi_retraction(0, -2).count == static_cast<std::uint64_t>(q - 1));
    CHECK(t.count_bi_retraction(2, -4).count == static_cast<std::uint64_t>((q - 1) * q));
    CHECK(t.count_bi_retraction(0, 2).count == 0);
    CHECK_FALSE(t.count_bi_retraction(0, 2).certificate.empty());
  }
  auto t = TreeMasure::build(2, 2);
  CHECK(code_of([&] { t.count_bi_retraction(0, -6); }) == ErrorCode::DepthExceeded);
}

TEST_CASE("counts agree with a full vertex scan") {
  for (std::int64_t q : {2, 3}) {
    auto t = TreeMasure::build(q, 6);
    for (std::int64_t lambda = -2; lambda <= 2; ++lambda)
      for (std::int64_t mu = -4; mu <= 2; ++mu) {
        auto r = t.count_bi_retraction(lambda, mu);
        CHECK(r.count == brute_fiber(t, lambda, mu));
        CHECK(r.count == t.bi_retraction_fiber(lambda, mu).size());
      }
  }
}

TEST_CASE("property: retraction invariants on every vertex") {
  for (std::int64_t q : {2, 3})
    for (std::int64_t depth : {4, 10}) {
      auto t = TreeMasure::build(q, depth);
      std::uint64_t bad = 0;
      t.for_each_vertex([&](const Vertex& v) {
        std::int64_t gap = TreeMasure::rho_minus(v) - TreeMasure::rho_plus(v);
        if (gap < 0 || gap % 2 != 0) ++bad;
        if (gap == 0 && v.depth != 0) ++bad;
        auto m = t.y_t_minus(v);
        if (m.t > make_rational(gap, 2)) ++bad;
        if (m.y > 0 && t.dv(TreeMasure::apartment(0), v) * 2 != TreeMasure::rho_minus(v)) ++bad;
        auto w = TreeMasure::translate(v, 1);
        if (TreeMasure::rho_minus(w) != TreeMasure::rho_minus(v) + 2) ++bad;
      });
      CHECK(bad == 0);
    }
}

TEST_CASE("property: counts are translation invariant") {
  for (std::int64_t q : {2, 3}) {
    auto t = TreeMasure::build(q, 10);
    for (std::int64_t mu = -6; mu <= 0; mu += 2) {
      auto ref = t.count_bi_retraction(0, mu).count;
      for (std::int64_t m = -2; m <= 2; ++m) CHECK(t.count_bi_retraction(2 * m, mu).count == ref);
    }
  }
}

TEST_CASE("verify_tree reports") {
  auto t = TreeMasure::build(2, 10);
  auto r = verify_tree(t, -2, -3, 3);
  CHECK(r.invariance);
  CHECK(r.rows.size() == 7);
  for (const auto& row : r.rows) CHECK(row.bi_count == r.reference_count);
  CHECK(r.reference_count == 2);
  REQUIRE(r.min_equality);
  REQUIRE(r.min_inclusion);
  CHECK(*r.min_inclusion <= *r.min_equality);
  CHECK(*r.min_equality <= r.threshold);
  CHECK(r.threshold == 3);

  // rows recomputed from the fibers
  for (const auto& row : r.rows) {
    auto bi = t.bi_retraction_fiber(2 * row.lambda, 2 * r.mu);
    auto sph = t.sphere_fiber(2 * row.lambda, 2 * (row.lambda + r.mu));
    CHECK(row.inclusion == std::includes(sph.begin(), sph.end(), bi.begin(), bi.end()));
    CHECK(row.equality == (bi == sph));
  }
}

TEST_CASE("products of trees") {
  ProductMasure p(TreeMasure::build(2, 4), TreeMasure::build(3, 4));
  for (std::int64_t m1 = -4; m1 <= 0; m1 += 2)
    for (std::int64_t m2 = -4; m2 <= 0; m2 += 2) {
      auto c = p.count_bi_retraction({0, 0}, {m1, m2});
      CHECK(c == p.first().count_bi_retraction(0, m1).count * p.second().count_bi_retraction(0, m2).count);
    }
  CHECK(p.count_bi_retraction({0, 0}, {0, -2}) == p.second().count_bi_retraction(0, -2).count);
  for (const auto& v : {ProductVertex{{0, 1, 0}, {1, 2, 3}}, ProductVertex{{-2, 0, 0}, {0, 3, 1}}}) {
    auto w = ProductMasure::translate(v, 1, -2);
    CHECK(ProductMasure::rho_minus(w) == ProductPosition{ProductMasure::rho_minus(v).first + 2,
                                                         ProductMasure::rho_minus(v).second - 4});
    auto [y, tv] = ProductMasure::y_t_minus(v);
    auto [yw, tw] = ProductMasure::y_t_minus(w);
    CHECK(yw == ProductPosition{y.first + 2, y.second - 4});
    CHECK(tw == tv);
  }
}

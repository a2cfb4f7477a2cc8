#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <sstream>

#include "slidegraph/spatial_graph.hpp"

using namespace slidegraph;

namespace {

// Independent haversine oracle using the atan2 formulation instead of asin.
double haversine_oracle(const GeoPoint& a, const GeoPoint& b) {
  const double pi = 3.14159265358979323846;
  auto rad = [&](double d) { return d * pi / 180.0; };
  const double dlat = rad(b.lat - a.lat);
  const double dlon = rad(b.lon - a.lon);
  const double h = std::pow(std::sin(dlat / 2), 2) +
                   std::cos(rad(a.lat)) * std::cos(rad(b.lat)) * std::pow(std::sin(dlon / 2), 2);
  return 6371.0 * 2.0 * std::atan2(std::sqrt(h), std::sqrt(1.0 - h));
}

std::vector<GeoPoint> random_points(int n, unsigned seed, double lat_lo = 24, double lat_hi = 46,
                                    double lon_lo = 60, double lon_hi = 106) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> lat(lat_lo, lat_hi), lon(lon_lo, lon_hi);
  std::vector<GeoPoint> pts(n);
  for (auto& p : pts) p = {lat(rng), lon(rng)};
  return pts;
}

std::set<std::pair<int, int>> edge_set(const ProximityGraph& g) {
  std::set<std::pair<int, int>> s;
  for (const auto& e : g.edges) s.insert({e.i, e.j});
  return s;
}

std::set<std::pair<int, int>> brute_force_edges(const std::vector<GeoPoint>& pts, double thr) {
  std::set<std::pair<int, int>> s;
  for (int i = 0; i < (int)pts.size(); ++i)
    for (int j = i + 1; j < (int)pts.size(); ++j)
      if (haversine_oracle(pts[i], pts[j]) <= thr) s.insert({i, j});
  return s;
}

}  // namespace

TEST_CASE("haversine anchors") {
  CHECK(haversine_km({28.0, 84.0}, {28.0, 84.0}) == 0.0);
  CHECK(std::abs(haversine_km({0, 0}, {0, 1}) - 111.1949) < 1e-3);
  CHECK(std::abs(haversine_km({0, 0}, {0, 180}) - 20015.09) < 0.01);
}

TEST_CASE("haversine is symmetric and nonnegative") {
  auto pts = random_points(50, 99, -90, 90, -180, 180);
  for (size_t i = 0; i + 1 < pts.size(); i += 2) {
    double d1 = haversine_km(pts[i], pts[i + 1]);
    double d2 = haversine_km(pts[i + 1], pts[i]);
    CHECK(d1 == d2);
    CHECK(d1 >= 0.0);
  }
}

TEST_CASE("haversine matches the atan2 oracle on random pairs") {
  std::mt19937_64 rng(4242);
  std::uniform_real_distribution<double> lat(-90, 90), lon(-180, 180);
  for (int k = 0; k < 1000; ++k) {
    GeoPoint a{lat(rng), lon(rng)}, b{lat(rng), lon(rng)};
    const double got = haversine_km(a, b);
    const double want = haversine_oracle(a, b);
    CHECK(std::abs(got - want) <= 1e-9 * std::max({1.0, got, want}));
  }
}

TEST_CASE("proximity graph basic containment") {
  // ~10 km apart along a meridian
  std::vector<GeoPoint> pts = {{28.0, 84.0}, {28.09, 84.0}};
  CHECK(build_proximity_graph(pts, 25.0).edges.size() == 1);
  CHECK(build_proximity_graph(pts, 5.0).edges.empty());
  CHECK_THROWS_AS(build_proximity_graph(pts, 0.0), ArgumentError);
}

TEST_CASE("proximity graph equals the brute-force oracle") {
  auto pts = random_points(200, 7);
  for (double thr : {10.0, 50.0, 120.0}) {
    auto g = build_proximity_graph(pts, thr);
    CHECK(edge_set(g) == brute_force_edges(pts, thr));
    for (const auto& e : g.edges) {
      CHECK(e.i < e.j);
      CHECK(e.distance_km <= thr);
    }
  }
}

TEST_CASE("adjacency is symmetric without self-loops") {
  auto pts = random_points(120, 21);
  auto g = build_proximity_graph(pts, 60.0);
  for (int i = 0; i < g.n; ++i) {
    for (int j : g.neighbors[i]) {
      CHECK(j != i);
      CHECK(std::count(g.neighbors[j].begin(), g.neighbors[j].end(), i) == 1);
    }
  }
}

TEST_CASE("edge set grows monotonically with the threshold") {
  auto pts = random_points(80, 13);
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> thr(1.0, 400.0);
  for (int k = 0; k < 100; ++k) {
    double t1 = thr(rng), t2 = thr(rng);
    if (t1 > t2) std::swap(t1, t2);
    auto small = edge_set(build_proximity_graph(pts, t1));
    auto large = edge_set(build_proximity_graph(pts, t2));
    CHECK(std::includes(large.begin(), large.end(), small.begin(), small.end()));
  }
}

TEST_CASE("graph summary on hand-built graphs") {
  SUBCASE("five isolated nodes") {
    std::vector<GeoPoint> pts(5);
    for (int i = 0; i < 5; ++i) pts[i] = {0.0, static_cast<double>(10 * i)};
    auto g = build_proximity_graph(pts, 1.0);
    auto s = graph_summary(g);
    CHECK(s.edge_count == 0);
    CHECK(s.component_count == 5);
    CHECK(s.isolated_count == 5);
  }
  SUBCASE("path on four nodes") {
    // consecutive points ~55 km apart, threshold between 1 and 2 steps
    std::vector<GeoPoint> pts = {{0, 0}, {0.5, 0}, {1.0, 0}, {1.5, 0}};
    auto g = build_proximity_graph(pts, 60.0);
    auto s = graph_summary(g);
    CHECK(s.edge_count == 3);
    CHECK(s.mean_degree == doctest::Approx(1.5));
    CHECK(s.component_count == 1);
    CHECK(s.isolated_count == 0);
  }
  SUBCASE("complete graph on four nodes") {
    std::vector<GeoPoint> pts = {{0, 0}, {0.01, 0}, {0, 0.01}, {0.01, 0.01}};
    auto s = graph_summary(build_proximity_graph(pts, 10.0));
    CHECK(s.edge_count == 6);
    CHECK(s.max_degree == 3);
  }
}

TEST_CASE("edge list export format") {
  std::vector<GeoPoint> pts = {{0, 0}, {0, 1}};
  auto g = build_proximity_graph(pts, 200.0);
  std::ostringstream out;
  write_edge_list(g, out);
  CHECK(out.str() == "0 1 111.194927\n");
}

#include "slidegraph/spatial_graph.hpp"

#include <cmath>
#include <numbers>
#include <ostream>
#include <vector>

namespace slidegraph {

namespace {
inline double deg2rad(double deg) { return deg * std::numbers::pi / 180.0; }
}  // namespace

double haversine_km(const GeoPoint& a, const GeoPoint& b) {
  const double lat1 = deg2rad(a.lat);
  const double lat2 = deg2rad(b.lat);
  const double dlat = deg2rad(b.lat - a.lat);
  const double dlon = deg2rad(b.lon - a.lon);
  const double s1 = std::sin(dlat / 2.0);
  const double s2 = std::sin(dlon / 2.0);
  const double h = s1 * s1 + std::cos(lat1) * std::cos(lat2) * s2 * s2;
  return 2.0 * kEarthRadiusKm * std::asin(std::min(1.0, std::sqrt(h)));
}

ProximityGraph build_proximity_graph(const std::vector<GeoPoint>& points, double threshold_km) {
  if (threshold_km <= 0.0) throw ArgumentError("proximity threshold must be positive");
  ProximityGraph g;
  g.n = static_cast<int>(points.size());
  g.threshold_km = threshold_km;
  g.neighbors.assign(points.size(), {});
  for (int i = 0; i < g.n; ++i) {
    for (int j = i + 1; j < g.n; ++j) {
      const double d = haversine_km(points[i], points[j]);
      if (d <= threshold_km) {
        g.edges.push_back({i, j, d});
        g.neighbors[i].push_back(j);
        g.neighbors[j].push_back(i);
      }
    }
  }
  // inner loop emits ascending j, i ascending outer: already sorted
  return g;
}

GraphSummary graph_summary(const ProximityGraph& g) {
  GraphSummary s;
  s.edge_count = g.edges.size();
  s.mean_degree = g.n > 0 ? 2.0 * static_cast<double>(g.edges.size()) / g.n : 0.0;
  for (int i = 0; i < g.n; ++i) {
    s.max_degree = std::max(s.max_degree, g.neighbors[i].size());
    if (g.neighbors[i].empty()) ++s.isolated_count;
  }
  // component count by iterative DFS
  std::vector<bool> seen(g.n, false);
  std::vector<int> stack;
  for (int start = 0; start < g.n; ++start) {
    if (seen[start]) continue;
    ++s.component_count;
    stack.push_back(start);
    seen[start] = true;
    while (!stack.empty()) {
      int u = stack.back();
      stack.pop_back();
      for (int v : g.neighbors[u]) {
        if (!seen[v]) {
          seen[v] = true;
          stack.push_back(v);
        }
      }
    }
  }
  return s;
}

void write_edge_list(const ProximityGraph& g, std::ostream& out) {
  char buf[64];
  for (const auto& e : g.edges) {
    std::snprintf(buf, sizeof(buf), "%d %d %.6f\n", e.i, e.j, e.distance_km);
    out << buf;
  }
}

}  // namespace slidegraph

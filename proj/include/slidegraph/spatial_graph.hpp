#pragma once

#include <cstddef>
#include <iosfwd>
#include <vector>

#include "slidegraph/types.hpp"

namespace slidegraph {

struct GeoPoint {
  double lat = 0.0;
  double lon = 0.0;
};

inline constexpr double kEarthRadiusKm = 6371.0;

/// Great-circle distance between two points in decimal degrees.
double haversine_km(const GeoPoint& a, const GeoPoint& b);

struct ProximityEdge {
  int i = 0;  // always i < j
  int j = 0;
  double distance_km = 0.0;
};

/// Undirected distance-thresholded graph over event locations.
struct ProximityGraph {
  int n = 0;
  double threshold_km = 0.0;
  std::vector<ProximityEdge> edges;           // sorted by (i, j)
  std::vector<std::vector<int>> neighbors;    // symmetric adjacency, sorted

  std::size_t degree(int node) const { return neighbors.at(node).size(); }
};

ProximityGraph build_proximity_graph(const std::vector<GeoPoint>& points, double threshold_km);

struct GraphSummary {
  std::size_t edge_count = 0;
  double mean_degree = 0.0;
  std::size_t max_degree = 0;
  std::size_t isolated_count = 0;
  std::size_t component_count = 0;
};

GraphSummary graph_summary(const ProximityGraph& g);

/// Text export, one `i j distance_km` line per edge with 6-decimal distances.
void write_edge_list(const ProximityGraph& g, std::ostream& out);

}  // namespace slidegraph

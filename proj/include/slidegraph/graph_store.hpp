#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "slidegraph/catalog.hpp"
#include "slidegraph/embedding.hpp"
#include "slidegraph/spatial_graph.hpp"
#include "slidegraph/types.hpp"

namespace slidegraph {

struct NodeId {
  std::uint64_t value = 0;
  auto operator<=>(const NodeId&) const = default;
};

enum class NodeKind { Event, Source, GazetteerPoint, LandslideProfile };
enum class EdgeKind { HasSource, LocatedAt, HasProfile, Near };

std::string to_string(NodeKind k);
std::string to_string(EdgeKind k);
NodeKind parse_node_kind(const std::string& text);
EdgeKind parse_edge_kind(const std::string& text);

using PropertyValue = std::variant<std::int64_t, double, std::string, bool>;

struct Node {
  NodeId id;
  NodeKind kind = NodeKind::Event;
  std::map<std::string, PropertyValue> properties;
  std::optional<Vector> embedding;  // unit vector of the store's dimension
};

struct Edge {
  NodeId src;
  NodeId dst;
  EdgeKind kind = EdgeKind::HasSource;
  std::optional<double> weight;  // km for Near edges
};

/// In-memory property graph. Append-only: nodes and edges can be added but
/// never mutated or removed, so concurrent readers need no synchronization.
class PropertyGraph {
 public:
  explicit PropertyGraph(int embedding_dim = 256);

  NodeId add_node(NodeKind kind, std::map<std::string, PropertyValue> properties,
                  std::optional<Vector> embedding = std::nullopt);
  /// Adds one directed edge; a Near edge is stored in both directions.
  void add_edge(NodeId src, NodeId dst, EdgeKind kind,
                std::optional<double> weight = std::nullopt);

  const Node& node(NodeId id) const;
  bool has_node(NodeId id) const;
  std::size_t node_count() const { return nodes_.size(); }
  std::size_t edge_count() const { return edges_.size(); }  // directed records
  std::size_t count_of_kind(NodeKind kind) const;
  int embedding_dim() const { return embedding_dim_; }
  std::vector<NodeId> nodes_of_kind(NodeKind kind) const;
  const std::vector<Node>& nodes() const { return nodes_; }
  const std::vector<Edge>& edges() const { return edges_; }

  /// Incident edges (outgoing plus incoming; Near edges once via their
  /// outgoing direction), optionally filtered by kind, ordered by
  /// (neighbor id, edge kind).
  std::vector<std::pair<NodeId, Edge>> neighbors(
      NodeId id, std::optional<EdgeKind> filter = std::nullopt) const;

  /// Exhaustive cosine scan over embedded nodes. Results sorted by similarity
  /// descending, ties by NodeId ascending, truncated to k.
  std::vector<std::pair<NodeId, double>> top_k_similar(
      const Vector& query, int k, std::optional<NodeKind> filter = std::nullopt) const;

 private:
  int embedding_dim_;
  std::vector<Node> nodes_;  // index == id.value
  std::vector<Edge> edges_;
  std::vector<std::vector<std::size_t>> outgoing_;  // node -> edge indices
  std::vector<std::vector<std::size_t>> incoming_;
};

/// Builds the knowledge graph for a validated catalog: one Event node per
/// record (ids 0..n-1 in record order), deduplicated Source / GazetteerPoint /
/// LandslideProfile nodes, and the wiring edges. When a provider is given,
/// Event nodes carry the embedding of their description text.
PropertyGraph build_knowledge_graph(const std::vector<EventRecord>& records,
                                    const EmbeddingProvider* provider = nullptr);

/// The text an Event node embeds and retrieval matches against.
std::string event_embedding_text(const EventRecord& record);

/// Writes symmetric Near edges for every proximity-graph edge, mapping
/// proximity index i to Event node id event_ids[i].
void add_near_edges(PropertyGraph& graph, const std::vector<NodeId>& event_ids,
                    const ProximityGraph& proximity);

std::string graph_to_json(const PropertyGraph& graph);
PropertyGraph graph_from_json(const std::string& text);

}  // namespace slidegraph

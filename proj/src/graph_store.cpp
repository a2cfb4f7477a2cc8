#include "slidegraph/graph_store.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include <json.hpp>

namespace slidegraph {

std::string to_string(NodeKind k) {
  switch (k) {
    case NodeKind::Event: return "Event";
    case NodeKind::Source: return "Source";
    case NodeKind::GazetteerPoint: return "GazetteerPoint";
    case NodeKind::LandslideProfile: return "LandslideProfile";
  }
  return "Event";
}

std::string to_string(EdgeKind k) {
  switch (k) {
    case EdgeKind::HasSource: return "HAS_SOURCE";
    case EdgeKind::LocatedAt: return "LOCATED_AT";
    case EdgeKind::HasProfile: return "HAS_PROFILE";
    case EdgeKind::Near: return "NEAR";
  }
  return "HAS_SOURCE";
}

NodeKind parse_node_kind(const std::string& text) {
  if (text == "Event") return NodeKind::Event;
  if (text == "Source") return NodeKind::Source;
  if (text == "GazetteerPoint") return NodeKind::GazetteerPoint;
  if (text == "LandslideProfile") return NodeKind::LandslideProfile;
  throw FormatError("unknown node kind '" + text + "'");
}

EdgeKind parse_edge_kind(const std::string& text) {
  if (text == "HAS_SOURCE") return EdgeKind::HasSource;
  if (text == "LOCATED_AT") return EdgeKind::LocatedAt;
  if (text == "HAS_PROFILE") return EdgeKind::HasProfile;
  if (text == "NEAR") return EdgeKind::Near;
  throw FormatError("unknown edge kind '" + text + "'");
}

PropertyGraph::PropertyGraph(int embedding_dim) : embedding_dim_(embedding_dim) {
  if (embedding_dim < 1) throw ArgumentError("embedding dimension must be positive");
}

NodeId PropertyGraph::add_node(NodeKind kind, std::map<std::string, PropertyValue> properties,
                               std::optional<Vector> embedding) {
  if (embedding) {
    if (embedding->size() != embedding_dim_)
      throw ArgumentError("node embedding has the wrong dimension");
    if (std::abs(embedding->norm() - 1.0) > 1e-6)
      throw ArgumentError("node embedding must be a unit vector");
  }
  const NodeId id{nodes_.size()};
  nodes_.push_back({id, kind, std::move(properties), std::move(embedding)});
  outgoing_.emplace_back();
  incoming_.emplace_back();
  return id;
}

void PropertyGraph::add_edge(NodeId src, NodeId dst, EdgeKind kind,
                             std::optional<double> weight) {
  if (!has_node(src) || !has_node(dst)) throw LookupError("edge endpoint does not exist");
  if (weight && *weight < 0.0) throw ArgumentError("edge weight must be nonnegative");
  auto push = [&](NodeId a, NodeId b) {
    edges_.push_back({a, b, kind, weight});
    outgoing_[a.value].push_back(edges_.size() - 1);
    incoming_[b.value].push_back(edges_.size() - 1);
  };
  push(src, dst);
  if (kind == EdgeKind::Near) push(dst, src);
}

const Node& PropertyGraph::node(NodeId id) const {
  if (!has_node(id)) throw LookupError("unknown node id " + std::to_string(id.value));
  return nodes_[id.value];
}

bool PropertyGraph::has_node(NodeId id) const { return id.value < nodes_.size(); }

std::size_t PropertyGraph::count_of_kind(NodeKind kind) const {
  return static_cast<std::size_t>(
      std::count_if(nodes_.begin(), nodes_.end(),
                    [&](const Node& n) { return n.kind == kind; }));
}

std::vector<NodeId> PropertyGraph::nodes_of_kind(NodeKind kind) const {
  std::vector<NodeId> out;
  for (const auto& n : nodes_)
    if (n.kind == kind) out.push_back(n.id);
  return out;
}

std::vector<std::pair<NodeId, Edge>> PropertyGraph::neighbors(
    NodeId id, std::optional<EdgeKind> filter) const {
  if (!has_node(id)) throw LookupError("unknown node id " + std::to_string(id.value));
  std::vector<std::pair<NodeId, Edge>> out;
  for (std::size_t ei : outgoing_[id.value]) {
    const Edge& e = edges_[ei];
    if (filter && e.kind != *filter) continue;
    out.emplace_back(e.dst, e);
  }
  for (std::size_t ei : incoming_[id.value]) {
    const Edge& e = edges_[ei];
    // Near edges already appear through the outgoing direction
    if (e.kind == EdgeKind::Near) continue;
    if (filter && e.kind != *filter) continue;
    out.emplace_back(e.src, e);
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first < b.first;
    return static_cast<int>(a.second.kind) < static_cast<int>(b.second.kind);
  });
  return out;
}

std::vector<std::pair<NodeId, double>> PropertyGraph::top_k_similar(
    const Vector& query, int k, std::optional<NodeKind> filter) const {
  if (query.size() != embedding_dim_) throw ArgumentError("query has the wrong dimension");
  if (k < 1) throw ArgumentError("k must be at least 1");
  std::vector<std::pair<NodeId, double>> scored;
  for (const auto& n : nodes_) {
    if (!n.embedding) continue;
    if (filter && n.kind != *filter) continue;
    scored.emplace_back(n.id, std::clamp(query.dot(*n.embedding), -1.0, 1.0));
  }
  std::sort(scored.begin(), scored.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });
  if (scored.size() > static_cast<std::size_t>(k)) scored.resize(static_cast<std::size_t>(k));
  return scored;
}

std::string event_embedding_text(const EventRecord& record) {
  return record.event_description;
}

PropertyGraph build_knowledge_graph(const std::vector<EventRecord>& records,
                                    const EmbeddingProvider* provider) {
  PropertyGraph graph(provider ? provider->dim() : 256);
  std::set<std::string> ids;
  for (const auto& r : records) {
    if (!ids.insert(r.event_id).second)
      throw ArgumentError("duplicate event_id '" + r.event_id + "' in knowledge-graph input");
  }

  // events first, so Event node ids are 0..n-1 in record order
  std::vector<NodeId> event_ids;
  event_ids.reserve(records.size());
  for (const auto& r : records) {
    std::map<std::string, PropertyValue> props = {
        {"event_id", r.event_id},
        {"event_date", r.event_date.to_iso()},
        {"latitude", r.latitude},
        {"longitude", r.longitude},
        {"location_description", r.location_description},
        {"location_accuracy", to_string(r.location_accuracy)},
        {"fatality_count", r.fatality_count},
        {"injury_count", r.injury_count},
        {"event_title", r.event_title},
        {"event_description", r.event_description},
        {"landslide_size", to_string(r.landslide_size)},
        {"trigger", r.trigger},
    };
    std::optional<Vector> embedding;
    if (provider) embedding = provider->embed(event_embedding_text(r));
    event_ids.push_back(graph.add_node(NodeKind::Event, std::move(props), std::move(embedding)));
  }

  std::map<std::pair<std::string, std::string>, NodeId> sources;
  std::map<std::pair<std::int64_t, std::int64_t>, NodeId> gazetteer;
  std::map<std::pair<std::string, std::string>, NodeId> profiles;
  for (std::size_t i = 0; i < records.size(); ++i) {
    const auto& r = records[i];
    if (auto key = source_key(r)) {
      auto it = sources.find(*key);
      if (it == sources.end()) {
        NodeId id = graph.add_node(NodeKind::Source,
                                   {{"source_name", r.source_name},
                                    {"source_link", r.source_link}});
        it = sources.emplace(*key, id).first;
      }
      graph.add_edge(event_ids[i], it->second, EdgeKind::HasSource);
    }
    const auto gkey = gazetteer_key(r.latitude, r.longitude);
    auto git = gazetteer.find(gkey);
    if (git == gazetteer.end()) {
      NodeId id = graph.add_node(NodeKind::GazetteerPoint,
                                 {{"latitude", gkey.first / 1e4},
                                  {"longitude", gkey.second / 1e4}});
      git = gazetteer.emplace(gkey, id).first;
    }
    graph.add_edge(event_ids[i], git->second, EdgeKind::LocatedAt);

    const auto pkey = profile_key(r);
    auto pit = profiles.find(pkey);
    if (pit == profiles.end()) {
      NodeId id = graph.add_node(NodeKind::LandslideProfile,
                                 {{"landslide_size", pkey.first}, {"trigger", pkey.second}});
      pit = profiles.emplace(pkey, id).first;
    }
    graph.add_edge(event_ids[i], pit->second, EdgeKind::HasProfile);
  }
  return graph;
}

void add_near_edges(PropertyGraph& graph, const std::vector<NodeId>& event_ids,
                    const ProximityGraph& proximity) {
  if (static_cast<int>(event_ids.size()) != proximity.n)
    throw ArgumentError("event id list does not match the proximity graph size");
  for (const auto& e : proximity.edges) {
    graph.add_edge(event_ids[static_cast<std::size_t>(e.i)],
                   event_ids[static_cast<std::size_t>(e.j)], EdgeKind::Near, e.distance_km);
  }
}

namespace {

nlohmann::json property_to_json(const PropertyValue& v) {
  return std::visit([](const auto& x) { return nlohmann::json(x); }, v);
}

PropertyValue property_from_json(const nlohmann::json& j) {
  if (j.is_boolean()) return j.get<bool>();
  if (j.is_number_integer()) return j.get<std::int64_t>();
  if (j.is_number()) return j.get<double>();
  return j.get<std::string>();
}

}  // namespace

std::string graph_to_json(const PropertyGraph& graph) {
  nlohmann::json doc;
  doc["embedding_dim"] = graph.embedding_dim();
  doc["nodes"] = nlohmann::json::array();
  for (const auto& n : graph.nodes()) {
    nlohmann::json jn;
    jn["id"] = n.id.value;
    jn["kind"] = to_string(n.kind);
    jn["properties"] = nlohmann::json::object();
    for (const auto& [k, v] : n.properties) jn["properties"][k] = property_to_json(v);
    if (n.embedding) {
      jn["embedding"] = std::vector<double>(n.embedding->data(),
                                            n.embedding->data() + n.embedding->size());
    }
    doc["nodes"].push_back(std::move(jn));
  }
  doc["edges"] = nlohmann::json::array();
  for (const auto& e : graph.edges()) {
    nlohmann::json je;
    je["src"] = e.src.value;
    je["dst"] = e.dst.value;
    je["kind"] = to_string(e.kind);
    if (e.weight) je["weight"] = *e.weight;
    doc["edges"].push_back(std::move(je));
  }
  return doc.dump(2);
}

PropertyGraph graph_from_json(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("graph json is not parseable: ") + e.what());
  }
  if (!doc.contains("nodes") || !doc.contains("edges"))
    throw SchemaError("graph json must contain 'nodes' and 'edges'");
  PropertyGraph graph(doc.value("embedding_dim", 256));
  for (const auto& jn : doc["nodes"]) {
    std::map<std::string, PropertyValue> props;
    const nlohmann::json jprops = jn.value("properties", nlohmann::json::object());
    for (const auto& [k, v] : jprops.items()) props[k] = property_from_json(v);
    std::optional<Vector> embedding;
    if (jn.contains("embedding")) {
      const auto values = jn["embedding"].get<std::vector<double>>();
      embedding = Eigen::Map<const Vector>(values.data(),
                                           static_cast<Eigen::Index>(values.size()));
    }
    const NodeId id =
        graph.add_node(parse_node_kind(jn.at("kind").get<std::string>()), std::move(props),
                       std::move(embedding));
    if (id.value != jn.at("id").get<std::uint64_t>())
      throw FormatError("graph json node ids must be dense and ordered");
  }
  std::set<std::pair<std::uint64_t, std::uint64_t>> seen_near;
  for (const auto& je : doc["edges"]) {
    const EdgeKind kind = parse_edge_kind(je.at("kind").get<std::string>());
    const std::uint64_t src = je.at("src").get<std::uint64_t>();
    const std::uint64_t dst = je.at("dst").get<std::uint64_t>();
    std::optional<double> weight;
    if (je.contains("weight")) weight = je["weight"].get<double>();
    if (kind == EdgeKind::Near) {
      // the export carries both directions; re-add each undirected pair once
      if (seen_near.count({dst, src})) continue;
      seen_near.insert({src, dst});
    }
    graph.add_edge(NodeId{src}, NodeId{dst}, kind, weight);
  }
  return graph;
}

}  // namespace slidegraph

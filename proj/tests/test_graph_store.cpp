#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <map>
#include <random>
#include <set>

#include "slidegraph/graph_store.hpp"

using namespace slidegraph;

namespace {

EventRecord make_record(const std::string& id, double lat, double lon,
                        const std::string& source = "", const std::string& trigger = "rain") {
  EventRecord r;
  r.event_id = id;
  r.event_date = {2015, 7, 1};
  r.latitude = lat;
  r.longitude = lon;
  r.event_title = "event " + id;
  r.event_description = "description for " + id;
  r.landslide_size = LandslideSize::Medium;
  r.trigger = trigger;
  r.source_name = source;
  if (!source.empty()) r.source_link = "https://example.org/" + source;
  return r;
}

std::vector<EventRecord> fixture_records() {
  auto parsed =
      parse_catalog(std::string(FIXTURE_DIR) + "/hma_mini.csv", CatalogFormat::Csv);
  return filter_region(parsed.records, hma_default_bbox());
}

Vector random_unit(std::mt19937_64& rng, int dim) {
  std::normal_distribution<double> gauss;
  Vector v(dim);
  for (int i = 0; i < dim; ++i) v[i] = gauss(rng);
  return v / v.norm();
}

}  // namespace

TEST_CASE("three records sharing a source dedup to one Source node") {
  std::vector<EventRecord> recs = {make_record("A", 28, 84, "paper"),
                                   make_record("B", 29, 85, "paper"),
                                   make_record("C", 30, 86, "paper")};
  auto g = build_knowledge_graph(recs);
  CHECK(g.count_of_kind(NodeKind::Event) == 3);
  CHECK(g.count_of_kind(NodeKind::Source) == 1);
  std::size_t has_source = 0;
  for (const auto& e : g.edges())
    if (e.kind == EdgeKind::HasSource) ++has_source;
  CHECK(has_source == 3);
}

TEST_CASE("empty input builds an empty graph") {
  auto g = build_knowledge_graph({});
  CHECK(g.node_count() == 0);
  CHECK(g.edge_count() == 0);
}

TEST_CASE("duplicate event ids abort construction") {
  std::vector<EventRecord> recs = {make_record("A", 28, 84), make_record("A", 29, 85)};
  CHECK_THROWS_AS(build_knowledge_graph(recs), ArgumentError);
}

TEST_CASE("fixture node counts match an independent dedup pass") {
  auto recs = fixture_records();
  auto g = build_knowledge_graph(recs);

  std::set<std::pair<std::string, std::string>> sources, profiles;
  std::set<std::pair<std::int64_t, std::int64_t>> gaz;
  for (const auto& r : recs) {
    if (auto k = source_key(r)) sources.insert(*k);
    gaz.insert(gazetteer_key(r.latitude, r.longitude));
    profiles.insert(profile_key(r));
  }
  CHECK(g.count_of_kind(NodeKind::Event) == recs.size());
  CHECK(g.count_of_kind(NodeKind::Source) == sources.size());
  CHECK(g.count_of_kind(NodeKind::GazetteerPoint) == gaz.size());
  CHECK(g.count_of_kind(NodeKind::LandslideProfile) == profiles.size());
  CHECK(g.node_count() == recs.size() + sources.size() + gaz.size() + profiles.size());
}

TEST_CASE("neighbors returns exactly the incident edges in order") {
  std::vector<EventRecord> recs = {make_record("A", 28, 84, "src1"),
                                   make_record("B", 28.01, 84.01, "src1")};
  auto g = build_knowledge_graph(recs);
  const NodeId a{0};

  auto profile_nbrs = g.neighbors(a, EdgeKind::HasProfile);
  REQUIRE(profile_nbrs.size() == 1);
  CHECK(g.node(profile_nbrs[0].first).kind == NodeKind::LandslideProfile);

  auto all = g.neighbors(a);
  CHECK(all.size() == 3);  // source, gazetteer, profile
  CHECK(std::is_sorted(all.begin(), all.end(), [](const auto& x, const auto& y) {
    return x.first < y.first;
  }));

  // an isolated node has no neighbors
  PropertyGraph lone(4);
  auto id = lone.add_node(NodeKind::Event, {});
  CHECK(lone.neighbors(id).empty());
  CHECK_THROWS_AS(lone.neighbors(NodeId{42}), LookupError);
}

TEST_CASE("near edges are symmetric and match a brute-force distance scan") {
  auto recs = fixture_records();
  auto g = build_knowledge_graph(recs);
  std::vector<GeoPoint> pts;
  std::vector<NodeId> event_ids;
  for (std::size_t i = 0; i < recs.size(); ++i) {
    pts.push_back({recs[i].latitude, recs[i].longitude});
    event_ids.push_back(NodeId{i});
  }
  const double threshold = 50.0;
  add_near_edges(g, event_ids, build_proximity_graph(pts, threshold));

  // symmetry with equal weights
  std::map<std::pair<std::uint64_t, std::uint64_t>, double> near;
  for (const auto& e : g.edges()) {
    if (e.kind != EdgeKind::Near) continue;
    near[{e.src.value, e.dst.value}] = *e.weight;
  }
  for (const auto& [key, w] : near) {
    auto rev = near.find({key.second, key.first});
    REQUIRE(rev != near.end());
    CHECK(rev->second == w);
  }

  // per-node neighbor sets equal the O(n^2) oracle
  for (std::size_t i = 0; i < recs.size(); ++i) {
    std::set<std::uint64_t> expect;
    for (std::size_t j = 0; j < recs.size(); ++j) {
      if (i != j && haversine_km(pts[i], pts[j]) <= threshold) expect.insert(j);
    }
    std::set<std::uint64_t> got;
    for (const auto& [nbr, edge] : g.neighbors(NodeId{i}, EdgeKind::Near))
      got.insert(nbr.value);
    CHECK(got == expect);
  }
}

TEST_CASE("top_k_similar self-query ranks the node first with similarity 1") {
  HashingEmbedder embedder(64);
  PropertyGraph g(64);
  auto a = g.add_node(NodeKind::Event, {}, embedder.embed("landslide in the valley"));
  g.add_node(NodeKind::Event, {}, embedder.embed("rockfall on the highway"));
  auto hits = g.top_k_similar(embedder.embed("landslide in the valley"), 2);
  REQUIRE(hits.size() == 2);
  CHECK(hits[0].first == a);
  CHECK(hits[0].second == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("top_k_similar on a store with no embeddings is empty") {
  PropertyGraph g(8);
  g.add_node(NodeKind::Event, {});
  CHECK(g.top_k_similar(Vector::Unit(8, 0), 3).empty());
  CHECK_THROWS_AS(g.top_k_similar(Vector::Unit(4, 0), 3), ArgumentError);
}

TEST_CASE("top_k_similar matches an exhaustive scan oracle") {
  const int dim = 32;
  std::mt19937_64 rng(17);
  PropertyGraph g(dim);
  std::vector<Vector> stored;
  for (int i = 0; i < 100; ++i) {
    stored.push_back(random_unit(rng, dim));
    g.add_node(i % 2 ? NodeKind::Event : NodeKind::Source, {}, stored.back());
  }
  const Vector query = random_unit(rng, dim);

  auto oracle = [&](std::optional<NodeKind> filter, std::size_t k) {
    std::vector<std::pair<std::uint64_t, double>> scored;
    for (std::size_t i = 0; i < stored.size(); ++i) {
      if (filter && (i % 2 ? NodeKind::Event : NodeKind::Source) != *filter) continue;
      scored.emplace_back(i, query.dot(stored[i]));
    }
    std::sort(scored.begin(), scored.end(), [](const auto& x, const auto& y) {
      if (x.second != y.second) return x.second > y.second;
      return x.first < y.first;
    });
    scored.resize(std::min(k, scored.size()));
    return scored;
  };

  auto got = g.top_k_similar(query, 10);
  auto want = oracle(std::nullopt, 10);
  REQUIRE(got.size() == want.size());
  for (std::size_t i = 0; i < got.size(); ++i) {
    CHECK(got[i].first.value == want[i].first);
    CHECK(got[i].second == doctest::Approx(want[i].second).epsilon(1e-12));
  }

  // with k = store size the full order is consistent with pairwise cosine
  auto full = g.top_k_similar(query, 100, NodeKind::Event);
  auto full_want = oracle(NodeKind::Event, 100);
  REQUIRE(full.size() == full_want.size());
  for (std::size_t i = 1; i < full.size(); ++i) CHECK(full[i - 1].second >= full[i].second);
  for (std::size_t i = 0; i < full.size(); ++i) CHECK(full[i].first.value == full_want[i].first);
}

TEST_CASE("graph json export round-trips") {
  HashingEmbedder embedder(32);
  auto recs = std::vector<EventRecord>{make_record("A", 28, 84, "src"),
                                       make_record("B", 28.01, 84.02, "src")};
  auto g = build_knowledge_graph(recs, &embedder);
  add_near_edges(g, {NodeId{0}, NodeId{1}},
                 build_proximity_graph({{28, 84}, {28.01, 84.02}}, 50));

  const std::string text = graph_to_json(g);
  auto g2 = graph_from_json(text);
  CHECK(g2.node_count() == g.node_count());
  CHECK(g2.edge_count() == g.edge_count());
  CHECK(graph_to_json(g2) == text);

  const auto& n0 = g2.node(NodeId{0});
  CHECK(n0.kind == NodeKind::Event);
  CHECK(std::get<std::string>(n0.properties.at("event_id")) == "A");
  REQUIRE(n0.embedding.has_value());
  CHECK(n0.embedding->size() == 32);
}

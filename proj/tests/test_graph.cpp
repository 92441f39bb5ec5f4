#include <doctest.h>

#include <filesystem>
#include <random>

#include "covns/benchgen.hpp"
#include "covns/graph.hpp"
#include "covns/graph_io.hpp"
#include "oracles.hpp"

using namespace covns;

TEST_CASE("build_graph computes strengths and total weight") {
  const auto g = build_graph({{0, 1, 5.0}, {1, 0, 3.0}}, 2);
  CHECK(g.in_strength()(0) == 3.0);
  CHECK(g.out_strength()(0) == 5.0);
  CHECK(g.in_strength()(1) == 5.0);
  CHECK(g.out_strength()(1) == 3.0);
  CHECK(g.total_weight() == 8.0);
  CHECK(g.weight(0, 1) == 5.0);
  CHECK(g.weight(1, 0) == 3.0);
}

TEST_CASE("build_graph accepts an empty edge list but solvers reject it") {
  const auto g = build_graph({}, 3);
  CHECK(g.node_count() == 3);
  CHECK(g.total_weight() == 0.0);
  CHECK_THROWS_AS(modularity(g, repair({1, 1, 1})), std::invalid_argument);
}

TEST_CASE("build_graph rejects malformed edges") {
  CHECK_THROWS_WITH_AS(build_graph({{1, 1, 2.0}}, 3), doctest::Contains("self-loop"),
                       std::invalid_argument);
  CHECK_THROWS_WITH_AS(build_graph({{0, 1, -1.0}}, 3), doctest::Contains("negative"),
                       std::invalid_argument);
  CHECK_THROWS_WITH_AS(build_graph({{0, 1, 1.0}, {0, 1, 2.0}}, 3), doctest::Contains("duplicate"),
                       std::invalid_argument);
  CHECK_THROWS_AS(build_graph({{0, 3, 1.0}}, 3), std::invalid_argument);
  CHECK_THROWS_AS(build_graph({}, 0), std::invalid_argument);
}

TEST_CASE("cached strengths equal a naive recomputation on a generated graph") {
  GenSpec spec;
  spec.base_node_count = 20;
  spec.communities = 4;
  spec.instance_count = 1;
  Rng rng(11);
  const auto inst = generate_base(spec, rng);
  const auto w = oracle::dense(inst.graph);
  double total_in = 0.0;
  for (std::size_t v = 0; v < w.size(); ++v) {
    double row = 0.0, col = 0.0;
    for (std::size_t u = 0; u < w.size(); ++u) {
      row += w[v][u];
      col += w[u][v];
    }
    CHECK(inst.graph.out_strength()(static_cast<Eigen::Index>(v)) == row);
    CHECK(inst.graph.in_strength()(static_cast<Eigen::Index>(v)) == col);
    total_in += col;
  }
  double total_out = 0.0;
  for (std::size_t v = 0; v < w.size(); ++v) total_out += inst.graph.out_strength()(static_cast<Eigen::Index>(v));
  CHECK(total_out == inst.graph.total_weight());
  CHECK(total_in == doctest::Approx(inst.graph.total_weight()).epsilon(1e-14));
}

TEST_CASE("single community has zero modularity") {
  std::mt19937_64 gen(3);
  for (std::size_t n : {2u, 5u, 17u, 40u}) {
    const auto w = oracle::random_weights(n, gen);
    const auto g = oracle::to_graph(w);
    CHECK(std::abs(modularity(g, repair(std::vector<int>(n, 1)))) < 1e-12);
  }
}

TEST_CASE("modularity matches brute force over all partitions of 4 nodes") {
  std::mt19937_64 gen(5);
  const auto w = oracle::random_weights(4, gen, 0.9);
  const auto g = oracle::to_graph(w);
  const auto all = oracle::set_partitions(4);
  REQUIRE(all.size() == 15);
  for (const auto& labels : all) {
    CHECK(std::abs(modularity(g, repair(labels)) - oracle::modularity(w, labels)) < 1e-12);
  }
}

TEST_CASE("modularity on the ten-node decode example matches the oracle") {
  std::mt19937_64 gen(10);
  const auto w = oracle::random_weights(10, gen);
  const auto g = oracle::to_graph(w);
  const std::vector<int> labels{1, 2, 2, 3, 3, 1, 1, 2, 3, 3};
  CHECK(std::abs(modularity(g, repair(labels)) - oracle::modularity(w, labels)) < 1e-12);
}

TEST_CASE("modularity is invariant under label permutation") {
  std::mt19937_64 gen(21);
  const auto g = oracle::to_graph(oracle::random_weights(12, gen));
  const std::vector<int> raw{4, 1, 1, 7, 4, 2, 7, 7, 1, 2, 4, 9};
  const std::vector<int> perm{9, 3, 3, 1, 9, 5, 1, 1, 3, 5, 9, 2};
  CHECK(modularity(g, repair(raw)) == modularity(g, repair(perm)));
}

TEST_CASE("modularity rejects a partition of the wrong length") {
  const auto g = build_graph({{0, 1, 1.0}}, 2);
  CHECK_THROWS_AS(modularity(g, repair({1, 1, 1})), std::invalid_argument);
}

TEST_CASE("modularity is generic over the scalar type") {
  std::mt19937_64 gen(8);
  const auto w = oracle::random_weights(9, gen);
  std::vector<BasicEdge<long double>> edges;
  for (std::size_t i = 0; i < w.size(); ++i) {
    for (std::size_t j = 0; j < w.size(); ++j) {
      if (w[i][j] != 0.0) edges.push_back({i, j, static_cast<long double>(w[i][j])});
    }
  }
  const auto g_long = build_graph<long double>(edges, w.size());
  const auto g = oracle::to_graph(w);
  const auto p = repair({1, 2, 1, 3, 2, 2, 1, 3, 3});
  CHECK(std::abs(static_cast<double>(modularity(g_long, p)) - modularity(g, p)) < 1e-13);
}

TEST_CASE("modularity_delta") {
  std::mt19937_64 gen(42);

  SUBCASE("identity move is zero") {
    const auto g = oracle::to_graph(oracle::random_weights(6, gen));
    const auto p = repair({1, 2, 2, 1, 3, 3});
    CHECK(modularity_delta(g, p, 2, 2) == 0.0);
  }

  SUBCASE("random moves agree with full recomputation") {
    for (int trial = 0; trial < 200; ++trial) {
      const auto w = oracle::random_weights(8, gen);
      const auto g = oracle::to_graph(w);
      std::uniform_int_distribution<int> label(1, 4);
      std::vector<int> raw(8);
      for (auto& l : raw) l = label(gen);
      const auto p = repair(raw);
      const std::size_t node = std::uniform_int_distribution<std::size_t>(0, 7)(gen);
      const int target = std::uniform_int_distribution<int>(1, p.community_count() + 1)(gen);
      std::vector<int> moved(p.labels().begin(), p.labels().end());
      moved[node] = target;
      const double expected = oracle::modularity(w, moved) - oracle::modularity(w, raw);
      CHECK(std::abs(modularity_delta(g, p, node, target) - expected) < 1e-9);
    }
  }

  SUBCASE("fresh singleton on a two-node graph") {
    const auto g = build_graph({{0, 1, 2.0}, {1, 0, 1.0}}, 2);
    const auto p = repair({1, 1});
    const double expected = modularity(g, repair({1, 2})) - modularity(g, p);
    CHECK(std::abs(modularity_delta(g, p, 1, 2) - expected) < 1e-12);
  }

  SUBCASE("invalid node or label") {
    const auto g = build_graph({{0, 1, 2.0}}, 2);
    const auto p = repair({1, 1});
    CHECK_THROWS_AS(modularity_delta(g, p, 2, 1), std::invalid_argument);
    CHECK_THROWS_AS(modularity_delta(g, p, 0, 0), std::invalid_argument);
  }

  SUBCASE("a thousand composed moves stay within 1e-8 of the endpoint") {
    const auto w = oracle::random_weights(15, gen);
    const auto g = oracle::to_graph(w);
    std::vector<int> labels(15, 1);
    auto p = repair(labels);
    const double start = modularity(g, p);
    double accumulated = 0.0;
    for (int step = 0; step < 1000; ++step) {
      const std::size_t node = std::uniform_int_distribution<std::size_t>(0, 14)(gen);
      const int target = std::uniform_int_distribution<int>(1, p.community_count() + 1)(gen);
      accumulated += modularity_delta(g, p, node, target);
      std::vector<int> next(p.labels().begin(), p.labels().end());
      next[node] = target;
      p = repair(next);
    }
    CHECK(std::abs(start + accumulated - modularity(g, p)) < 1e-8);
  }
}

TEST_CASE("graph JSON round-trips exactly") {
  GenSpec spec;
  spec.base_node_count = 15;
  spec.communities = 3;
  Rng rng(4);
  const auto inst = generate_base(spec, rng);
  const auto dir = std::filesystem::temp_directory_path() / "covns_graph_io_test";
  std::filesystem::create_directories(dir);
  write_graph_file(dir / "g.json", inst.graph, inst.ground_truth);
  const GraphFile back = read_graph_file(dir / "g.json");
  CHECK(back.graph.weights() == inst.graph.weights());
  REQUIRE(back.ground_truth.has_value());
  CHECK(*back.ground_truth == inst.ground_truth);
  CHECK(graph_to_json(back.graph, back.ground_truth) == graph_to_json(inst.graph, inst.ground_truth));
  std::filesystem::remove_all(dir);
}

TEST_CASE("graph JSON uses 1-based indices and rejects bad documents") {
  const auto j = nlohmann::json::parse(R"({"node_count": 3, "edges": [[1, 3, 2.5], [3, 2, 1.0]]})");
  const GraphFile f = graph_from_json(j);
  CHECK(f.graph.weight(0, 2) == 2.5);
  CHECK(f.graph.weight(2, 1) == 1.0);
  CHECK_FALSE(f.ground_truth.has_value());

  CHECK_THROWS(graph_from_json(nlohmann::json::parse(R"({"edges": []})")));
  CHECK_THROWS(graph_from_json(nlohmann::json::parse(R"({"node_count": 2, "edges": [[0, 1, 1.0]]})")));
  CHECK_THROWS(graph_from_json(nlohmann::json::parse(R"({"node_count": 2, "edges": [[1, 1, 1.0]]})")));
  CHECK_THROWS(graph_from_json(
      nlohmann::json::parse(R"({"node_count": 2, "edges": [], "ground_truth": [1, 2, 2]})")));
}

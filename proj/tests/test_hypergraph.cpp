#include <doctest.h>

#include <set>
#include <sstream>

#include "flagbound/error.hpp"
#include "flagbound/io.hpp"
#include "support.hpp"

using namespace flagbound;

namespace {
// Vertices a, b, c, d are 1..4; edges acd and bcd.
Hypergraph h2() { return Hypergraph::from_compact(3, 4, "134 234"); }
}  // namespace

TEST_CASE("density") {
  CHECK(density(h2()) == Rational(1, 2));
  CHECK(density(Hypergraph(3, 5)) == 0);
  CHECK(density(Hypergraph::from_compact(3, 4, "123 124 134 234")) == 1);
  CHECK_THROWS_AS(density(Hypergraph(3, 2)), Error);
}

TEST_CASE("construction rejects bad edges") {
  CHECK_THROWS_AS(Hypergraph(3, 4, {0b0011}), Error);
  CHECK_THROWS_AS(Hypergraph(3, 4, {0b10011}), Error);
  CHECK_THROWS_AS(Hypergraph(3, 4, {0b0111, 0b0111}), Error);
}

TEST_CASE("induced subgraph") {
  std::vector<int> acd{0, 2, 3};
  CHECK(induced_subgraph(h2(), acd) == Hypergraph::from_compact(3, 3, "123"));
  std::vector<int> all{0, 1, 2, 3};
  CHECK(induced_subgraph(h2(), all) == h2());
  auto k5 = test::graph_from_bits(5, 0x3ff);
  auto k4 = Hypergraph::from_compact(3, 4, "123 124 134 234");
  for (VertexMask s : {0b01111u, 0b10111u, 0b11011u, 0b11101u, 0b11110u}) CHECK(induced_subgraph(k5, s) == k4);
  std::vector<int> repeated{0, 0, 1};
  CHECK_THROWS_AS(induced_subgraph(h2(), repeated), Error);
}

TEST_CASE("canonical form is idempotent and relabeling invariant") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    int n = 3 + trial % 5;
    auto h = test::random_graph(rng, n, 0.4);
    auto c = canonical_form(h);
    CHECK(canonical_form(c) == c);
    CHECK(canonical_form(h.relabel(test::random_permutation(rng, n))) == c);
    CHECK(h.relabel(canonical_labeling(h)) == c);
  }
}

TEST_CASE("the three K4-minus-free 4-vertex graphs have distinct canonical forms") {
  std::set<std::vector<VertexMask>> forms;
  for (const char* e : {"", "123", "134 234"}) {
    auto c = canonical_form(Hypergraph::from_compact(3, 4, e));
    forms.insert(std::vector<VertexMask>(c.edges().begin(), c.edges().end()));
  }
  CHECK(forms.size() == 3);
}

TEST_CASE("isomorphism examples") {
  auto f1 = test::k4_minus();
  CHECK(is_isomorphic(f1, Hypergraph::from_compact(3, 4, "234 134 124")));
  CHECK_FALSE(is_isomorphic(Hypergraph::from_compact(3, 4, "123"), h2()));
  CHECK_FALSE(is_isomorphic(Hypergraph::from_compact(3, 5, "123 124 125 345"),
                            Hypergraph::from_compact(3, 5, "123 124 235 145 345")));
}

TEST_CASE("isomorphism agrees with brute-force permutation search") {
  std::mt19937_64 rng(2024);
  int agreed = 0, iso = 0;
  for (int trial = 0; trial < 500; ++trial) {
    int n = 3 + trial % 4;
    auto a = test::random_graph(rng, n, 0.5);
    Hypergraph b;
    if (trial % 2 == 0) {
      b = a.relabel(test::random_permutation(rng, n));
    } else {
      // same edge count, otherwise random: the interesting negative cases
      do b = test::random_graph(rng, n, 0.5);
      while (b.size() != a.size() && trial % 4 == 1);
    }
    bool expected = test::brute_isomorphic(a, b);
    iso += expected;
    agreed += (is_isomorphic(a, b) == expected);
    CHECK((canonical_form(a) == canonical_form(b)) == expected);
  }
  CHECK(agreed == 500);
  CHECK(iso >= 250);
}

TEST_CASE("subgraph containment") {
  auto k4 = Hypergraph::from_compact(3, 4, "123 124 134 234");
  CHECK(contains_subgraph(k4, test::k4_minus()));
  CHECK_FALSE(contains_subgraph(h2(), test::k4_minus()));
  auto f1 = test::k4_minus();
  auto f4 = Hypergraph::from_compact(3, 7, "123 135 145 245 126 246 346 356 237 147 347 257 167");
  CHECK(contains_subgraph(f4, f1) == test::brute_contains(f4, f1));
  CHECK_FALSE(contains_subgraph(f4, f1));

  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 300; ++trial) {
    auto h = test::random_graph(rng, 5 + trial % 2, 0.5);
    auto f = test::random_graph(rng, 4, 0.4);
    CHECK(contains_subgraph(h, f) == test::brute_contains(h, f));
  }
}

TEST_CASE("automorphism groups") {
  CHECK(automorphisms(Hypergraph(3, 2)).size() == 2);
  CHECK(automorphisms(h2()).size() == 4);
  CHECK(automorphisms(h2()).size() == test::brute_automorphism_count(h2()));
  CHECK(automorphisms(Hypergraph::from_compact(3, 3, "123")).size() == 6);
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 60; ++trial) {
    auto h = test::random_graph(rng, 3 + trial % 4, 0.5);
    auto group = automorphisms(h);
    CHECK(group.size() == test::brute_automorphism_count(h));
    CHECK(group.front().is_identity());
    for (const auto& a : group) CHECK(h.relabel(a) == h);
  }
}

TEST_CASE("text formats round-trip") {
  std::mt19937_64 rng(3);
  std::vector<Hypergraph> gs;
  for (int i = 0; i < 10; ++i) gs.push_back(test::random_graph(rng, 3 + i % 5, 0.5));
  std::stringstream ss;
  write_hypergraphs(ss, gs);
  CHECK(read_hypergraphs(ss) == gs);
  for (const auto& g : gs) CHECK(parse_inline(format_inline(g)) == g);
  CHECK_THROWS_AS(parse_inline("3 4 : 1 2"), Error);
  CHECK_THROWS_AS(read_hypergraph_file("/nonexistent/graph.txt"), Error);
}

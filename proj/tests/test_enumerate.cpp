#include <doctest.h>

#include <set>

#include "flagbound/enumerate.hpp"
#include "flagbound/error.hpp"
#include "flagbound/io.hpp"
#include "flagbound/jump.hpp"
#include "support.hpp"

using namespace flagbound;

namespace {

struct BruteResult {
  std::size_t classes = 0;
  int max_edges = 0;
};

// Every labeled 3-graph on n vertices, filtered by brute-force containment
// and grouped by brute-force canonical form.
BruteResult brute_admissible(const ForbiddenFamily& family, int n) {
  const auto triples = test::all_triples(n).size();
  std::set<std::vector<VertexMask>> classes;
  BruteResult out;
  for (std::uint64_t bits = 0; bits < (1ull << triples); ++bits) {
    auto g = test::graph_from_bits(n, bits);
    bool ok = true;
    for (const auto& f : family.members()) ok = ok && !test::brute_contains(g, f);
    if (!ok) continue;
    out.max_edges = std::max(out.max_edges, static_cast<int>(g.size()));
    classes.insert(test::brute_canonical(g));
  }
  out.classes = classes.size();
  return out;
}

ForbiddenFamily single(Hypergraph h) { return ForbiddenFamily({std::move(h)}); }

}  // namespace

TEST_CASE("K4-minus-free graphs on 4 vertices") {
  auto graphs = enumerate_admissible(single(test::k4_minus()), 4);
  REQUIRE(graphs.size() == 3);
  CHECK(graphs[0].size() == 0);
  CHECK(graphs[1].size() == 1);
  CHECK(graphs[2].size() == 2);
  CHECK(enumerate_admissible(single(test::k4_minus()), 3).size() == 2);
}

TEST_CASE("F-prime-free graphs on 7 vertices") {
  auto graphs = enumerate_admissible(builtin_family("F-prime"), 7);
  CHECK(graphs.size() == 4042);
  for (std::size_t i = 1; i < graphs.size(); ++i) CHECK(canonical_order_less(graphs[i - 1], graphs[i]));
}

TEST_CASE("enumeration output is canonical, admissible and closed under vertex deletion") {
  auto family = builtin_family("F-star");
  auto six = enumerate_admissible(family, 6);
  auto five = enumerate_admissible(family, 5);
  std::set<std::vector<VertexMask>> five_forms;
  for (const auto& g : five) {
    CHECK(canonical_form(g) == g);
    five_forms.insert(std::vector<VertexMask>(g.edges().begin(), g.edges().end()));
  }
  for (const auto& g : six) {
    CHECK(canonical_form(g) == g);
    CHECK(family.admits(g));
    for (int v = 0; v < 6; ++v) {
      auto c = canonical_form(g.without_vertex(v));
      CHECK(five_forms.count(std::vector<VertexMask>(c.edges().begin(), c.edges().end())) == 1);
    }
  }
}

TEST_CASE("degenerate orders") {
  CHECK_THROWS_AS(enumerate_admissible(single(test::k4_minus()), 2), Error);
  CHECK(enumerate_admissible_any_order(single(test::k4_minus()), 2).size() == 1);
}

TEST_CASE("turan numbers") {
  CHECK(turan_number(single(Hypergraph::from_compact(3, 3, "123")), 5) == 0);
  CHECK(turan_number(single(test::k4_minus()), 4) == 2);
  auto k4 = single(Hypergraph::from_compact(3, 4, "123 124 134 234"));
  CHECK(turan_number(k4, 5) == brute_admissible(k4, 5).max_edges);
  CHECK(turan_number(k4, 5) == 7);
  CHECK_THROWS_AS(turan_number(k4, 9, 7), Error);
}

TEST_CASE("enumeration and turan numbers agree with exhaustive search on random families") {
  std::mt19937_64 rng(77);
  for (int fam = 0; fam < 5; ++fam) {
    std::vector<Hypergraph> members;
    int count = 1 + fam % 2;
    while (static_cast<int>(members.size()) < count) {
      auto g = test::random_graph(rng, 4 + static_cast<int>(rng() % 2), 0.45);
      if (g.size() > 0) members.push_back(g);
    }
    ForbiddenFamily family(members);
    for (int n = 3; n <= 5; ++n) {
      auto brute = brute_admissible(family, n);
      CAPTURE(n);
      CAPTURE(format_inline(family.members()[0]));
      auto graphs = enumerate_admissible(family, n);
      CHECK(graphs.size() == brute.classes);
      int max_edges = 0;
      for (const auto& g : graphs) max_edges = std::max(max_edges, static_cast<int>(g.size()));
      CHECK(turan_number(family, n) == brute.max_edges);
      CHECK(max_edges == brute.max_edges);
    }
  }
}

TEST_CASE("families reject mixed uniformity and drop isomorphic duplicates") {
  CHECK_THROWS_AS(ForbiddenFamily({Hypergraph::from_compact(3, 4, "123"), Hypergraph(2, 3)}), Error);
  CHECK_THROWS_AS(ForbiddenFamily(std::vector<Hypergraph>{}), Error);
  ForbiddenFamily f({test::k4_minus(), Hypergraph::from_compact(3, 4, "234 134 124")});
  CHECK(f.members().size() == 1);
}

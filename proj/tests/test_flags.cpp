#include <doctest.h>

#include "flagbound/enumerate.hpp"
#include "flagbound/error.hpp"
#include "flagbound/flags.hpp"
#include "flagbound/jump.hpp"
#include "support.hpp"

using namespace flagbound;

namespace {

ForbiddenFamily k4m() { return ForbiddenFamily({test::k4_minus()}); }
TypeSigma empty_pair() { return TypeSigma(Hypergraph(3, 2)); }

// Fraction of injective theta: [s] -> V(H) under which H induces sigma.
Rational type_probability(const TypeSigma& sigma, const Hypergraph& h) {
  const int s = sigma.size();
  const int n = h.order();
  std::vector<int> image(static_cast<std::size_t>(s));
  std::vector<bool> used(static_cast<std::size_t>(n));
  long hits = 0, total = 0;
  auto rec = [&](auto&& self, int i) -> void {
    if (i == s) {
      ++total;
      bool ok = true;
      for (auto t : test::all_triples(s)) {
        VertexMask m = 0;
        for (int v = 0; v < s; ++v)
          if ((t >> v) & 1u) m |= 1u << image[static_cast<std::size_t>(v)];
        ok = ok && (sigma.graph().has_edge(t) == h.has_edge(m));
      }
      hits += ok;
      return;
    }
    for (int v = 0; v < n; ++v) {
      if (used[static_cast<std::size_t>(v)]) continue;
      used[static_cast<std::size_t>(v)] = true;
      image[static_cast<std::size_t>(i)] = v;
      self(self, i + 1);
      used[static_cast<std::size_t>(v)] = false;
    }
  };
  rec(rec, 0);
  return test::frac(hits, total);
}

RationalMatrix random_matrix(std::mt19937_64& rng, std::size_t n) {
  std::uniform_int_distribution<int> d(-5, 5);
  RationalMatrix q(n, std::vector<Rational>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) q[i][j] = q[j][i] = test::frac(d(rng), 1 + (d(rng) + 5) % 4);
  return q;
}

}  // namespace

TEST_CASE("flag bases") {
  auto basis = enumerate_flags(empty_pair(), 3, k4m());
  REQUIRE(basis.size() == 2);
  CHECK(basis[0].graph().size() == 0);
  CHECK(basis[1].graph().size() == 1);
  CHECK(enumerate_flags(TypeSigma(Hypergraph(3, 1)), 1, k4m()).size() == 1);
  CHECK(enumerate_flags(TypeSigma(Hypergraph(3, 3)), 3, builtin_family("F-prime")).size() == 1);
  CHECK_THROWS_AS(enumerate_flags(empty_pair(), 1, k4m()), Error);
  CHECK_THROWS_AS(enumerate_flags(TypeSigma(test::k4_minus()), 5, k4m()), Error);
}

TEST_CASE("flag isomorphism fixes the labeled vertices") {
  Flag a(Hypergraph::from_compact(3, 4, "123"), 2);
  Flag b(Hypergraph::from_compact(3, 4, "124"), 2);
  Flag c(Hypergraph::from_compact(3, 4, "134"), 2);
  CHECK(flag_isomorphic(a, b));
  CHECK(flag_isomorphic(a, a));
  CHECK_FALSE(flag_isomorphic(a, c));
  Flag f0(Hypergraph(3, 3), 2);
  Flag f1(Hypergraph::from_compact(3, 3, "123"), 2);
  CHECK_FALSE(flag_isomorphic(f0, f1));
  CHECK_THROWS_AS(Flag(Hypergraph::from_compact(3, 4, "123"), TypeSigma(Hypergraph(3, 3))), Error);
}

TEST_CASE("golden pair table for K4-minus at l = 4") {
  auto family = k4m();
  auto graphs = enumerate_admissible(family, 4);
  auto basis = enumerate_flags(empty_pair(), 3, family);
  auto tensor = pair_density_tensor(basis, graphs);
  const Rational table[3][3] = {{1, Rational(1, 2), Rational(1, 6)},
                                {0, Rational(1, 4), Rational(1, 3)},
                                {0, 0, Rational(1, 6)}};
  const int pairs[3][2] = {{0, 0}, {0, 1}, {1, 1}};
  for (int p = 0; p < 3; ++p) {
    for (int h = 0; h < 3; ++h) {
      const auto [a, b] = pairs[p];
      CHECK(tensor.value(h, a, b) == table[p][h]);
      CHECK(tensor.value(h, b, a) == table[p][h]);
      CHECK(pair_expectation(basis[a], basis[b], empty_pair(), graphs[h]) == table[p][h]);
    }
  }
  CHECK(pair_expectation(basis[0], basis[1], empty_pair(), graphs[2]) == Rational(1, 3));
  auto empty4 = tensor.matrix(0);
  CHECK(empty4 == RationalMatrix{{1, 0}, {0, 0}});
}

TEST_CASE("fast pair counts agree with the direct definition") {
  auto family = builtin_family("F-star");
  auto graphs = enumerate_admissible(family, 6);
  std::mt19937_64 rng(4);
  const std::vector<std::pair<TypeSigma, int>> types{
      {TypeSigma(Hypergraph(3, 2)), 4},
      {TypeSigma(Hypergraph::from_compact(3, 3, "123")), 4},
      {TypeSigma(Hypergraph(3, 4)), 5},
  };
  for (const auto& [sigma, m] : types) {
    auto basis = enumerate_flags(sigma, m, family);
    for (int trial = 0; trial < 6; ++trial) {
      const auto& h = graphs[rng() % graphs.size()];
      auto counts = pair_counts(basis, h);
      for (std::size_t a = 0; a < basis.size(); ++a)
        for (std::size_t b = a; b < basis.size(); ++b)
          CHECK(counts.value(static_cast<int>(a), static_cast<int>(b)) ==
                pair_expectation(basis[a], basis[b], sigma, h));
    }
  }
}

TEST_CASE("pair matrices sum to the probability that theta induces the type") {
  auto family = builtin_family("F-prime");
  auto graphs = enumerate_admissible(family, 7);
  std::mt19937_64 rng(8);
  const std::vector<std::pair<TypeSigma, int>> types{
      {TypeSigma(Hypergraph(3, 1)), 4},
      {TypeSigma(Hypergraph(3, 3)), 5},
      {TypeSigma(Hypergraph::from_compact(3, 3, "123")), 5},
      {TypeSigma(Hypergraph::from_compact(3, 5, "123 124 345")), 6},
  };
  for (const auto& [sigma, m] : types) {
    auto basis = enumerate_flags(sigma, m, family);
    for (int trial = 0; trial < 10; ++trial) {
      const auto& h = graphs[rng() % graphs.size()];
      auto counts = pair_counts(basis, h);
      Rational sum = 0;
      for (std::size_t a = 0; a < basis.size(); ++a)
        for (std::size_t b = 0; b < basis.size(); ++b) sum += counts.value(static_cast<int>(a), static_cast<int>(b));
      CHECK(sum == type_probability(sigma, h));
      if (sigma.size() < 3) CHECK(sum == 1);
    }
  }
}

TEST_CASE("subgraph densities") {
  std::mt19937_64 rng(1);
  auto g = test::random_graph(rng, 6, 0.5);
  CHECK(subgraph_density(g, g) == 1);
  auto k4 = Hypergraph::from_compact(3, 4, "123 124 134 234");
  CHECK(subgraph_density(Hypergraph(3, 3), k4) == 0);
  CHECK(subgraph_density(Hypergraph::from_compact(3, 3, "123"), k4) == 1);
}

TEST_CASE("density is the average density of l-vertex subgraphs") {
  // A member with more vertices than any graph here admits everything.
  ForbiddenFamily nothing({Hypergraph(3, 8)});
  std::mt19937_64 rng(12);
  for (int l : {4, 5}) {
    auto all = enumerate_admissible(nothing, l);
    for (int trial = 0; trial < 25; ++trial) {
      auto g = test::random_graph(rng, l + static_cast<int>(rng() % (8 - l)), 0.5);
      Rational sum = 0, total = 0;
      for (const auto& h : all) {
        auto p = subgraph_density(h, g);
        sum += density(h) * p;
        total += p;
      }
      CHECK(total == 1);
      CHECK(sum == density(g));
    }
  }
}

TEST_CASE("quadratic forms of PSD matrices are nonnegative on flag densities") {
  auto family = k4m();
  std::mt19937_64 rng(21);
  const std::vector<std::pair<TypeSigma, int>> types{{empty_pair(), 3}, {empty_pair(), 4},
                                                     {TypeSigma(Hypergraph::from_compact(3, 3, "123")), 4}};
  for (const auto& [sigma, m] : types) {
    auto basis = enumerate_flags(sigma, m, family);
    std::uniform_int_distribution<int> d(-3, 3);
    for (int trial = 0; trial < 20; ++trial) {
      Hypergraph g;
      do g = test::random_graph(rng, 7, 0.2);
      while (!family.admits(g) || (sigma.graph().size() > 0 && g.size() == 0));
      // Q = L L^T
      const std::size_t n = basis.size();
      RationalMatrix l(n, std::vector<Rational>(n));
      for (auto& row : l)
        for (auto& x : row) x = d(rng);
      RationalMatrix q(n, std::vector<Rational>(n));
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          for (std::size_t k = 0; k < n; ++k) q[i][j] += l[i][k] * l[j][k];
      std::vector<int> theta;
      if (sigma.size() == 2) {
        theta = {static_cast<int>(rng() % 7), 0};
        do theta[1] = static_cast<int>(rng() % 7);
        while (theta[1] == theta[0]);
      } else {
        auto e = g.edges()[rng() % g.size()];
        for (int v = 0; v < 7; ++v)
          if ((e >> v) & 1u) theta.push_back(v);
      }
      auto p = flag_densities(basis, g, theta);
      Rational form = 0;
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) form += p[i] * q[i][j] * p[j];
      CHECK(form >= 0);
    }
  }
}

TEST_CASE("c_H values") {
  auto family = k4m();
  auto graphs = enumerate_admissible(family, 4);
  auto tensor = pair_density_tensor(empty_pair(), 3, graphs, family);
  RationalMatrix q{{Rational(1, 3), Rational(-2, 3)}, {Rational(-2, 3), Rational(4, 3)}};
  CHECK(c_h(q, tensor, 1) == Rational(-1, 6));
  CHECK(density(graphs[1]) + c_h(q, tensor, 1) == Rational(1, 12));
  RationalMatrix zero(2, std::vector<Rational>(2));
  for (std::size_t h = 0; h < 3; ++h) CHECK(c_h(zero, tensor, h) == 0);
  RationalMatrix id{{1, 0}, {0, 1}};
  CHECK(c_h(id, tensor, 0) == 1);
  CHECK_THROWS_AS(c_h(RationalMatrix{{1}}, tensor, 0), Error);
}

TEST_CASE("c_H is linear in Q") {
  auto family = builtin_family("F-star");
  auto graphs = enumerate_admissible(family, 6);
  auto tensor = pair_density_tensor(TypeSigma(Hypergraph(3, 2)), 4, graphs, family);
  std::mt19937_64 rng(6);
  for (int trial = 0; trial < 10; ++trial) {
    auto q1 = random_matrix(rng, tensor.dimension());
    auto q2 = random_matrix(rng, tensor.dimension());
    Rational alpha = test::frac(static_cast<long>(rng() % 7) - 3, 2);
    Rational beta = test::frac(static_cast<long>(rng() % 5) + 1, 3);
    RationalMatrix mix = q1;
    for (std::size_t i = 0; i < mix.size(); ++i)
      for (std::size_t j = 0; j < mix.size(); ++j) mix[i][j] = alpha * q1[i][j] + beta * q2[i][j];
    const std::size_t h = rng() % graphs.size();
    CHECK(c_h(mix, tensor, h) == alpha * c_h(q1, tensor, h) + beta * c_h(q2, tensor, h));
  }
}

TEST_CASE("averaging bound") {
  CHECK(averaging_bound(enumerate_admissible(k4m(), 4)) == Rational(1, 2));
  CHECK(averaging_bound(enumerate_admissible(builtin_family("F-prime"), 7)) >= Rational(2299, 10000));
  std::vector<Hypergraph> empty{Hypergraph(3, 5)};
  CHECK(averaging_bound(empty) == 0);
  CHECK(default_flag_order(7, 3) == 5);
  CHECK(default_flag_order(7, 1) == 4);
}

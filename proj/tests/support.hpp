#pragma once

#include <algorithm>
#include <numeric>
#include <random>
#include <vector>

#include "flagbound/hypergraph.hpp"
#include "flagbound/rational.hpp"

namespace test {

using flagbound::Hypergraph;
using flagbound::Permutation;
using flagbound::VertexMask;

/// p/q in lowest terms.
inline flagbound::Rational frac(long p, long q) {
  flagbound::Rational r(p, q);
  r.canonicalize();
  return r;
}

inline std::vector<VertexMask> all_triples(int n) {
  std::vector<VertexMask> out;
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      for (int c = b + 1; c < n; ++c) out.push_back((1u << a) | (1u << b) | (1u << c));
  return out;
}

inline Hypergraph graph_from_bits(int n, std::uint64_t bits) {
  auto t = all_triples(n);
  std::vector<VertexMask> e;
  for (std::size_t i = 0; i < t.size(); ++i)
    if ((bits >> i) & 1u) e.push_back(t[i]);
  return Hypergraph(3, n, e);
}

inline Hypergraph random_graph(std::mt19937_64& rng, int n, double p) {
  std::bernoulli_distribution coin(p);
  std::vector<VertexMask> e;
  for (auto t : all_triples(n))
    if (coin(rng)) e.push_back(t);
  return Hypergraph(3, n, e);
}

inline Permutation random_permutation(std::mt19937_64& rng, int n) {
  std::vector<int> p(static_cast<std::size_t>(n));
  std::iota(p.begin(), p.end(), 0);
  std::shuffle(p.begin(), p.end(), rng);
  return Permutation(p);
}

inline std::vector<VertexMask> sorted_edges(const Hypergraph& h) {
  std::vector<VertexMask> e(h.edges().begin(), h.edges().end());
  std::sort(e.begin(), e.end());
  return e;
}

inline std::vector<VertexMask> mapped_edges(const Hypergraph& h, const std::vector<int>& image) {
  std::vector<VertexMask> e;
  for (auto edge : h.edges()) {
    VertexMask m = 0;
    for (int v = 0; v < h.order(); ++v)
      if ((edge >> v) & 1u) m |= 1u << image[static_cast<std::size_t>(v)];
    e.push_back(m);
  }
  std::sort(e.begin(), e.end());
  return e;
}

// Oracles below try every permutation or injection.

inline bool brute_isomorphic(const Hypergraph& a, const Hypergraph& b) {
  if (a.order() != b.order() || a.size() != b.size()) return false;
  std::vector<int> p(static_cast<std::size_t>(a.order()));
  std::iota(p.begin(), p.end(), 0);
  const auto target = sorted_edges(b);
  do {
    if (mapped_edges(a, p) == target) return true;
  } while (std::next_permutation(p.begin(), p.end()));
  return false;
}

inline std::vector<VertexMask> brute_canonical(const Hypergraph& a) {
  std::vector<int> p(static_cast<std::size_t>(a.order()));
  std::iota(p.begin(), p.end(), 0);
  std::vector<VertexMask> best = mapped_edges(a, p);
  do {
    auto e = mapped_edges(a, p);
    if (e < best) best = e;
  } while (std::next_permutation(p.begin(), p.end()));
  return best;
}

inline std::size_t brute_automorphism_count(const Hypergraph& a) {
  std::vector<int> p(static_cast<std::size_t>(a.order()));
  std::iota(p.begin(), p.end(), 0);
  const auto target = sorted_edges(a);
  std::size_t count = 0;
  do {
    if (mapped_edges(a, p) == target) ++count;
  } while (std::next_permutation(p.begin(), p.end()));
  return count;
}

inline bool brute_contains(const Hypergraph& h, const Hypergraph& f) {
  if (f.order() > h.order()) return false;
  const int n = h.order();
  const int k = f.order();
  std::vector<int> image(static_cast<std::size_t>(k));
  std::vector<bool> used(static_cast<std::size_t>(n));
  auto rec = [&](auto&& self, int i) -> bool {
    if (i == k) {
      for (auto edge : f.edges()) {
        VertexMask m = 0;
        for (int v = 0; v < k; ++v)
          if ((edge >> v) & 1u) m |= 1u << image[static_cast<std::size_t>(v)];
        if (!h.has_edge(m)) return false;
      }
      return true;
    }
    for (int v = 0; v < n; ++v) {
      if (used[static_cast<std::size_t>(v)]) continue;
      used[static_cast<std::size_t>(v)] = true;
      image[static_cast<std::size_t>(i)] = v;
      bool ok = self(self, i + 1);
      used[static_cast<std::size_t>(v)] = false;
      if (ok) return true;
    }
    return false;
  };
  return rec(rec, 0);
}

inline Hypergraph k4_minus() { return Hypergraph::from_compact(3, 4, "123 124 134"); }

}  // namespace test

#pragma once

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string_view>
#include <vector>

#include "flagbound/rational.hpp"

namespace flagbound {

/// A set of vertices encoded as a bit mask; bit v is vertex v (0-based).
using VertexMask = std::uint32_t;

/// Graphs beyond this order are outside the supported range.
inline constexpr int kMaxOrder = 12;

/// Lexicographic order of two equal-size vertex sets compared as sorted lists.
constexpr bool lex_less(VertexMask a, VertexMask b) {
  const VertexMask diff = a ^ b;
  return diff != 0 && (a & diff & (~diff + 1)) != 0;
}

class Permutation {
 public:
  Permutation() = default;
  /// `images[v]` is the image of vertex v; must be a bijection on 0..n-1.
  explicit Permutation(std::vector<int> images);

  static Permutation identity(int n);

  int size() const { return static_cast<int>(images_.size()); }
  int operator()(int v) const { return images_[static_cast<std::size_t>(v)]; }
  std::span<const int> images() const { return images_; }

  /// (*this ∘ inner)(v) = (*this)(inner(v)).
  Permutation compose(const Permutation& inner) const;
  Permutation inverse() const;
  VertexMask apply(VertexMask set) const;

  bool is_identity() const;

  friend bool operator==(const Permutation&, const Permutation&) = default;
  friend auto operator<=>(const Permutation&, const Permutation&) = default;

 private:
  std::vector<int> images_;
};

/// An r-uniform hypergraph on vertices 0..n-1. Edges are kept in lexicographic
/// order of their sorted vertex lists; the value is immutable once built.
class Hypergraph {
 public:
  Hypergraph() = default;
  /// Edgeless graph.
  Hypergraph(int r, int n);
  /// Throws InvalidGraph on wrong edge size, out-of-range vertices, or duplicates.
  Hypergraph(int r, int n, std::vector<VertexMask> edges);

  /// Edges as 0-based vertex lists.
  static Hypergraph from_lists(int r, int n, const std::vector<std::vector<int>>& edges);
  /// Compact 1-based notation for small graphs: "123 124 134" (single-digit vertices).
  static Hypergraph from_compact(int r, int n, std::string_view edges);

  int uniformity() const { return r_; }
  int order() const { return n_; }
  std::size_t size() const { return edges_.size(); }
  std::span<const VertexMask> edges() const { return edges_; }

  bool has_edge(VertexMask set) const {
    return ((present_[set >> 6] >> (set & 63)) & 1u) != 0;
  }

  /// Vertex v becomes vertex p(v).
  Hypergraph relabel(const Permutation& p) const;
  Hypergraph with_edge(VertexMask edge) const;
  Hypergraph without_vertex(int v) const;
  /// Adds `extra` isolated vertices at the end.
  Hypergraph extended(int extra) const;

  int degree(int v) const;

  friend bool operator==(const Hypergraph& a, const Hypergraph& b) {
    return a.r_ == b.r_ && a.n_ == b.n_ && a.edges_ == b.edges_;
  }
  /// Order by (edge count, lexicographic edge list); the enumeration order.
  friend bool canonical_order_less(const Hypergraph& a, const Hypergraph& b);

 private:
  void index_edges();

  int r_ = 0;
  int n_ = 0;
  std::vector<VertexMask> edges_;
  std::vector<std::uint64_t> present_ = std::vector<std::uint64_t>(1, 0);
};

bool canonical_order_less(const Hypergraph& a, const Hypergraph& b);

/// |E(H)| / C(n, r). Throws DegenerateInput when n < r.
Rational density(const Hypergraph& h);

/// Subgraph induced on `vertices` (any order, no repeats), relabeled 0..k-1
/// preserving relative order. Throws InvalidSubset.
Hypergraph induced_subgraph(const Hypergraph& h, std::span<const int> vertices);
Hypergraph induced_subgraph(const Hypergraph& h, VertexMask vertices);

/// Relabeling p such that h.relabel(p) is the canonical form. The first
/// `fixed` vertices are held in place (labeled vertices of a flag).
Permutation canonical_labeling(const Hypergraph& h, int fixed = 0);

/// Isomorphic copy that is identical for isomorphic inputs: among all
/// relabelings, the one whose edge list (edges in colex order) is
/// lexicographically smallest.
Hypergraph canonical_form(const Hypergraph& h, int fixed = 0);

bool is_isomorphic(const Hypergraph& a, const Hypergraph& b);

/// Not-necessarily-induced containment: an injection V(F) -> V(H) mapping
/// every edge of F to an edge of H.
bool contains_subgraph(const Hypergraph& h, const Hypergraph& f);

/// Like contains_subgraph, restricted to copies of F that use `edge` of H.
bool contains_subgraph_through(const Hypergraph& h, const Hypergraph& f, VertexMask edge);

/// All edge-preserving permutations, sorted; the identity comes first.
std::vector<Permutation> automorphisms(const Hypergraph& h);

}  // namespace flagbound

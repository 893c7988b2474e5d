#pragma once

#include <cstdint>
#include <span>
#include <algorithm>
#include <utility>
#include <vector>

#include "flagbound/enumerate.hpp"
#include "flagbound/hypergraph.hpp"
#include "flagbound/rational.hpp"

namespace flagbound {

/// A fully labeled graph: vertex i carries label i.
class TypeSigma {
 public:
  TypeSigma() = default;
  explicit TypeSigma(Hypergraph graph) : graph_(std::move(graph)) {}

  const Hypergraph& graph() const { return graph_; }
  int size() const { return graph_.order(); }

  friend bool operator==(const TypeSigma&, const TypeSigma&) = default;

 private:
  Hypergraph graph_;
};

/// A partially labeled graph whose first `labeled` vertices carry labels
/// 1..s in order (the embedding of the type is the identity).
class Flag {
 public:
  Flag() = default;
  Flag(Hypergraph graph, int labeled);
  /// Also checks that the labeled part induces exactly `sigma`; throws InvalidType.
  Flag(Hypergraph graph, const TypeSigma& sigma);

  const Hypergraph& graph() const { return graph_; }
  int labeled() const { return labeled_; }
  int order() const { return graph_.order(); }
  TypeSigma type() const;

  /// Same flag with unlabeled vertices canonically relabeled.
  Flag canonical() const;

  friend bool operator==(const Flag&, const Flag&) = default;

 private:
  Hypergraph graph_;
  int labeled_ = 0;
};

/// Isomorphism fixing the labeled vertices pointwise. Throws DimensionMismatch
/// on different labeled counts or orders.
bool flag_isomorphic(const Flag& a, const Flag& b);

/// Admissible sigma-flags of order m up to isomorphism, in canonical form,
/// ordered by (edge count, edge list). Indices into `flags` are the
/// coordinates used by every matrix in the pipeline.
class FlagBasis {
 public:
  FlagBasis(TypeSigma sigma, int m, std::vector<Flag> flags);

  const TypeSigma& sigma() const { return sigma_; }
  int m() const { return m_; }
  std::size_t size() const { return flags_.size(); }
  std::span<const Flag> flags() const { return flags_; }
  const Flag& operator[](std::size_t i) const { return flags_[i]; }

  /// Index of the basis flag isomorphic to `flag`, or -1.
  int index_of(const Flag& flag) const;

  /// Index of the flag spelled by `key`: bit j set iff the j-th r-subset of
  /// the m positions (colex order) is an edge, for any labeling of the
  /// unlabeled positions. -1 if absent.
  int index_of_key(std::uint64_t key) const {
    auto it = std::lower_bound(by_key_.begin(), by_key_.end(), std::pair<std::uint64_t, int>(key, -1));
    return it != by_key_.end() && it->first == key ? it->second : -1;
  }

 private:
  TypeSigma sigma_;
  int m_ = 0;
  std::vector<Flag> flags_;
  std::vector<std::pair<std::uint64_t, int>> by_key_;  // sorted by key
};

/// Throws InvalidType if the type is not F-free, SizeViolation if m < |sigma|.
FlagBasis enumerate_flags(const TypeSigma& sigma, int m, const ForbiddenFamily& family);

/// Exact E_theta[p(Fa, Fb, theta; H)] over all injective theta: [s] -> V(H),
/// counted directly from the definition. Throws SizeViolation when
/// |V(H)| < 2m - s.
Rational pair_expectation(const Flag& fa, const Flag& fb, const TypeSigma& sigma, const Hypergraph& h);

/// Exact pair counts for one graph H: entry (a, b) / total is
/// E_theta[p(Fa, Fb, theta; H)]. Counts are symmetric; only a <= b is stored.
struct PairCounts {
  struct Entry {
    int a;
    int b;
    std::uint64_t count;
  };
  std::vector<Entry> upper;
  std::uint64_t total = 0;

  std::uint64_t count(int a, int b) const;
  Rational value(int a, int b) const;
};

class PairDensityTensor {
 public:
  PairDensityTensor() = default;
  PairDensityTensor(FlagBasis basis, std::vector<PairCounts> per_graph)
      : basis_(std::move(basis)), per_graph_(std::move(per_graph)) {}

  const FlagBasis& basis() const { return basis_; }
  std::size_t dimension() const { return basis_.size(); }
  std::size_t graph_count() const { return per_graph_.size(); }
  const PairCounts& counts(std::size_t h) const { return per_graph_[h]; }

  Rational value(std::size_t h, int a, int b) const { return per_graph_[h].value(a, b); }
  /// Dense symmetric matrix for graph h.
  std::vector<std::vector<Rational>> matrix(std::size_t h) const;

 private:
  FlagBasis basis_;
  std::vector<PairCounts> per_graph_;
};

/// Pair counts of one graph against a basis (fast path used by the tensor).
PairCounts pair_counts(const FlagBasis& basis, const Hypergraph& h);

/// Throws SizeViolation unless every graph has the same order l >= 2m - s.
PairDensityTensor pair_density_tensor(const FlagBasis& basis, std::span<const Hypergraph> graphs);
PairDensityTensor pair_density_tensor(const TypeSigma& sigma, int m, std::span<const Hypergraph> graphs,
                                      const ForbiddenFamily& family);

/// p(H; G): fraction of |V(H)|-subsets of V(G) inducing a copy of H.
Rational subgraph_density(const Hypergraph& h, const Hypergraph& g);

/// p(F, theta; G) for every basis flag: the distribution of the flag induced
/// by a uniformly random m-set containing im(theta). `theta` lists the images
/// of the labels in order.
std::vector<Rational> flag_densities(const FlagBasis& basis, const Hypergraph& g, std::span<const int> theta);

using RationalMatrix = std::vector<std::vector<Rational>>;

/// c_H(sigma, m, Q) = sum over ordered (a, b) of q_ab E[p(Fa, Fb, theta; H)].
/// Throws DimensionMismatch if Q does not match the basis.
Rational c_h(const RationalMatrix& q, const PairDensityTensor& tensor, std::size_t h);

/// max d(H) over the list. Throws DegenerateInput on an empty list.
Rational averaging_bound(std::span<const Hypergraph> graphs);

/// floor((l + s) / 2), the largest admissible flag order.
int default_flag_order(int l, int s);

}  // namespace flagbound

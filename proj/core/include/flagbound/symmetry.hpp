#pragma once

#include <cstdint>
#include <vector>

#include "flagbound/flags.hpp"
#include "flagbound/hypergraph.hpp"

namespace flagbound {

/// Edge-preserving permutations of the labeled vertex set of sigma.
std::vector<Permutation> type_automorphisms(const TypeSigma& sigma);

/// Orbits of the type automorphism group on a flag basis together with the
/// change of basis B = [plus | minus].
struct OrbitBasis {
  std::vector<std::vector<int>> orbits;  // flag indices, ascending
  std::vector<int> orbit_of;             // flag index -> orbit index
  std::vector<std::vector<std::int64_t>> plus;
  std::vector<std::vector<std::int64_t>> minus;

  std::size_t dimension() const { return orbit_of.size(); }
  /// Column k of B (plus columns first).
  const std::vector<std::int64_t>& column(std::size_t k) const {
    return k < plus.size() ? plus[k] : minus[k - plus.size()];
  }
};

/// Image of basis flag `index` under alpha (labels relabeled, unlabeled part
/// re-identified). Throws InternalInconsistency if the image is not in the basis.
int act_on_flag(const FlagBasis& basis, int index, const Permutation& alpha);

/// Orbits anchored at their lowest index; minus vectors are F_anchor - F_other.
OrbitBasis flag_orbits(const FlagBasis& basis, const std::vector<Permutation>& group);

/// True iff v^T M_H w = 0 for every plus v, minus w and every graph H.
bool orthogonality_check(const OrbitBasis& orbits, const PairDensityTensor& tensor);

/// Sparse symmetric integer matrix, upper triangle only.
struct SparseSymmetric {
  struct Entry {
    int i;
    int j;
    std::int64_t value;
  };
  std::vector<Entry> upper;
};

/// Pair-count matrices of one type split into diagonal blocks: the matrix of
/// graph h in block k is per_graph[h][k] / totals[h].
struct BlockTensor {
  std::vector<int> block_sizes;
  std::vector<std::vector<SparseSymmetric>> per_graph;
  std::vector<std::uint64_t> totals;

  std::size_t graph_count() const { return totals.size(); }
};

/// The tensor as a single block in raw flag coordinates.
BlockTensor raw_blocks(const PairDensityTensor& tensor);

/// Per H the blocks B+^T M_H B+ and B-^T M_H B- (the latter omitted when
/// empty). Throws InternalInconsistency when the off-diagonal block is nonzero.
BlockTensor block_transform(const PairDensityTensor& tensor, const OrbitBasis& orbits);

/// Q = B diag(Q+, Q-) B^T. `blocks` holds Q+ then Q- (if present).
RationalMatrix raw_from_blocks(const OrbitBasis& orbits, const std::vector<RationalMatrix>& blocks);

/// Sum over blocks of <Q_k, M_hk> / total_h, i.e. c_H in the tensor's coordinates.
Rational c_h(const std::vector<RationalMatrix>& blocks, const BlockTensor& tensor, std::size_t h);

}  // namespace flagbound

#include "flagbound/symmetry.hpp"

#include <algorithm>
#include <atomic>

#include "flagbound/error.hpp"
#include "flagbound/parallel.hpp"

namespace flagbound {

std::vector<Permutation> type_automorphisms(const TypeSigma& sigma) { return automorphisms(sigma.graph()); }

int act_on_flag(const FlagBasis& basis, int index, const Permutation& alpha) {
  const int s = basis.sigma().size();
  const int m = basis.m();
  if (alpha.size() != s) throw Error(ErrorKind::DimensionMismatch, "permutation size differs from type size");
  std::vector<int> images(static_cast<std::size_t>(m));
  for (int v = 0; v < m; ++v) images[static_cast<std::size_t>(v)] = v < s ? alpha(v) : v;
  const Flag& f = basis[static_cast<std::size_t>(index)];
  const int image = basis.index_of(Flag(f.graph().relabel(Permutation(std::move(images))), s));
  if (image < 0) throw Error(ErrorKind::InternalInconsistency, "flag image under permutation is not in the basis");
  return image;
}

OrbitBasis flag_orbits(const FlagBasis& basis, const std::vector<Permutation>& group) {
  const std::size_t d = basis.size();
  OrbitBasis out;
  out.orbit_of.assign(d, -1);
  for (std::size_t i = 0; i < d; ++i) {
    if (out.orbit_of[i] >= 0) continue;
    const int id = static_cast<int>(out.orbits.size());
    std::vector<int> orbit{static_cast<int>(i)};
    out.orbit_of[i] = id;
    for (const auto& alpha : group) {
      const int j = act_on_flag(basis, static_cast<int>(i), alpha);
      if (out.orbit_of[static_cast<std::size_t>(j)] < 0) {
        out.orbit_of[static_cast<std::size_t>(j)] = id;
        orbit.push_back(j);
      }
    }
    std::sort(orbit.begin(), orbit.end());
    out.orbits.push_back(std::move(orbit));
  }
  for (const auto& orbit : out.orbits) {
    std::vector<std::int64_t> v(d, 0);
    for (int f : orbit) v[static_cast<std::size_t>(f)] = 1;
    out.plus.push_back(std::move(v));
  }
  for (const auto& orbit : out.orbits) {
    for (std::size_t z = 1; z < orbit.size(); ++z) {
      std::vector<std::int64_t> w(d, 0);
      w[static_cast<std::size_t>(orbit.front())] = 1;
      w[static_cast<std::size_t>(orbit[z])] = -1;
      out.minus.push_back(std::move(w));
    }
  }
  return out;
}

namespace {

using Wide = __int128;

// Dense symmetric copy of one graph's counts.
std::vector<std::int64_t> dense_counts(const PairCounts& c, std::size_t d) {
  std::vector<std::int64_t> m(d * d, 0);
  for (const auto& e : c.upper) {
    const auto a = static_cast<std::size_t>(e.a);
    const auto b = static_cast<std::size_t>(e.b);
    m[a * d + b] = static_cast<std::int64_t>(e.count);
    m[b * d + a] = static_cast<std::int64_t>(e.count);
  }
  return m;
}

struct SparseColumn {
  std::vector<std::pair<std::size_t, std::int64_t>> entries;
};

SparseColumn sparse(const std::vector<std::int64_t>& v) {
  SparseColumn c;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] != 0) c.entries.emplace_back(i, v[i]);
  }
  return c;
}

Wide bilinear(const std::vector<std::int64_t>& m, std::size_t d, const SparseColumn& u, const SparseColumn& w) {
  Wide sum = 0;
  for (auto [a, x] : u.entries) {
    for (auto [b, y] : w.entries) sum += Wide(x) * y * m[a * d + b];
  }
  return sum;
}

std::int64_t narrow(Wide v) {
  if (v > INT64_MAX || v < INT64_MIN) throw Error(ErrorKind::InternalInconsistency, "block entry overflows 64 bits");
  return static_cast<std::int64_t>(v);
}

SparseSymmetric block(const std::vector<std::int64_t>& m, std::size_t d, const std::vector<SparseColumn>& cols) {
  SparseSymmetric out;
  for (std::size_t i = 0; i < cols.size(); ++i) {
    for (std::size_t j = i; j < cols.size(); ++j) {
      const Wide v = bilinear(m, d, cols[i], cols[j]);
      if (v != 0) out.upper.push_back({static_cast<int>(i), static_cast<int>(j), narrow(v)});
    }
  }
  return out;
}

}  // namespace

bool orthogonality_check(const OrbitBasis& orbits, const PairDensityTensor& tensor) {
  const std::size_t d = tensor.dimension();
  if (orbits.dimension() != d) throw Error(ErrorKind::DimensionMismatch, "orbit basis does not match tensor");
  if (orbits.minus.empty()) return true;
  std::vector<SparseColumn> plus;
  std::vector<SparseColumn> minus;
  for (const auto& v : orbits.plus) plus.push_back(sparse(v));
  for (const auto& w : orbits.minus) minus.push_back(sparse(w));
  std::atomic<bool> ok{true};
  parallel_for(tensor.graph_count(), [&](std::size_t h) {
    if (!ok.load(std::memory_order_relaxed)) return;
    const auto m = dense_counts(tensor.counts(h), d);
    for (const auto& v : plus) {
      for (const auto& w : minus) {
        if (bilinear(m, d, v, w) != 0) {
          ok.store(false, std::memory_order_relaxed);
          return;
        }
      }
    }
  });
  return ok.load();
}

BlockTensor raw_blocks(const PairDensityTensor& tensor) {
  BlockTensor out;
  out.block_sizes = {static_cast<int>(tensor.dimension())};
  out.per_graph.resize(tensor.graph_count());
  out.totals.resize(tensor.graph_count());
  for (std::size_t h = 0; h < tensor.graph_count(); ++h) {
    SparseSymmetric m;
    for (const auto& e : tensor.counts(h).upper) m.upper.push_back({e.a, e.b, static_cast<std::int64_t>(e.count)});
    out.per_graph[h] = {std::move(m)};
    out.totals[h] = tensor.counts(h).total;
  }
  return out;
}

BlockTensor block_transform(const PairDensityTensor& tensor, const OrbitBasis& orbits) {
  if (!orthogonality_check(orbits, tensor)) {
    throw Error(ErrorKind::InternalInconsistency, "plus and minus blocks are not orthogonal");
  }
  const std::size_t d = tensor.dimension();
  std::vector<SparseColumn> plus;
  std::vector<SparseColumn> minus;
  for (const auto& v : orbits.plus) plus.push_back(sparse(v));
  for (const auto& w : orbits.minus) minus.push_back(sparse(w));

  BlockTensor out;
  out.block_sizes.push_back(static_cast<int>(plus.size()));
  if (!minus.empty()) out.block_sizes.push_back(static_cast<int>(minus.size()));
  out.per_graph.resize(tensor.graph_count());
  out.totals.resize(tensor.graph_count());
  parallel_for(tensor.graph_count(), [&](std::size_t h) {
    const auto m = dense_counts(tensor.counts(h), d);
    out.per_graph[h].push_back(block(m, d, plus));
    if (!minus.empty()) out.per_graph[h].push_back(block(m, d, minus));
    out.totals[h] = tensor.counts(h).total;
  });
  return out;
}

RationalMatrix raw_from_blocks(const OrbitBasis& orbits, const std::vector<RationalMatrix>& blocks) {
  const std::size_t d = orbits.dimension();
  const std::size_t expected = orbits.minus.empty() ? 1 : 2;
  if (blocks.size() != expected) throw Error(ErrorKind::DimensionMismatch, "wrong number of blocks");
  if (blocks[0].size() != orbits.plus.size() || (expected == 2 && blocks[1].size() != orbits.minus.size())) {
    throw Error(ErrorKind::DimensionMismatch, "block size differs from orbit basis");
  }
  RationalMatrix q(d, std::vector<Rational>(d));
  std::size_t offset = 0;
  for (const auto& b : blocks) {
    const std::size_t k = b.size();
    for (std::size_t i = 0; i < k; ++i) {
      const auto ci = sparse(orbits.column(offset + i));
      for (std::size_t j = 0; j < k; ++j) {
        if (b[i][j] == 0) continue;
        const auto cj = sparse(orbits.column(offset + j));
        for (auto [a, x] : ci.entries) {
          for (auto [c, y] : cj.entries) q[a][c] += b[i][j] * (x * y);
        }
      }
    }
    offset += k;
  }
  return q;
}

Rational c_h(const std::vector<RationalMatrix>& blocks, const BlockTensor& tensor, std::size_t h) {
  if (h >= tensor.graph_count()) throw Error(ErrorKind::DimensionMismatch, "graph index out of range");
  if (blocks.size() != tensor.block_sizes.size()) throw Error(ErrorKind::DimensionMismatch, "wrong number of blocks");
  Rational sum = 0;
  for (std::size_t k = 0; k < blocks.size(); ++k) {
    const auto& q = blocks[k];
    const auto n = static_cast<std::size_t>(tensor.block_sizes[k]);
    if (q.size() != n) throw Error(ErrorKind::DimensionMismatch, "Q dimension differs from block size");
    for (const auto& row : q) {
      if (row.size() != n) throw Error(ErrorKind::DimensionMismatch, "Q is not square");
    }
    for (const auto& e : tensor.per_graph[h][k].upper) {
      const auto i = static_cast<std::size_t>(e.i);
      const auto j = static_cast<std::size_t>(e.j);
      const Rational weight = i == j ? q[i][i] : Rational(q[i][j] + q[j][i]);
      sum += weight * Integer(static_cast<long>(e.value));
    }
  }
  return sum / Integer(static_cast<unsigned long>(tensor.totals[h]));
}

}  // namespace flagbound

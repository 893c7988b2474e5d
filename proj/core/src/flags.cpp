#include "flagbound/flags.hpp"

#include <algorithm>
#include <bit>
#include <numeric>

#include "augment.hpp"
#include "flagbound/error.hpp"
#include "flagbound/parallel.hpp"

namespace flagbound {

namespace {

VertexMask prefix_mask(int k) { return k >= 32 ? ~VertexMask{0} : (VertexMask{1} << k) - 1; }

bool keyable(int m, int r) { return detail::choose(m, r) <= 64; }

// Bit j of the key is set iff the j-th r-subset of positions 0..m-1 (colex
// order) maps to an edge of `host` under position -> vertex `pos`.
template <class Host>
std::uint64_t positional_key(const Host& host, int r, int m, const int* pos) {
  const auto& subsets = detail::masks_with_popcount(r);
  const std::size_t count = detail::choose(m, r);
  std::uint64_t key = 0;
  for (std::size_t j = 0; j < count; ++j) {
    VertexMask img = 0;
    for (VertexMask t = subsets[j]; t; t &= t - 1) img |= VertexMask{1} << pos[std::countr_zero(t)];
    if (host.has_edge(img)) key |= std::uint64_t{1} << j;
  }
  return key;
}

bool induces_type(const Hypergraph& host, const TypeSigma& sigma, const int* theta) {
  const int s = sigma.size();
  const int r = host.uniformity();
  const auto& subsets = detail::masks_with_popcount(r);
  const std::size_t count = detail::choose(s, r);
  for (std::size_t j = 0; j < count; ++j) {
    VertexMask img = 0;
    for (VertexMask t = subsets[j]; t; t &= t - 1) img |= VertexMask{1} << theta[std::countr_zero(t)];
    if (host.has_edge(img) != sigma.graph().has_edge(subsets[j])) return false;
  }
  return true;
}

// Calls f(theta) for every injective map [s] -> [n] given as an image array.
template <class F>
void for_each_injection(int s, int n, F&& f) {
  std::vector<int> theta(static_cast<std::size_t>(s));
  auto rec = [&](auto&& self, int i, VertexMask used) -> void {
    if (i == s) {
      f(theta.data(), used);
      return;
    }
    for (int v = 0; v < n; ++v) {
      if ((used >> v) & 1u) continue;
      theta[static_cast<std::size_t>(i)] = v;
      self(self, i + 1, used | (VertexMask{1} << v));
    }
  };
  rec(rec, 0, 0);
}

// Subgraph spanned by theta (in label order) followed by the vertices of
// `extra` in increasing order, as a flag with s labeled vertices.
Flag induced_flag(const Hypergraph& h, const int* theta, int s, VertexMask extra) {
  std::vector<int> pos(theta, theta + s);
  for (VertexMask e = extra; e; e &= e - 1) pos.push_back(std::countr_zero(e));
  const int m = static_cast<int>(pos.size());
  std::vector<int> where(static_cast<std::size_t>(h.order()), -1);
  for (int i = 0; i < m; ++i) where[static_cast<std::size_t>(pos[static_cast<std::size_t>(i)])] = i;
  std::vector<VertexMask> edges;
  VertexMask span = 0;
  for (int v : pos) span |= VertexMask{1} << v;
  for (VertexMask e : h.edges()) {
    if ((e & span) != e) continue;
    VertexMask mapped = 0;
    for (VertexMask t = e; t; t &= t - 1) mapped |= VertexMask{1} << where[static_cast<std::size_t>(std::countr_zero(t))];
    edges.push_back(mapped);
  }
  return Flag(Hypergraph(h.uniformity(), m, std::move(edges)), s);
}

}  // namespace

// ----------------------------------------------------------------------- Flag

Flag::Flag(Hypergraph graph, int labeled) : graph_(std::move(graph)), labeled_(labeled) {
  if (labeled < 0 || labeled > graph_.order()) {
    throw Error(ErrorKind::InvalidType, "labeled count exceeds flag order");
  }
}

Flag::Flag(Hypergraph graph, const TypeSigma& sigma) : Flag(std::move(graph), sigma.size()) {
  if (graph_.uniformity() != sigma.graph().uniformity()) {
    throw Error(ErrorKind::UniformityMismatch, "flag and type differ in uniformity");
  }
  if (!(type() == sigma)) throw Error(ErrorKind::InvalidType, "labeled vertices do not induce the type");
}

TypeSigma Flag::type() const { return TypeSigma(induced_subgraph(graph_, prefix_mask(labeled_))); }

Flag Flag::canonical() const { return Flag(canonical_form(graph_, labeled_), labeled_); }

bool flag_isomorphic(const Flag& a, const Flag& b) {
  if (a.labeled() != b.labeled() || a.order() != b.order()) {
    throw Error(ErrorKind::DimensionMismatch, "flags differ in labeled count or order");
  }
  if (a.graph().uniformity() != b.graph().uniformity()) {
    throw Error(ErrorKind::UniformityMismatch, "flags differ in uniformity");
  }
  if (a.graph().size() != b.graph().size()) return false;
  return a.canonical() == b.canonical();
}

// ------------------------------------------------------------------ FlagBasis

FlagBasis::FlagBasis(TypeSigma sigma, int m, std::vector<Flag> flags)
    : sigma_(std::move(sigma)), m_(m), flags_(std::move(flags)) {
  const int s = sigma_.size();
  const int r = sigma_.graph().uniformity();
  for (const auto& f : flags_) {
    if (f.order() != m || f.labeled() != s) throw Error(ErrorKind::DimensionMismatch, "flag does not match basis shape");
  }
  if (!keyable(m, r)) return;
  const int k = m - s;
  std::vector<int> pos(static_cast<std::size_t>(m));
  for (std::size_t i = 0; i < flags_.size(); ++i) {
    std::iota(pos.begin(), pos.end(), 0);
    do {
      by_key_.emplace_back(positional_key(flags_[i].graph(), r, m, pos.data()), static_cast<int>(i));
    } while (std::next_permutation(pos.begin() + s, pos.begin() + s + k));
  }
  std::sort(by_key_.begin(), by_key_.end());
  by_key_.erase(std::unique(by_key_.begin(), by_key_.end()), by_key_.end());
  for (std::size_t i = 1; i < by_key_.size(); ++i) {
    if (by_key_[i].first == by_key_[i - 1].first) {
      throw Error(ErrorKind::InternalInconsistency, "basis contains isomorphic flags");
    }
  }
}

int FlagBasis::index_of(const Flag& flag) const {
  if (flag.order() != m_ || flag.labeled() != sigma_.size()) return -1;
  const int r = sigma_.graph().uniformity();
  if (keyable(m_, r)) {
    std::vector<int> pos(static_cast<std::size_t>(m_));
    std::iota(pos.begin(), pos.end(), 0);
    return index_of_key(positional_key(flag.graph(), r, m_, pos.data()));
  }
  const Flag c = flag.canonical();
  for (std::size_t i = 0; i < flags_.size(); ++i) {
    if (flags_[i] == c) return static_cast<int>(i);
  }
  return -1;
}

FlagBasis enumerate_flags(const TypeSigma& sigma, int m, const ForbiddenFamily& family) {
  const int s = sigma.size();
  const int r = family.uniformity();
  if (sigma.graph().uniformity() != r) throw Error(ErrorKind::UniformityMismatch, "type and family differ in uniformity");
  if (m < s) throw Error(ErrorKind::SizeViolation, "flag order must be at least the type size");
  if (m > kMaxOrder) throw Error(ErrorKind::SizeViolation, "flag order outside supported range");
  if (!family.admits(sigma.graph())) throw Error(ErrorKind::InvalidType, "type is not admissible for the family");

  std::vector<detail::ThroughEdgeMatcher> matchers;
  for (const auto& f : family.members()) matchers.emplace_back(f);
  std::vector<Hypergraph> level{sigma.graph()};
  for (int n = s + 1; n <= m; ++n) level = detail::augment_by_vertex(level, r, matchers, s);

  // Edgeless members are not seen by the edge-by-edge check.
  for (const auto& f : family.members()) {
    if (f.size() == 0 && f.order() <= m) level.clear();
  }

  std::vector<Flag> flags;
  flags.reserve(level.size());
  for (auto& g : level) flags.emplace_back(std::move(g), s);
  return FlagBasis(sigma, m, std::move(flags));
}

// ---------------------------------------------------------- pair expectations

Rational pair_expectation(const Flag& fa, const Flag& fb, const TypeSigma& sigma, const Hypergraph& h) {
  const int s = sigma.size();
  if (fa.labeled() != s || fb.labeled() != s) throw Error(ErrorKind::DimensionMismatch, "flag labeled count differs from type");
  if (fa.order() != fb.order()) throw Error(ErrorKind::DimensionMismatch, "flags differ in order");
  if (!(fa.type() == sigma) || !(fb.type() == sigma)) throw Error(ErrorKind::InvalidType, "flag is not a sigma-flag");
  const int m = fa.order();
  const int l = h.order();
  if (l < 2 * m - s) throw Error(ErrorKind::SizeViolation, "host graph has fewer than 2m - s vertices");

  const Flag ca = fa.canonical();
  const Flag cb = fb.canonical();
  const int k = m - s;
  const auto& subsets = detail::masks_with_popcount(k);
  Integer hits = 0;
  Integer total = 0;
  for_each_injection(s, l, [&](const int* theta, VertexMask image) {
    // Rest of V(H), as an index list.
    std::vector<int> rest;
    for (int v = 0; v < l; ++v) {
      if (!((image >> v) & 1u)) rest.push_back(v);
    }
    auto expand = [&](VertexMask local) {
      VertexMask out = 0;
      for (; local; local &= local - 1) out |= VertexMask{1} << rest[static_cast<std::size_t>(std::countr_zero(local))];
      return out;
    };
    const std::size_t count = detail::choose(static_cast<int>(rest.size()), k);
    for (std::size_t i = 0; i < count; ++i) {
      for (std::size_t j = 0; j < count; ++j) {
        if ((subsets[i] & subsets[j]) != 0) continue;
        total += 1;
        const Flag a = induced_flag(h, theta, s, expand(subsets[i])).canonical();
        if (!(a == ca)) continue;
        const Flag b = induced_flag(h, theta, s, expand(subsets[j])).canonical();
        if (b == cb) hits += 1;
      }
    }
  });
  Rational p(hits, total);
  p.canonicalize();
  return p;
}

std::uint64_t PairCounts::count(int a, int b) const {
  if (a > b) std::swap(a, b);
  for (const auto& e : upper) {
    if (e.a == a && e.b == b) return e.count;
  }
  return 0;
}

Rational PairCounts::value(int a, int b) const {
  Rational v(Integer(static_cast<unsigned long>(count(a, b))), Integer(static_cast<unsigned long>(total)));
  v.canonicalize();
  return v;
}

std::vector<std::vector<Rational>> PairDensityTensor::matrix(std::size_t h) const {
  const std::size_t d = dimension();
  std::vector<std::vector<Rational>> out(d, std::vector<Rational>(d));
  const auto& c = per_graph_[h];
  for (const auto& e : c.upper) {
    Rational v(Integer(static_cast<unsigned long>(e.count)), Integer(static_cast<unsigned long>(c.total)));
    v.canonicalize();
    out[static_cast<std::size_t>(e.a)][static_cast<std::size_t>(e.b)] = v;
    out[static_cast<std::size_t>(e.b)][static_cast<std::size_t>(e.a)] = v;
  }
  return out;
}

PairCounts pair_counts(const FlagBasis& basis, const Hypergraph& h) {
  const TypeSigma& sigma = basis.sigma();
  const int s = sigma.size();
  const int m = basis.m();
  const int r = h.uniformity();
  const int l = h.order();
  if (r != sigma.graph().uniformity()) throw Error(ErrorKind::UniformityMismatch, "graph and type differ in uniformity");
  if (l < 2 * m - s) throw Error(ErrorKind::SizeViolation, "graph has fewer than 2m - s vertices");
  if (!keyable(m, r)) throw Error(ErrorKind::SizeViolation, "flag order too large for keyed lookup");

  const int k = m - s;
  const auto& subsets = detail::masks_with_popcount(k);
  const std::size_t per_theta = detail::choose(l - s, k);
  const std::size_t d = basis.size();

  std::vector<std::uint64_t> dense(d * d, 0);
  std::vector<int> idx(per_theta);
  std::vector<int> pos(static_cast<std::size_t>(m));
  std::vector<int> rest;
  std::uint64_t theta_count = 0;

  for_each_injection(s, l, [&](const int* theta, VertexMask image) {
    ++theta_count;
    if (!induces_type(h, sigma, theta)) return;
    rest.clear();
    for (int v = 0; v < l; ++v) {
      if (!((image >> v) & 1u)) rest.push_back(v);
    }
    std::copy(theta, theta + s, pos.begin());
    for (std::size_t i = 0; i < per_theta; ++i) {
      int p = s;
      for (VertexMask u = subsets[i]; u; u &= u - 1) pos[static_cast<std::size_t>(p++)] = rest[static_cast<std::size_t>(std::countr_zero(u))];
      idx[i] = basis.index_of_key(positional_key(h, r, m, pos.data()));
    }
    for (std::size_t i = 0; i < per_theta; ++i) {
      if (idx[i] < 0) continue;
      for (std::size_t j = 0; j < per_theta; ++j) {
        if ((subsets[i] & subsets[j]) != 0 || idx[j] < 0) continue;
        if (idx[i] <= idx[j]) ++dense[static_cast<std::size_t>(idx[i]) * d + static_cast<std::size_t>(idx[j])];
      }
    }
  });

  // Ordered pairs of disjoint (m - s)-subsets of the l - s remaining vertices.
  std::uint64_t pairs = 0;
  for (std::size_t i = 0; i < per_theta; ++i) {
    for (std::size_t j = 0; j < per_theta; ++j) {
      if ((subsets[i] & subsets[j]) == 0) ++pairs;
    }
  }

  PairCounts out;
  out.total = theta_count * pairs;
  for (std::size_t a = 0; a < d; ++a) {
    for (std::size_t b = a; b < d; ++b) {
      if (auto c = dense[a * d + b]) out.upper.push_back({static_cast<int>(a), static_cast<int>(b), c});
    }
  }
  return out;
}

PairDensityTensor pair_density_tensor(const FlagBasis& basis, std::span<const Hypergraph> graphs) {
  if (!graphs.empty()) {
    const int l = graphs.front().order();
    for (const auto& g : graphs) {
      if (g.order() != l) throw Error(ErrorKind::SizeViolation, "graphs in a tensor must share one order");
    }
  }
  std::vector<PairCounts> per(graphs.size());
  parallel_for(graphs.size(), [&](std::size_t i) { per[i] = pair_counts(basis, graphs[i]); });
  return PairDensityTensor(basis, std::move(per));
}

PairDensityTensor pair_density_tensor(const TypeSigma& sigma, int m, std::span<const Hypergraph> graphs,
                                      const ForbiddenFamily& family) {
  return pair_density_tensor(enumerate_flags(sigma, m, family), graphs);
}

// ------------------------------------------------------------------ densities

Rational subgraph_density(const Hypergraph& h, const Hypergraph& g) {
  const int l = h.order();
  const int n = g.order();
  if (h.uniformity() != g.uniformity()) throw Error(ErrorKind::UniformityMismatch, "graphs differ in uniformity");
  if (l > n) throw Error(ErrorKind::SizeViolation, "pattern larger than host");
  const Hypergraph target = canonical_form(h);
  Integer hits = 0;
  Integer total = 0;
  const auto& subsets = detail::masks_with_popcount(l);
  const std::size_t count = detail::choose(n, l);
  for (std::size_t i = 0; i < count; ++i) {
    total += 1;
    const Hypergraph sub = induced_subgraph(g, subsets[i]);
    if (sub.size() == target.size() && canonical_form(sub) == target) hits += 1;
  }
  Rational p(hits, total);
  p.canonicalize();
  return p;
}

std::vector<Rational> flag_densities(const FlagBasis& basis, const Hypergraph& g, std::span<const int> theta) {
  const int s = basis.sigma().size();
  const int m = basis.m();
  const int n = g.order();
  if (static_cast<int>(theta.size()) != s) throw Error(ErrorKind::DimensionMismatch, "theta length differs from type size");
  if (n < m) throw Error(ErrorKind::SizeViolation, "graph smaller than flag order");
  VertexMask image = 0;
  for (int v : theta) {
    if (v < 0 || v >= n || ((image >> v) & 1u)) throw Error(ErrorKind::InvalidSubset, "theta is not injective into V(G)");
    image |= VertexMask{1} << v;
  }
  std::vector<Integer> hits(basis.size(), 0);
  std::vector<int> rest;
  for (int v = 0; v < n; ++v) {
    if (!((image >> v) & 1u)) rest.push_back(v);
  }
  const int k = m - s;
  const auto& subsets = detail::masks_with_popcount(k);
  const std::size_t count = detail::choose(n - s, k);
  for (std::size_t i = 0; i < count; ++i) {
    VertexMask extra = 0;
    for (VertexMask u = subsets[i]; u; u &= u - 1) extra |= VertexMask{1} << rest[static_cast<std::size_t>(std::countr_zero(u))];
    const int idx = basis.index_of(induced_flag(g, theta.data(), s, extra));
    if (idx >= 0) hits[static_cast<std::size_t>(idx)] += 1;
  }
  std::vector<Rational> out;
  out.reserve(basis.size());
  for (auto& hcount : hits) {
    Rational p(hcount, Integer(static_cast<unsigned long>(count)));
    p.canonicalize();
    out.push_back(p);
  }
  return out;
}

Rational c_h(const RationalMatrix& q, const PairDensityTensor& tensor, std::size_t h) {
  const std::size_t d = tensor.dimension();
  if (q.size() != d) throw Error(ErrorKind::DimensionMismatch, "Q dimension differs from flag basis size");
  for (const auto& row : q) {
    if (row.size() != d) throw Error(ErrorKind::DimensionMismatch, "Q is not square");
  }
  if (h >= tensor.graph_count()) throw Error(ErrorKind::DimensionMismatch, "graph index out of range");
  const auto& counts = tensor.counts(h);
  Rational sum = 0;
  for (const auto& e : counts.upper) {
    const auto a = static_cast<std::size_t>(e.a);
    const auto b = static_cast<std::size_t>(e.b);
    const Rational weight = a == b ? q[a][a] : Rational(q[a][b] + q[b][a]);
    sum += weight * Integer(static_cast<unsigned long>(e.count));
  }
  return sum / Integer(static_cast<unsigned long>(counts.total));
}

Rational averaging_bound(std::span<const Hypergraph> graphs) {
  if (graphs.empty()) throw Error(ErrorKind::DegenerateInput, "averaging bound of an empty list");
  Rational best = density(graphs.front());
  for (const auto& g : graphs.subspan(1)) best = std::max(best, density(g));
  return best;
}

int default_flag_order(int l, int s) { return (l + s) / 2; }

}  // namespace flagbound

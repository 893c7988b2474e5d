#include "flagbound/hypergraph.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <numeric>
#include <string>

#include "flagbound/error.hpp"
#include "embedding.hpp"

namespace flagbound {

// ---------------------------------------------------------------- Permutation

Permutation::Permutation(std::vector<int> images) : images_(std::move(images)) {
  std::vector<char> seen(images_.size(), 0);
  for (int v : images_) {
    if (v < 0 || v >= static_cast<int>(images_.size()) || seen[static_cast<std::size_t>(v)]) {
      throw Error(ErrorKind::InvalidSubset, "permutation images are not a bijection");
    }
    seen[static_cast<std::size_t>(v)] = 1;
  }
}

Permutation Permutation::identity(int n) {
  std::vector<int> images(static_cast<std::size_t>(n));
  std::iota(images.begin(), images.end(), 0);
  return Permutation(std::move(images));
}

Permutation Permutation::compose(const Permutation& inner) const {
  if (inner.size() != size()) throw Error(ErrorKind::DimensionMismatch, "composing permutations of different sizes");
  std::vector<int> out(images_.size());
  for (std::size_t v = 0; v < out.size(); ++v) out[v] = images_[static_cast<std::size_t>(inner.images_[v])];
  Permutation p;
  p.images_ = std::move(out);
  return p;
}

Permutation Permutation::inverse() const {
  std::vector<int> out(images_.size());
  for (std::size_t v = 0; v < out.size(); ++v) out[static_cast<std::size_t>(images_[v])] = static_cast<int>(v);
  Permutation p;
  p.images_ = std::move(out);
  return p;
}

VertexMask Permutation::apply(VertexMask set) const {
  VertexMask out = 0;
  while (set) {
    int v = std::countr_zero(set);
    set &= set - 1;
    out |= VertexMask{1} << images_[static_cast<std::size_t>(v)];
  }
  return out;
}

bool Permutation::is_identity() const {
  for (std::size_t v = 0; v < images_.size(); ++v) {
    if (images_[v] != static_cast<int>(v)) return false;
  }
  return true;
}

// ----------------------------------------------------------------- Hypergraph

Hypergraph::Hypergraph(int r, int n) : Hypergraph(r, n, std::vector<VertexMask>{}) {}

Hypergraph::Hypergraph(int r, int n, std::vector<VertexMask> edges) : r_(r), n_(n), edges_(std::move(edges)) {
  if (r < 1) throw Error(ErrorKind::InvalidGraph, "uniformity must be positive");
  if (n < 0 || n > kMaxOrder) {
    throw Error(ErrorKind::InvalidGraph, "order " + std::to_string(n) + " outside 0.." + std::to_string(kMaxOrder));
  }
  const VertexMask all = n == 32 ? ~VertexMask{0} : (VertexMask{1} << n) - 1;
  for (VertexMask e : edges_) {
    if (std::popcount(e) != r) throw Error(ErrorKind::InvalidGraph, "edge does not have exactly r vertices");
    if ((e & ~all) != 0) throw Error(ErrorKind::InvalidGraph, "edge vertex out of range");
  }
  std::sort(edges_.begin(), edges_.end(), lex_less);
  if (std::adjacent_find(edges_.begin(), edges_.end()) != edges_.end()) {
    throw Error(ErrorKind::InvalidGraph, "duplicate edge");
  }
  index_edges();
}

void Hypergraph::index_edges() {
  present_.assign(n_ <= 6 ? 1 : (std::size_t{1} << n_) / 64, 0);
  for (VertexMask e : edges_) present_[e >> 6] |= std::uint64_t{1} << (e & 63);
}

Hypergraph Hypergraph::from_lists(int r, int n, const std::vector<std::vector<int>>& edges) {
  std::vector<VertexMask> masks;
  masks.reserve(edges.size());
  for (const auto& e : edges) {
    VertexMask m = 0;
    for (int v : e) {
      if (v < 0 || v >= n) throw Error(ErrorKind::InvalidGraph, "edge vertex out of range");
      if (m & (VertexMask{1} << v)) throw Error(ErrorKind::InvalidGraph, "repeated vertex in edge");
      m |= VertexMask{1} << v;
    }
    masks.push_back(m);
  }
  return Hypergraph(r, n, std::move(masks));
}

Hypergraph Hypergraph::from_compact(int r, int n, std::string_view text) {
  std::vector<std::vector<int>> edges;
  std::vector<int> current;
  auto flush = [&] {
    if (!current.empty()) edges.push_back(current);
    current.clear();
  };
  for (char c : text) {
    if (c >= '1' && c <= '9') {
      current.push_back(c - '1');
    } else if (c == ' ' || c == ',' || c == '\t') {
      flush();
    } else {
      throw Error(ErrorKind::Parse, std::string("unexpected character '") + c + "' in compact edge list");
    }
  }
  flush();
  return from_lists(r, n, edges);
}

Hypergraph Hypergraph::relabel(const Permutation& p) const {
  if (p.size() != n_) throw Error(ErrorKind::DimensionMismatch, "permutation size does not match graph order");
  std::vector<VertexMask> out;
  out.reserve(edges_.size());
  for (VertexMask e : edges_) out.push_back(p.apply(e));
  return Hypergraph(r_, n_, std::move(out));
}

Hypergraph Hypergraph::with_edge(VertexMask edge) const {
  std::vector<VertexMask> out = edges_;
  out.push_back(edge);
  return Hypergraph(r_, n_, std::move(out));
}

Hypergraph Hypergraph::without_vertex(int v) const {
  if (v < 0 || v >= n_) throw Error(ErrorKind::InvalidSubset, "vertex out of range");
  const VertexMask all = (VertexMask{1} << n_) - 1;
  return induced_subgraph(*this, all & ~(VertexMask{1} << v));
}

Hypergraph Hypergraph::extended(int extra) const { return Hypergraph(r_, n_ + extra, edges_); }

int Hypergraph::degree(int v) const {
  int d = 0;
  for (VertexMask e : edges_) d += (e >> v) & 1u;
  return d;
}

bool canonical_order_less(const Hypergraph& a, const Hypergraph& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return std::lexicographical_compare(a.edges_.begin(), a.edges_.end(), b.edges_.begin(), b.edges_.end(), lex_less);
}

// ----------------------------------------------------------------- operations

Rational density(const Hypergraph& h) {
  if (h.order() < h.uniformity()) {
    throw Error(ErrorKind::DegenerateInput, "density needs at least r vertices");
  }
  Rational d(Integer(static_cast<unsigned long>(h.size())), binomial(h.order(), h.uniformity()));
  d.canonicalize();
  return d;
}

namespace {

VertexMask compress(VertexMask set, VertexMask within) {
  VertexMask out = 0;
  int bit = 0;
  while (within) {
    int v = std::countr_zero(within);
    within &= within - 1;
    if (set & (VertexMask{1} << v)) out |= VertexMask{1} << bit;
    ++bit;
  }
  return out;
}

}  // namespace

Hypergraph induced_subgraph(const Hypergraph& h, VertexMask vertices) {
  const int n = h.order();
  if (n < 32 && (vertices >> n) != 0) throw Error(ErrorKind::InvalidSubset, "vertex out of range");
  std::vector<VertexMask> out;
  for (VertexMask e : h.edges()) {
    if ((e & vertices) == e) out.push_back(compress(e, vertices));
  }
  return Hypergraph(h.uniformity(), std::popcount(vertices), std::move(out));
}

Hypergraph induced_subgraph(const Hypergraph& h, std::span<const int> vertices) {
  VertexMask mask = 0;
  for (int v : vertices) {
    if (v < 0 || v >= h.order()) throw Error(ErrorKind::InvalidSubset, "vertex " + std::to_string(v) + " out of range");
    if (mask & (VertexMask{1} << v)) throw Error(ErrorKind::InvalidSubset, "repeated vertex in subset");
    mask |= VertexMask{1} << v;
  }
  return induced_subgraph(h, mask);
}

namespace detail {

const std::vector<VertexMask>& masks_with_popcount(int k) {
  static const auto table = [] {
    std::array<std::vector<VertexMask>, kMaxOrder + 1> t;
    for (VertexMask m = 0; m < (VertexMask{1} << kMaxOrder); ++m) t[static_cast<std::size_t>(std::popcount(m))].push_back(m);
    return t;
  }();
  return table[static_cast<std::size_t>(k)];
}

std::size_t choose(int n, int k) {
  if (k < 0 || k > n) return 0;
  std::size_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * static_cast<std::size_t>(n - k + i) / static_cast<std::size_t>(i);
  return r;
}

std::vector<int> refine_colors(const Hypergraph& h, int fixed) {
  const int n = h.order();
  std::vector<int> color(static_cast<std::size_t>(n));
  for (int v = 0; v < n; ++v) color[static_cast<std::size_t>(v)] = v < fixed ? v : fixed;
  int classes = std::min(n, fixed + 1);
  if (n - fixed <= 0) return color;

  std::vector<std::vector<std::int64_t>> sig(static_cast<std::size_t>(n));
  std::vector<int> order(static_cast<std::size_t>(n));
  while (true) {
    for (int v = 0; v < n; ++v) {
      auto& s = sig[static_cast<std::size_t>(v)];
      s.clear();
      s.push_back(color[static_cast<std::size_t>(v)]);
    }
    for (VertexMask e : h.edges()) {
      for (VertexMask rest = e; rest; rest &= rest - 1) {
        int v = std::countr_zero(rest);
        std::array<int, kMaxOrder> others{};
        int k = 0;
        for (VertexMask o = e & ~(VertexMask{1} << v); o; o &= o - 1) {
          others[static_cast<std::size_t>(k++)] = color[static_cast<std::size_t>(std::countr_zero(o))];
        }
        std::sort(others.begin(), others.begin() + k);
        std::int64_t code = 0;
        for (int i = 0; i < k; ++i) code = code * 16 + others[static_cast<std::size_t>(i)] + 1;
        sig[static_cast<std::size_t>(v)].push_back(code);
      }
    }
    for (auto& s : sig) std::sort(s.begin() + 1, s.end());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) { return sig[static_cast<std::size_t>(a)] < sig[static_cast<std::size_t>(b)]; });
    int next = 0;
    for (int i = 0; i < n; ++i) {
      if (i > 0 && sig[static_cast<std::size_t>(order[static_cast<std::size_t>(i)])] != sig[static_cast<std::size_t>(order[static_cast<std::size_t>(i - 1)])]) ++next;
      color[static_cast<std::size_t>(order[static_cast<std::size_t>(i)])] = next;
    }
    const int new_classes = next + 1;
    if (new_classes == classes) break;
    classes = new_classes;
  }
  return color;
}

}  // namespace detail

namespace {

class CanonicalSearch {
 public:
  CanonicalSearch(const Hypergraph& h, int fixed) : h_(h), n_(h.order()), r_(h.uniformity()) {
    color_ = detail::refine_colors(h, fixed);
    pos_color_ = color_;
    std::sort(pos_color_.begin(), pos_color_.end());
    best_.assign(detail::choose(n_, r_), -1);
    perm_.assign(static_cast<std::size_t>(n_), -1);
    tails_ = r_ >= 1 ? &detail::masks_with_popcount(r_ - 1) : nullptr;
  }

  Permutation run() {
    if (n_ == 0) return Permutation::identity(0);
    search(0, 0);
    // best_perm_ maps position -> vertex; the relabeling sends vertex -> position.
    return Permutation(best_perm_).inverse();
  }

 private:
  void search(int k, VertexMask used) {
    if (k == n_) {
      best_perm_ = perm_;
      return;
    }
    const std::size_t tail_count = detail::choose(k, r_ - 1);
    const std::size_t base = detail::choose(k, r_);
    for (int v = 0; v < n_; ++v) {
      if ((used >> v) & 1u) continue;
      if (color_[static_cast<std::size_t>(v)] != pos_color_[static_cast<std::size_t>(k)]) continue;
      perm_[static_cast<std::size_t>(k)] = v;
      bool less = false;
      bool overwrite = false;
      std::size_t idx = base;
      for (std::size_t t = 0; t < tail_count; ++t, ++idx) {
        VertexMask orig = VertexMask{1} << v;
        for (VertexMask tail = (*tails_)[t]; tail; tail &= tail - 1) {
          orig |= VertexMask{1} << perm_[static_cast<std::size_t>(std::countr_zero(tail))];
        }
        const std::int8_t bit = h_.has_edge(orig) ? 1 : 0;
        if (overwrite) {
          best_[idx] = bit;
        } else if (bit > best_[idx]) {
          overwrite = true;
          best_[idx] = bit;
        } else if (bit < best_[idx]) {
          less = true;
          break;
        }
      }
      if (less) continue;
      if (overwrite) std::fill(best_.begin() + static_cast<std::ptrdiff_t>(idx), best_.end(), std::int8_t{-1});
      search(k + 1, used | (VertexMask{1} << v));
    }
  }

  const Hypergraph& h_;
  int n_;
  int r_;
  std::vector<int> color_;
  std::vector<int> pos_color_;
  std::vector<std::int8_t> best_;
  std::vector<int> perm_;
  std::vector<int> best_perm_;
  const std::vector<VertexMask>* tails_;
};

}  // namespace

Permutation canonical_labeling(const Hypergraph& h, int fixed) {
  if (fixed < 0 || fixed > h.order()) throw Error(ErrorKind::InvalidSubset, "fixed prefix exceeds graph order");
  return CanonicalSearch(h, fixed).run();
}

Hypergraph canonical_form(const Hypergraph& h, int fixed) { return h.relabel(canonical_labeling(h, fixed)); }

bool is_isomorphic(const Hypergraph& a, const Hypergraph& b) {
  if (a.uniformity() != b.uniformity() || a.order() != b.order() || a.size() != b.size()) return false;
  return canonical_form(a) == canonical_form(b);
}

bool contains_subgraph(const Hypergraph& h, const Hypergraph& f) {
  if (h.uniformity() != f.uniformity()) {
    throw Error(ErrorKind::UniformityMismatch, "containment between graphs of different uniformity");
  }
  if (f.order() > h.order() || f.size() > h.size()) return false;
  std::vector<int> pre(static_cast<std::size_t>(f.order()), -1);
  bool found = false;
  detail::for_each_embedding(h, f, pre, nullptr, [&](std::span<const int>) {
    found = true;
    return false;
  });
  return found;
}

bool contains_subgraph_through(const Hypergraph& h, const Hypergraph& f, VertexMask edge) {
  if (h.uniformity() != f.uniformity()) {
    throw Error(ErrorKind::UniformityMismatch, "containment between graphs of different uniformity");
  }
  if (f.order() > h.order() || f.size() > h.size() || !h.has_edge(edge)) return false;
  return detail::ThroughEdgeMatcher(f).matches(h, edge);
}

std::vector<Permutation> automorphisms(const Hypergraph& h) {
  const auto color = detail::refine_colors(h, 0);
  std::vector<int> pre(static_cast<std::size_t>(h.order()), -1);
  std::vector<Permutation> out;
  auto allowed = [&](int from, int to) { return color[static_cast<std::size_t>(from)] == color[static_cast<std::size_t>(to)]; };
  detail::for_each_embedding(h, h, pre, allowed, [&](std::span<const int> map) {
    out.emplace_back(std::vector<int>(map.begin(), map.end()));
    return true;
  });
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace flagbound

#include "flagbound/enumerate.hpp"

#include <algorithm>
#include <array>

#include "augment.hpp"
#include "flagbound/error.hpp"
#include "flagbound/parallel.hpp"

namespace flagbound {

ForbiddenFamily::ForbiddenFamily(std::vector<Hypergraph> members, std::string name) : name_(std::move(name)) {
  if (members.empty()) throw Error(ErrorKind::DegenerateInput, "forbidden family must be nonempty");
  r_ = members.front().uniformity();
  for (const auto& m : members) {
    if (m.uniformity() != r_) throw Error(ErrorKind::UniformityMismatch, "family members differ in uniformity");
    Hypergraph c = canonical_form(m);
    bool duplicate = std::any_of(members_.begin(), members_.end(), [&](const Hypergraph& x) { return x == c; });
    if (!duplicate) members_.push_back(std::move(c));
  }
}

bool ForbiddenFamily::admits(const Hypergraph& h) const {
  if (h.uniformity() != r_) throw Error(ErrorKind::UniformityMismatch, "graph and family differ in uniformity");
  return std::none_of(members_.begin(), members_.end(), [&](const Hypergraph& f) { return contains_subgraph(h, f); });
}

namespace {

// Canonical edge lists; sorted and deduplicated once complete.
using CanonicalSet = std::vector<std::vector<VertexMask>>;

void sort_unique(CanonicalSet& set) {
  std::sort(set.begin(), set.end());
  set.erase(std::unique(set.begin(), set.end()), set.end());
}

// Mutable graph used while growing the star of a new vertex.
class GrowingGraph {
 public:
  GrowingGraph(const Hypergraph& base, int n) : n_(n), edges_(base.edges().begin(), base.edges().end()) {
    for (VertexMask e : edges_) set(e, true);
  }

  int order() const { return n_; }
  std::size_t size() const { return edges_.size(); }
  bool has_edge(VertexMask e) const { return ((present_[e >> 6] >> (e & 63)) & 1u) != 0; }

  void push(VertexMask e) {
    edges_.push_back(e);
    set(e, true);
  }
  void pop() {
    set(edges_.back(), false);
    edges_.pop_back();
  }
  const std::vector<VertexMask>& edges() const { return edges_; }

 private:
  void set(VertexMask e, bool on) {
    if (on) {
      present_[e >> 6] |= std::uint64_t{1} << (e & 63);
    } else {
      present_[e >> 6] &= ~(std::uint64_t{1} << (e & 63));
    }
  }

  int n_;
  std::vector<VertexMask> edges_;
  std::array<std::uint64_t, (std::size_t{1} << kMaxOrder) / 64> present_{};
};

void extend_parent(const Hypergraph& parent, int r, std::span<const detail::ThroughEdgeMatcher> matchers,
                   int fixed, CanonicalSet& out) {
  const int n = parent.order() + 1;
  const VertexMask fresh = VertexMask{1} << (n - 1);
  // A member with an isolated vertex can put it on the new vertex without
  // touching any new edge; that copy exists iff the parent holds the rest.
  for (const auto& m : matchers) {
    const Hypergraph& f = m.pattern();
    if (f.order() > n || f.size() == 0) continue;
    for (int v = 0; v < f.order(); ++v) {
      if (f.degree(v) != 0) continue;
      if (contains_subgraph(parent, f.without_vertex(v))) return;
      break;
    }
  }
  const auto& tails = detail::masks_with_popcount(r - 1);
  const std::size_t count = detail::choose(n - 1, r - 1);
  GrowingGraph g(parent, n);

  auto forbidden_through = [&](VertexMask e) {
    for (const auto& m : matchers) {
      if (m.pattern().size() <= g.size() && m.pattern().order() <= n && m.matches(g, e)) return true;
    }
    return false;
  };

  auto recurse = [&](auto&& self, std::size_t i) -> void {
    if (i == count) {
      Hypergraph h(r, n, g.edges());
      Hypergraph c = canonical_form(h, fixed);
      out.emplace_back(c.edges().begin(), c.edges().end());
      return;
    }
    self(self, i + 1);
    const VertexMask e = tails[i] | fresh;
    g.push(e);
    if (!forbidden_through(e)) self(self, i + 1);
    g.pop();
  };
  recurse(recurse, 0);
  sort_unique(out);
}

}  // namespace

namespace detail {

std::vector<Hypergraph> augment_by_vertex(std::span<const Hypergraph> level, int r,
                                          std::span<const ThroughEdgeMatcher> matchers, int fixed) {
  std::vector<CanonicalSet> partial(level.size());
  parallel_for(level.size(), [&](std::size_t i) { extend_parent(level[i], r, matchers, fixed, partial[i]); });
  CanonicalSet merged;
  for (auto& p : partial) {
    merged.insert(merged.end(), std::make_move_iterator(p.begin()), std::make_move_iterator(p.end()));
    p = CanonicalSet{};
  }
  sort_unique(merged);
  const int n = level.empty() ? 0 : level.front().order() + 1;
  std::vector<Hypergraph> next;
  next.reserve(merged.size());
  for (const auto& edges : merged) next.emplace_back(r, n, edges);
  std::sort(next.begin(), next.end(), [](const Hypergraph& a, const Hypergraph& b) { return canonical_order_less(a, b); });
  return next;
}

}  // namespace detail

std::vector<Hypergraph> enumerate_admissible_any_order(const ForbiddenFamily& family, int l) {
  if (l < 0 || l > kMaxOrder) throw Error(ErrorKind::SizeViolation, "order outside supported range");
  const int r = family.uniformity();
  std::vector<detail::ThroughEdgeMatcher> matchers;
  for (const auto& m : family.members()) matchers.emplace_back(m);

  // Edgeless members are invisible to the edge-by-edge check.
  int edgeless_limit = kMaxOrder + 1;
  for (const auto& m : family.members()) {
    if (m.size() == 0) edgeless_limit = std::min(edgeless_limit, m.order());
  }

  std::vector<Hypergraph> level;
  if (edgeless_limit > 0) level.emplace_back(r, 0);
  for (int n = 1; n <= l; ++n) {
    if (n >= edgeless_limit) {
      level.clear();
      break;
    }
    level = detail::augment_by_vertex(level, r, matchers, 0);
  }
  return level;
}

std::vector<Hypergraph> enumerate_admissible(const ForbiddenFamily& family, int l) {
  if (l < family.uniformity()) {
    throw Error(ErrorKind::DegenerateInput, "order l must be at least the uniformity r");
  }
  return enumerate_admissible_any_order(family, l);
}

int turan_number(const ForbiddenFamily& family, int n, int max_order) {
  if (n < family.uniformity()) throw Error(ErrorKind::DegenerateInput, "n must be at least r");
  if (n > max_order) {
    throw Error(ErrorKind::ResourceLimit,
                "exhaustive search limited to n <= " + std::to_string(max_order) + " (requested " + std::to_string(n) + ")");
  }
  std::size_t best = 0;
  for (const auto& h : enumerate_admissible(family, n)) best = std::max(best, h.size());
  return static_cast<int>(best);
}

}  // namespace flagbound

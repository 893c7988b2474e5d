#pragma once

#include <algorithm>
#include <bit>
#include <span>
#include <type_traits>
#include <vector>

#include "flagbound/hypergraph.hpp"

namespace flagbound::detail {

const std::vector<VertexMask>& masks_with_popcount(int k);
std::size_t choose(int n, int k);
/// Stable 1-dimensional colour refinement; the first `fixed` vertices keep
/// singleton colours 0..fixed-1.
std::vector<int> refine_colors(const Hypergraph& h, int fixed);

/// Vertex order and per-step edge checks for mapping a pattern graph into
/// hosts. Vertices in `first` are assigned first (they are the preassigned ones).
struct EmbeddingPlan {
  EmbeddingPlan(const Hypergraph& pattern, VertexMask first) : order_count(pattern.order()) {
    const int n = pattern.order();
    VertexMask placed = 0;
    for (int v = 0; v < n; ++v) {
      if ((first >> v) & 1u) {
        order.push_back(v);
        placed |= VertexMask{1} << v;
      }
    }
    while (static_cast<int>(order.size()) < n) {
      int best = -1;
      int best_closed = -1;
      int best_touch = -1;
      for (int v = 0; v < n; ++v) {
        if ((placed >> v) & 1u) continue;
        int closed = 0;
        int touch = 0;
        const VertexMask with = placed | (VertexMask{1} << v);
        for (VertexMask e : pattern.edges()) {
          if (!((e >> v) & 1u)) continue;
          if ((e & with) == e) ++closed;
          touch += std::popcount(e & placed);
        }
        if (closed > best_closed || (closed == best_closed && touch > best_touch)) {
          best = v;
          best_closed = closed;
          best_touch = touch;
        }
      }
      order.push_back(best);
      placed |= VertexMask{1} << best;
    }
    checks.resize(static_cast<std::size_t>(n));
    VertexMask before = 0;
    for (int i = 0; i < n; ++i) {
      const int v = order[static_cast<std::size_t>(i)];
      const VertexMask with = before | (VertexMask{1} << v);
      for (VertexMask e : pattern.edges()) {
        if (((e >> v) & 1u) && (e & with) == e) checks[static_cast<std::size_t>(i)].push_back(e);
      }
      before = with;
    }
  }

  int order_count;
  std::vector<int> order;
  std::vector<std::vector<VertexMask>> checks;
};

/// Enumerates injective maps V(pattern) -> V(host) sending every pattern edge
/// onto a host edge, extending `image` (entries -1 are free; the plan must
/// list the preassigned vertices first). `allowed(p, h)` may veto individual
/// images (nullptr = no filter). `visit(map)` returns false to stop.
/// Host needs order() and has_edge(VertexMask).
template <class Host, class Allowed, class Visit>
bool run_embedding(const EmbeddingPlan& plan, const Host& host, std::span<int> image, Allowed allowed,
                   Visit visit) {
  const int n = plan.order_count;
  const int hn = host.order();
  bool stop = false;
  VertexMask used = 0;
  for (int v : image) {
    if (v >= 0) {
      if ((used >> v) & 1u) return false;
      used |= VertexMask{1} << v;
    }
  }

  auto edges_ok = [&](int depth) {
    for (VertexMask e : plan.checks[static_cast<std::size_t>(depth)]) {
      VertexMask img = 0;
      for (VertexMask rest = e; rest; rest &= rest - 1) {
        img |= VertexMask{1} << image[static_cast<std::size_t>(std::countr_zero(rest))];
      }
      if (!host.has_edge(img)) return false;
    }
    return true;
  };

  auto recurse = [&](auto&& self, int depth, VertexMask taken) -> void {
    if (depth == n) {
      if (!visit(std::span<const int>(image.data(), image.size()))) stop = true;
      return;
    }
    const int v = plan.order[static_cast<std::size_t>(depth)];
    if (image[static_cast<std::size_t>(v)] >= 0) {
      if (edges_ok(depth)) self(self, depth + 1, taken);
      return;
    }
    for (int w = 0; w < hn && !stop; ++w) {
      if ((taken >> w) & 1u) continue;
      if constexpr (!std::is_same_v<Allowed, std::nullptr_t>) {
        if (!allowed(v, w)) continue;
      }
      image[static_cast<std::size_t>(v)] = w;
      if (edges_ok(depth)) self(self, depth + 1, taken | (VertexMask{1} << w));
    }
    image[static_cast<std::size_t>(v)] = -1;
  };
  recurse(recurse, 0, used);
  return stop;
}

/// Plan-building convenience wrapper around run_embedding.
template <class Allowed, class Visit>
void for_each_embedding(const Hypergraph& host, const Hypergraph& pattern, std::span<const int> preassigned,
                        Allowed allowed, Visit visit) {
  VertexMask first = 0;
  for (std::size_t v = 0; v < preassigned.size(); ++v) {
    if (preassigned[v] >= 0) first |= VertexMask{1} << v;
  }
  EmbeddingPlan plan(pattern, first);
  std::vector<int> image(preassigned.begin(), preassigned.end());
  run_embedding(plan, host, std::span<int>(image), allowed, visit);
}

/// Copies of `pattern` through a given host edge, with plans precomputed per
/// pattern edge.
class ThroughEdgeMatcher {
 public:
  explicit ThroughEdgeMatcher(const Hypergraph& pattern) : pattern_(pattern) {
    for (VertexMask f : pattern.edges()) plans_.emplace_back(pattern, f);
  }

  const Hypergraph& pattern() const { return pattern_; }

  template <class Host>
  bool matches(const Host& host, VertexMask edge) const {
    const int r = pattern_.uniformity();
    int targets[kMaxOrder];
    {
      int k = 0;
      for (VertexMask e = edge; e; e &= e - 1) targets[k++] = std::countr_zero(e);
    }
    std::vector<int> image(static_cast<std::size_t>(pattern_.order()), -1);
    std::size_t fi = 0;
    for (VertexMask f : pattern_.edges()) {
      const EmbeddingPlan& plan = plans_[fi++];
      int src[kMaxOrder];
      int k = 0;
      for (VertexMask e = f; e; e &= e - 1) src[k++] = std::countr_zero(e);
      int idx[kMaxOrder];
      for (int i = 0; i < r; ++i) idx[i] = i;
      do {
        std::fill(image.begin(), image.end(), -1);
        for (int i = 0; i < r; ++i) image[static_cast<std::size_t>(src[i])] = targets[idx[i]];
        if (run_embedding(plan, host, std::span<int>(image), nullptr, [](std::span<const int>) { return false; })) {
          return true;
        }
      } while (std::next_permutation(idx, idx + r));
    }
    return false;
  }

 private:
  Hypergraph pattern_;
  std::vector<EmbeddingPlan> plans_;
};

}  // namespace flagbound::detail

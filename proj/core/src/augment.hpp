#pragma once

#include <span>
#include <vector>

#include "embedding.hpp"
#include "flagbound/hypergraph.hpp"

namespace flagbound::detail {

/// All graphs obtained from `level` by adding one vertex with every F-free
/// star, canonicalized with the first `fixed` vertices held in place,
/// deduplicated and sorted by (edge count, edge list).
std::vector<Hypergraph> augment_by_vertex(std::span<const Hypergraph> level, int r,
                                          std::span<const ThroughEdgeMatcher> matchers, int fixed);

}  // namespace flagbound::detail

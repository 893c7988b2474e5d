#pragma once

#include <span>
#include <string>
#include <vector>

#include "flagbound/hypergraph.hpp"

namespace flagbound {

/// A nonempty family of forbidden r-graphs, stored canonically without
/// isomorphic duplicates.
class ForbiddenFamily {
 public:
  explicit ForbiddenFamily(std::vector<Hypergraph> members, std::string name = {});

  int uniformity() const { return r_; }
  std::span<const Hypergraph> members() const { return members_; }
  const std::string& name() const { return name_; }

  /// True when `h` contains no member as a (not necessarily induced) subgraph.
  bool admits(const Hypergraph& h) const;

 private:
  int r_;
  std::vector<Hypergraph> members_;
  std::string name_;
};

/// All F-free r-graphs on l vertices up to isomorphism, in canonical form,
/// sorted by (edge count, edge list). Built by one-vertex augmentation of the
/// (l-1)-vertex list. Throws DegenerateInput when l < r.
std::vector<Hypergraph> enumerate_admissible(const ForbiddenFamily& family, int l);

/// Same as above but also accepts l < r (only the edgeless graph).
std::vector<Hypergraph> enumerate_admissible_any_order(const ForbiddenFamily& family, int l);

inline constexpr int kDefaultTuranGuard = 7;

/// ex(n, F) by exhaustive search. Throws ResourceLimit when n > max_order.
int turan_number(const ForbiddenFamily& family, int n, int max_order = kDefaultTuranGuard);

}  // namespace flagbound

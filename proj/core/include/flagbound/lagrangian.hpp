#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "flagbound/hypergraph.hpp"
#include "flagbound/rational.hpp"

namespace flagbound {

/// Rational weights, nonnegative and summing to exactly 1.
class SimplexPoint {
 public:
  SimplexPoint() = default;
  /// Throws InvalidSimplexPoint on a negative weight or a sum other than 1.
  explicit SimplexPoint(std::vector<Rational> weights);

  /// n weights of 1/n.
  static SimplexPoint uniform(int n);

  std::size_t size() const { return weights_.size(); }
  const std::vector<Rational>& weights() const { return weights_; }
  const Rational& operator[](std::size_t i) const { return weights_[i]; }

 private:
  std::vector<Rational> weights_;
};

/// lambda(F, x) = r! * sum over edges of the product of the edge's weights.
/// Throws DimensionMismatch unless |x| = |V(F)|.
Rational evaluate(const Hypergraph& f, const SimplexPoint& x);

struct LagrangianBound {
  Hypergraph graph;
  SimplexPoint witness;
  Rational value;
};

struct MaximizeOptions {
  int restarts = 50;
  int iterations = 2000;
  std::uint64_t seed = 1;
  std::uint64_t denominator_bound = 1000000;
};

/// Multistart projected gradient ascent; the best point found is rounded to
/// a rational witness and evaluated exactly. Only a lower bound on lambda(F).
LagrangianBound maximize(const Hypergraph& f, const MaximizeOptions& options = {});

/// evaluate(f, x) >= target, exactly. Throws DimensionMismatch as evaluate.
bool verify_lower_bound(const Hypergraph& f, const SimplexPoint& x, const Rational& target);

// Witness file: blocks separated by `---`, each with
//   graph: 3 4 : 1 2 3, 1 2 4, 1 3 4
//   witness: 1/3 2/9 2/9 2/9
// Values are recomputed on reading.
std::vector<LagrangianBound> read_lagrangian_bounds(std::istream& in);
std::vector<LagrangianBound> read_lagrangian_file(const std::string& path);
void write_lagrangian_bounds(std::ostream& out, const std::vector<LagrangianBound>& bounds);

/// Whitespace-separated rationals ("1/3 0.25 ...").
SimplexPoint parse_simplex_point(std::string_view text);

}  // namespace flagbound

#include "flagbound/jump.hpp"

#include <optional>

#include "flagbound/error.hpp"
#include "flagbound/io.hpp"

namespace flagbound {

namespace {

Hypergraph compact(int n, std::string_view edges) { return Hypergraph::from_compact(3, n, edges); }

}  // namespace

std::vector<std::string> builtin_family_names() { return {"K4-minus", "F-star", "F-prime"}; }

ForbiddenFamily builtin_family(std::string_view name) {
  const auto f1 = compact(4, "123 124 134");
  const auto f2 = compact(5, "123 124 125 345");
  const auto f3 = compact(5, "123 124 235 145 345");
  if (name == "K4-minus") return ForbiddenFamily({f1}, "K4-minus");
  if (name == "F-star") return ForbiddenFamily({f1, f2, f3}, "F-star");
  if (name == "F-prime") {
    const auto f4 = compact(7, "123 135 145 245 126 246 346 356 237 147 347 257 167");
    const auto f5 = compact(7, "123 124 135 145 236 346 256 456 247 347 257 357 167");
    return ForbiddenFamily({f1, f2, f3, f4, f5}, "F-prime");
  }
  throw Error(ErrorKind::UnknownName, "no builtin family '" + std::string(name) + "'");
}

JumpInterval jump_interval(const ForbiddenFamily& family, const Rational& threshold,
                           const std::vector<LagrangianBound>& lagrangian_bounds,
                           std::vector<std::string> provenance) {
  const auto members = family.members();
  std::optional<Rational> hi;
  for (std::size_t i = 0; i < members.size(); ++i) {
    const LagrangianBound* best = nullptr;
    Rational best_value;
    for (const auto& b : lagrangian_bounds) {
      if (!is_isomorphic(b.graph, members[i])) continue;
      Rational v = evaluate(b.graph, b.witness);
      if (v != b.value)
        throw Error(ErrorKind::InternalInconsistency,
                    "stated lambda " + format_rational(b.value) + " differs from witness value " + format_rational(v));
      if (!best || v > best_value) {
        best = &b;
        best_value = v;
      }
    }
    if (!best)
      throw Error(ErrorKind::CoverageGap, "no Lagrangian bound for member " + std::to_string(i + 1) + " (" +
                                              format_inline(members[i]) + ")");
    provenance.push_back("lambda(member " + std::to_string(i + 1) + ") >= " + format_rational(best_value) +
                         " by witness on " + format_inline(best->graph));
    if (!hi || best_value < *hi) hi = best_value;
  }
  if (*hi <= threshold)
    throw Error(ErrorKind::NoJumpDerivable, "min lambda " + format_rational(*hi) + " <= threshold " +
                                                format_rational(threshold));
  return JumpInterval{family.uniformity(), threshold, *hi, family, std::move(provenance)};
}

JumpInterval jump_interval(const Certificate& threshold_cert, const std::vector<LagrangianBound>& lagrangian_bounds) {
  Rational bound = verify_certificate(threshold_cert);
  std::vector<std::string> provenance{"pi(" + (threshold_cert.family.name().empty() ? std::string("F") : threshold_cert.family.name()) +
                                      ") <= " + format_rational(bound) + " by verified certificate, l = " +
                                      std::to_string(threshold_cert.l)};
  return jump_interval(threshold_cert.family, bound, lagrangian_bounds, std::move(provenance));
}

std::vector<LagrangianBound> builtin_lagrangian_bounds(const ForbiddenFamily& family, const MaximizeOptions& options) {
  std::vector<LagrangianBound> out;
  for (const auto& f : family.members()) out.push_back(maximize(f, options));
  return out;
}

}  // namespace flagbound

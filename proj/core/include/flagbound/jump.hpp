#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "flagbound/certificate.hpp"
#include "flagbound/enumerate.hpp"
#include "flagbound/lagrangian.hpp"
#include "flagbound/rational.hpp"

namespace flagbound {

/// Every alpha in [lo, hi) is a jump for r-graphs: lo is a verified threshold
/// for `family` and hi is a certified lower bound on min over members of lambda.
struct JumpInterval {
  int r = 0;
  Rational lo;
  Rational hi;
  ForbiddenFamily family;
  std::vector<std::string> provenance;
};

/// "K4-minus", "F-star" or "F-prime". Throws UnknownName.
ForbiddenFamily builtin_family(std::string_view name);
std::vector<std::string> builtin_family_names();

/// Verifies the certificate, then pairs each family member with the best
/// bound whose graph is isomorphic to it. Witness values are re-evaluated.
/// Throws CoverageGap when a member has no bound, NoJumpDerivable when
/// min lambda <= the verified bound, plus any verification error.
JumpInterval jump_interval(const Certificate& threshold_cert, const std::vector<LagrangianBound>& lagrangian_bounds);

/// Same rule with a threshold established elsewhere (e.g. pi(F) = 0).
JumpInterval jump_interval(const ForbiddenFamily& family, const Rational& threshold,
                           const std::vector<LagrangianBound>& lagrangian_bounds,
                           std::vector<std::string> provenance = {});

/// Witnesses for the members of a builtin family, found by maximize().
std::vector<LagrangianBound> builtin_lagrangian_bounds(const ForbiddenFamily& family,
                                                       const MaximizeOptions& options = {});

}  // namespace flagbound

#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "flagbound/sdp.hpp"

namespace flagbound {

struct CertificateSpec {
  TypeSpec spec;
  /// One matrix in raw coordinates; Q+ then Q- (when present) in block coordinates.
  std::vector<RationalMatrix> blocks;
};

/// Self-contained proof object: everything needed to re-derive the bound.
struct Certificate {
  ForbiddenFamily family;
  int l = 0;
  Coordinates coords = Coordinates::Raw;
  std::vector<CertificateSpec> specs;
  Rational claimed_bound;
};

/// Entrywise best rational approximation after symmetrizing by averaging.
RationalMatrix rationalize(const FloatMatrix& q, std::uint64_t denominator_bound);

/// Rationalizes every block of a solution. The claimed bound is the exact
/// bound the rounded matrices give on the problem; PSD is not checked.
Certificate rationalize(const SDPProblem& problem, const SdpSolution& solution, std::uint64_t denominator_bound);

/// Exact max_H (d(H) + sum of c_H) for the given blocks on an assembled problem.
Rational evaluate_bound(const SDPProblem& problem, const std::vector<CertificateSpec>& specs);

/// Exact LDL^T with symmetric pivoting. Throws NotSymmetric.
bool verify_psd(const RationalMatrix& q);

struct RoundingOptions {
  std::uint64_t denominator_bound = 1000000;
  std::uint64_t max_denominator_bound = 1000000000000;
};

struct RoundingReport {
  Certificate certificate;
  std::uint64_t denominator_bound = 0;
  Rational shift;  // largest multiple of the identity added to any block
};

/// Rationalizes with growing denominators until every block is PSD; failing
/// that, shifts each failing block by the smallest tried multiple of the
/// identity that makes it PSD. The claimed bound is the exact resulting bound.
RoundingReport round_certificate(const SDPProblem& problem, const SdpSolution& solution,
                                 const RoundingOptions& options = {});

/// Re-enumerates the admissible graphs, recomputes every tensor, checks each
/// block PSD and returns the exact achieved bound. Integer and rational
/// arithmetic only. Throws PsdFailure, DimensionMismatch or BoundExceeded.
Rational verify_certificate(const Certificate& cert);

void write_certificate(const Certificate& cert, std::ostream& out);
Certificate read_certificate(std::istream& in);
Certificate read_certificate_file(const std::string& path);
void write_certificate_file(const Certificate& cert, const std::string& path);

}  // namespace flagbound

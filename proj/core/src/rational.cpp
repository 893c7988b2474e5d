#include "flagbound/rational.hpp"

#include <cmath>

#include "flagbound/error.hpp"

namespace flagbound {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::DegenerateInput: return "degenerate-input";
    case ErrorKind::InvalidSubset: return "invalid-subset";
    case ErrorKind::InvalidGraph: return "invalid-graph";
    case ErrorKind::InvalidType: return "invalid-type";
    case ErrorKind::UniformityMismatch: return "uniformity-mismatch";
    case ErrorKind::DimensionMismatch: return "dimension-mismatch";
    case ErrorKind::SizeViolation: return "size-violation";
    case ErrorKind::ResourceLimit: return "resource-limit";
    case ErrorKind::InvalidSimplexPoint: return "invalid-simplex-point";
    case ErrorKind::NotSymmetric: return "not-symmetric";
    case ErrorKind::PsdFailure: return "psd-failure";
    case ErrorKind::BoundExceeded: return "bound-exceeded";
    case ErrorKind::InternalInconsistency: return "internal-inconsistency";
    case ErrorKind::CoverageGap: return "coverage-gap";
    case ErrorKind::NoJumpDerivable: return "no-jump-derivable";
    case ErrorKind::UnknownName: return "unknown-name";
    case ErrorKind::Parse: return "parse-error";
    case ErrorKind::Io: return "io-error";
    case ErrorKind::SolverFailure: return "solver-failure";
  }
  return "error";
}

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (c < '0' || c > '9') return false;
  }
  return true;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view s = text;
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  if (s.empty()) throw Error(ErrorKind::Parse, "empty rational");

  bool negative = false;
  std::string_view body = s;
  if (body.front() == '-' || body.front() == '+') {
    negative = body.front() == '-';
    body.remove_prefix(1);
  }

  Rational result;
  if (auto slash = body.find('/'); slash != std::string_view::npos) {
    auto num = body.substr(0, slash);
    auto den = body.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den)) {
      throw Error(ErrorKind::Parse, "malformed rational '" + std::string(text) + "'");
    }
    Integer d(std::string(den), 10);
    if (d == 0) throw Error(ErrorKind::Parse, "zero denominator in '" + std::string(text) + "'");
    result = Rational(Integer(std::string(num), 10), d);
  } else if (auto dot = body.find('.'); dot != std::string_view::npos) {
    auto whole = body.substr(0, dot);
    auto frac = body.substr(dot + 1);
    if ((!whole.empty() && !all_digits(whole)) || (!frac.empty() && !all_digits(frac)) ||
        (whole.empty() && frac.empty())) {
      throw Error(ErrorKind::Parse, "malformed decimal '" + std::string(text) + "'");
    }
    std::string digits = std::string(whole) + std::string(frac);
    Integer num(digits.empty() ? std::string("0") : digits, 10);
    Integer den;
    mpz_ui_pow_ui(den.get_mpz_t(), 10, frac.size());
    result = Rational(num, den);
  } else {
    if (!all_digits(body)) {
      throw Error(ErrorKind::Parse, "malformed rational '" + std::string(text) + "'");
    }
    result = Rational(Integer(std::string(body), 10));
  }
  result.canonicalize();
  if (negative) result = -result;
  return result;
}

std::string format_rational(const Rational& value) { return value.get_str(10); }

std::string format_decimal(const Rational& value, int digits) {
  Integer scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(digits));
  Integer scaled = value.get_num() * scale;
  Integer q;
  mpz_tdiv_q(q.get_mpz_t(), scaled.get_mpz_t(), value.get_den().get_mpz_t());
  bool negative = q < 0 || (q == 0 && value < 0);
  Integer a = abs(q);
  std::string s = a.get_str(10);
  if (digits > 0) {
    if (static_cast<int>(s.size()) <= digits) s.insert(0, digits + 1 - s.size(), '0');
    s.insert(s.size() - digits, ".");
  }
  return negative ? "-" + s : s;
}

Integer binomial(int n, int k) {
  if (k < 0 || n < 0 || k > n) return 0;
  Integer result;
  mpz_bin_uiui(result.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return result;
}

Rational best_rational(double value, std::uint64_t max_denominator) {
  if (!std::isfinite(value)) throw Error(ErrorKind::Parse, "non-finite value cannot be rationalized");
  if (max_denominator == 0) max_denominator = 1;

  // Work on the exact binary value of the double.
  Rational x(value);
  bool negative = x < 0;
  if (negative) x = -x;

  Integer p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  Rational rest = x;
  const Integer bound(std::to_string(max_denominator), 10);
  while (true) {
    Integer a;
    mpz_fdiv_q(a.get_mpz_t(), rest.get_num_mpz_t(), rest.get_den_mpz_t());
    Integer q2 = a * q1 + q0;
    if (q2 > bound) {
      // Largest semiconvergent that still fits, compared against the last convergent.
      Integer k;
      mpz_fdiv_q(k.get_mpz_t(), Integer(bound - q0).get_mpz_t(), q1.get_mpz_t());
      Rational semi(k * p1 + p0, k * q1 + q0);
      Rational conv(p1, q1);
      semi.canonicalize();
      conv.canonicalize();
      Rational pick = (abs(semi - x) < abs(conv - x)) ? semi : conv;
      return negative ? Rational(-pick) : pick;
    }
    Integer p2 = a * p1 + p0;
    p0 = p1;
    q0 = q1;
    p1 = p2;
    q1 = q2;
    Rational frac = rest - a;
    if (frac == 0) break;
    rest = 1 / frac;
  }
  Rational result(p1, q1);
  result.canonicalize();
  return negative ? Rational(-result) : result;
}

}  // namespace flagbound

#include "flagbound/certificate.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "flagbound/error.hpp"
#include "flagbound/io.hpp"
#include "flagbound/parallel.hpp"

namespace flagbound {

RationalMatrix rationalize(const FloatMatrix& q, std::uint64_t denominator_bound) {
  const std::size_t n = q.size();
  RationalMatrix out(n, std::vector<Rational>(n));
  for (std::size_t i = 0; i < n; ++i) {
    if (q[i].size() != n) throw Error(ErrorKind::DimensionMismatch, "matrix is not square");
    for (std::size_t j = i; j < n; ++j) {
      const double v = i == j ? q[i][i] : 0.5 * (q[i][j] + q[j][i]);
      out[i][j] = best_rational(v, denominator_bound);
      out[j][i] = out[i][j];
    }
  }
  return out;
}

Rational evaluate_bound(const SDPProblem& problem, const std::vector<CertificateSpec>& specs) {
  if (specs.size() != problem.specs.size()) throw Error(ErrorKind::DimensionMismatch, "number of types differs");
  for (std::size_t s = 0; s < specs.size(); ++s) {
    const auto& sizes = problem.specs[s].tensor.block_sizes;
    const auto& blocks = specs[s].blocks;
    if (blocks.size() != sizes.size()) {
      throw Error(ErrorKind::DimensionMismatch, "type " + std::to_string(s + 1) + ": expected " +
                                                    std::to_string(sizes.size()) + " blocks, got " +
                                                    std::to_string(blocks.size()));
    }
    for (std::size_t k = 0; k < sizes.size(); ++k) {
      if (blocks[k].size() != static_cast<std::size_t>(sizes[k])) {
        throw Error(ErrorKind::DimensionMismatch, "type " + std::to_string(s + 1) + ": block of size " +
                                                      std::to_string(blocks[k].size()) + ", flag basis needs " +
                                                      std::to_string(sizes[k]));
      }
    }
  }
  if (problem.graphs.empty()) throw Error(ErrorKind::DegenerateInput, "no admissible graphs");
  std::vector<Rational> values(problem.graphs.size());
  parallel_for(values.size(), [&](std::size_t h) {
    Rational v = problem.densities[h];
    for (std::size_t s = 0; s < specs.size(); ++s) v += c_h(specs[s].blocks, problem.specs[s].tensor, h);
    values[h] = v;
  });
  return *std::max_element(values.begin(), values.end());
}

Certificate rationalize(const SDPProblem& problem, const SdpSolution& solution, std::uint64_t denominator_bound) {
  if (solution.blocks.size() != problem.specs.size()) {
    throw Error(ErrorKind::DimensionMismatch, "solution does not match the problem's types");
  }
  Certificate cert{problem.family, problem.l, problem.coords, {}, 0};
  for (std::size_t s = 0; s < problem.specs.size(); ++s) {
    CertificateSpec spec{problem.specs[s].spec, {}};
    for (const auto& q : solution.blocks[s]) spec.blocks.push_back(rationalize(q, denominator_bound));
    cert.specs.push_back(std::move(spec));
  }
  cert.claimed_bound = evaluate_bound(problem, cert.specs);
  return cert;
}

bool verify_psd(const RationalMatrix& q) {
  const std::size_t n = q.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (q[i].size() != n) throw Error(ErrorKind::DimensionMismatch, "matrix is not square");
    for (std::size_t j = 0; j < i; ++j) {
      if (q[i][j] != q[j][i]) throw Error(ErrorKind::NotSymmetric, "matrix is not symmetric");
    }
  }
  RationalMatrix a = q;
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  for (std::size_t k = 0; k < n; ++k) {
    // Largest remaining diagonal entry as pivot.
    std::size_t p = k;
    for (std::size_t i = k; i < n; ++i) {
      const Rational& d = a[order[i]][order[i]];
      if (d < 0) return false;
      if (d > a[order[p]][order[p]]) p = i;
    }
    std::swap(order[k], order[p]);
    const std::size_t pk = order[k];
    const Rational pivot = a[pk][pk];
    if (pivot == 0) {
      // All remaining diagonals are zero; so must be the rest.
      for (std::size_t i = k; i < n; ++i) {
        for (std::size_t j = k; j < n; ++j) {
          if (a[order[i]][order[j]] != 0) return false;
        }
      }
      return true;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      const std::size_t pi = order[i];
      if (a[pi][pk] == 0) continue;
      const Rational factor = a[pi][pk] / pivot;
      for (std::size_t j = i; j < n; ++j) {
        const std::size_t pj = order[j];
        if (a[pk][pj] == 0) continue;
        a[pi][pj] -= factor * a[pk][pj];
        a[pj][pi] = a[pi][pj];
      }
    }
  }
  return true;
}

namespace {

double min_eigenvalue(const RationalMatrix& q) {
  const auto n = static_cast<Eigen::Index>(q.size());
  if (n == 0) return 0;
  Eigen::MatrixXd m(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) m(i, j) = q[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)].get_d();
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(m, Eigen::EigenvaluesOnly);
  return eig.eigenvalues().minCoeff();
}

// Exact check, skipped when floating point already shows a clearly negative eigenvalue.
bool psd_block(const RationalMatrix& q) { return min_eigenvalue(q) >= -1e-9 && verify_psd(q); }

}  // namespace

namespace {

std::vector<CertificateSpec> rational_specs(const SDPProblem& problem, const SdpSolution& solution, std::uint64_t den) {
  std::vector<CertificateSpec> specs;
  for (std::size_t s = 0; s < problem.specs.size(); ++s) {
    CertificateSpec spec{problem.specs[s].spec, {}};
    for (const auto& q : solution.blocks[s]) spec.blocks.push_back(rationalize(q, den));
    specs.push_back(std::move(spec));
  }
  return specs;
}

bool all_psd(const std::vector<CertificateSpec>& specs) {
  for (const auto& spec : specs) {
    for (const auto& b : spec.blocks) {
      if (!psd_block(b)) return false;
    }
  }
  return true;
}

}  // namespace

RoundingReport round_certificate(const SDPProblem& problem, const SdpSolution& solution, const RoundingOptions& options) {
  if (solution.blocks.size() != problem.specs.size()) {
    throw Error(ErrorKind::DimensionMismatch, "solution does not match the problem's types");
  }
  // Coarse denominators first: near-singular optima are often recovered
  // exactly from an approximate interior point.
  std::vector<std::uint64_t> ladder;
  for (std::uint64_t d = 10; d < options.denominator_bound; d *= 10) ladder.push_back(d);
  ladder.push_back(options.denominator_bound);

  RoundingReport report{Certificate{problem.family, problem.l, problem.coords, {}, 0}, 0, 0};
  bool found = false;
  auto consider = [&](std::uint64_t den) {
    auto specs = rational_specs(problem, solution, den);
    if (!all_psd(specs)) return;
    Rational bound = evaluate_bound(problem, specs);
    if (!found || bound < report.certificate.claimed_bound) {
      report.certificate.specs = std::move(specs);
      report.certificate.claimed_bound = bound;
      report.denominator_bound = den;
      found = true;
    }
  };
  for (std::uint64_t den : ladder) consider(den);
  std::uint64_t den = options.denominator_bound;
  while (!found && den < options.max_denominator_bound) {
    den = std::min(den * 2, options.max_denominator_bound);
    consider(den);
  }
  if (found) return report;

  report.certificate.specs = rational_specs(problem, solution, den);
  report.denominator_bound = den;
  // Shift the blocks that still fail.
  for (auto& spec : report.certificate.specs) {
    for (auto& b : spec.blocks) {
      if (verify_psd(b)) continue;
      const double lo = std::max(-min_eigenvalue(b), 1e-15);
      Rational delta = best_rational(lo, 1ull << 40);
      if (delta <= 0) delta = Rational(Integer(1), Integer(1) << 40);
      while (true) {
        RationalMatrix shifted = b;
        for (std::size_t i = 0; i < shifted.size(); ++i) shifted[i][i] += delta;
        if (verify_psd(shifted)) {
          b = std::move(shifted);
          break;
        }
        delta *= 2;
      }
      report.shift = std::max(report.shift, delta);
    }
  }
  report.certificate.claimed_bound = evaluate_bound(problem, report.certificate.specs);
  return report;
}

Rational verify_certificate(const Certificate& cert) {
  std::vector<TypeSpec> specs;
  for (const auto& s : cert.specs) specs.push_back(s.spec);
  const SDPProblem problem = assemble(cert.family, cert.l, specs, cert.coords);
  for (std::size_t s = 0; s < cert.specs.size(); ++s) {
    const auto& blocks = cert.specs[s].blocks;
    for (std::size_t k = 0; k < blocks.size(); ++k) {
      if (!verify_psd(blocks[k])) {
        throw Error(ErrorKind::PsdFailure, "type " + std::to_string(s + 1) + " block " + std::to_string(k + 1) +
                                               " is not positive semidefinite");
      }
    }
  }
  const Rational achieved = evaluate_bound(problem, cert.specs);
  if (achieved > cert.claimed_bound) {
    throw Error(ErrorKind::BoundExceeded, "achieved bound " + format_rational(achieved) + " exceeds claimed " +
                                              format_rational(cert.claimed_bound));
  }
  return achieved;
}

// ---------------------------------------------------------------- file format

namespace {

const char* block_label(Coordinates coords, std::size_t k) {
  if (coords == Coordinates::Raw) return "Q";
  return k == 0 ? "Q+" : "Q-";
}

}  // namespace

void write_certificate(const Certificate& cert, std::ostream& out) {
  out << "# flagbound certificate\n";
  out << "family: " << (cert.family.name().empty() ? "custom" : cert.family.name()) << "\n";
  for (const auto& m : cert.family.members()) out << "member: " << format_inline(m) << "\n";
  out << "l: " << cert.l << "\n";
  out << "coords: " << to_string(cert.coords) << "\n";
  for (const auto& spec : cert.specs) {
    out << "type: " << format_inline(spec.spec.sigma.graph()) << "\n";
    out << "m: " << spec.spec.m << "\n";
    for (std::size_t k = 0; k < spec.blocks.size(); ++k) {
      const auto& q = spec.blocks[k];
      out << block_label(cert.coords, k) << ": " << q.size() << "\n";
      for (std::size_t i = 0; i < q.size(); ++i) {
        for (std::size_t j = 0; j <= i; ++j) {
          if (q[i][j] != 0) out << i + 1 << ' ' << j + 1 << ' ' << format_rational(q[i][j]) << "\n";
        }
      }
    }
    out << "end\n";
  }
  out << "claimed_bound: " << format_rational(cert.claimed_bound) << "\n";
}

Certificate read_certificate(std::istream& in) {
  std::string family_name;
  std::vector<Hypergraph> members;
  int l = -1;
  Coordinates coords = Coordinates::Raw;
  std::vector<CertificateSpec> specs;
  Rational claimed;
  bool have_claim = false;
  CertificateSpec* open = nullptr;
  RationalMatrix* matrix = nullptr;

  std::string line;
  int number = 0;
  auto fail = [&](const std::string& what) {
    throw Error(ErrorKind::Parse, "certificate line " + std::to_string(number) + ": " + what);
  };
  auto to_int = [&](std::string_view text) {
    try {
      std::size_t used = 0;
      const int v = std::stoi(std::string(text), &used);
      if (used != text.size()) fail("bad integer '" + std::string(text) + "'");
      return v;
    } catch (const std::logic_error&) {
      fail("bad integer '" + std::string(text) + "'");
    }
    return 0;
  };

  while (std::getline(in, line)) {
    ++number;
    std::string_view t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    const auto colon = t.find(':');
    if (t == "end") {
      if (!open) fail("'end' outside a type");
      open = nullptr;
      matrix = nullptr;
      continue;
    }
    if (colon == std::string_view::npos || (matrix && std::isdigit(static_cast<unsigned char>(t.front())))) {
      if (!matrix) fail("unexpected line '" + std::string(t) + "'");
      std::istringstream words{std::string(t)};
      std::string a, b, v, extra;
      if (!(words >> a >> b >> v) || (words >> extra)) fail("expected 'i j value'");
      const int i = to_int(a);
      const int j = to_int(b);
      const auto n = static_cast<int>(matrix->size());
      if (i < 1 || j < 1 || i > n || j > n) fail("entry index outside the matrix");
      Rational value;
      try {
        value = parse_rational(v);
      } catch (const Error& e) {
        fail(e.what());
      }
      (*matrix)[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j - 1)] = value;
      (*matrix)[static_cast<std::size_t>(j - 1)][static_cast<std::size_t>(i - 1)] = value;
      continue;
    }
    const std::string_view key = trim(t.substr(0, colon));
    const std::string_view value = trim(t.substr(colon + 1));
    try {
      if (key == "family") {
        family_name = std::string(value);
      } else if (key == "member") {
        members.push_back(parse_inline(value));
      } else if (key == "l") {
        l = to_int(value);
      } else if (key == "coords") {
        coords = parse_coordinates(value);
      } else if (key == "type") {
        if (open) fail("type not closed with 'end'");
        specs.push_back({TypeSpec{TypeSigma(parse_inline(value)), -1}, {}});
        open = &specs.back();
        matrix = nullptr;
      } else if (key == "m") {
        if (!open) fail("'m' outside a type");
        open->spec.m = to_int(value);
      } else if (key == "Q" || key == "Q+" || key == "Q-") {
        if (!open) fail("matrix outside a type");
        const int n = to_int(value);
        if (n < 0) fail("negative matrix size");
        open->blocks.emplace_back(static_cast<std::size_t>(n), std::vector<Rational>(static_cast<std::size_t>(n)));
        matrix = &open->blocks.back();
      } else if (key == "claimed_bound") {
        claimed = parse_rational(value);
        have_claim = true;
      } else {
        fail("unknown key '" + std::string(key) + "'");
      }
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::Parse && std::string_view(e.what()).find("certificate line") != std::string_view::npos) throw;
      fail(e.what());
    }
  }
  if (open) throw Error(ErrorKind::Parse, "certificate ends inside a type");
  if (members.empty()) throw Error(ErrorKind::Parse, "certificate lists no family members");
  if (l < 0) throw Error(ErrorKind::Parse, "certificate has no 'l'");
  if (!have_claim) throw Error(ErrorKind::Parse, "certificate has no claimed_bound");
  for (const auto& s : specs) {
    if (s.spec.m < 0) throw Error(ErrorKind::Parse, "type without 'm'");
  }
  return Certificate{ForbiddenFamily(std::move(members), family_name), l, coords, std::move(specs), claimed};
}

Certificate read_certificate_file(const std::string& path) {
  std::istringstream in(read_file(path));
  return read_certificate(in);
}

void write_certificate_file(const Certificate& cert, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::Io, "cannot write '" + path + "'");
  write_certificate(cert, out);
  if (!out) throw Error(ErrorKind::Io, "write failed for '" + path + "'");
}

}  // namespace flagbound

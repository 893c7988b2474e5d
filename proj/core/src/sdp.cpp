#include "flagbound/sdp.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "flagbound/error.hpp"
#include "flagbound/io.hpp"

namespace flagbound {

const char* to_string(Coordinates c) { return c == Coordinates::Raw ? "raw" : "block"; }

Coordinates parse_coordinates(std::string_view text) {
  if (text == "raw") return Coordinates::Raw;
  if (text == "block") return Coordinates::Block;
  throw Error(ErrorKind::Parse, "unknown coordinate mode '" + std::string(text) + "'");
}

std::size_t SDPProblem::psd_dimension() const {
  std::size_t total = 0;
  for (const auto& s : specs) {
    for (int b : s.tensor.block_sizes) total += static_cast<std::size_t>(b);
  }
  return total;
}

SDPProblem assemble(const ForbiddenFamily& family, int l, const std::vector<TypeSpec>& specs, Coordinates coords) {
  return assemble(family, l, specs, enumerate_admissible(family, l), coords);
}

SDPProblem assemble(const ForbiddenFamily& family, int l, const std::vector<TypeSpec>& specs,
                    std::vector<Hypergraph> graphs, Coordinates coords) {
  for (const auto& spec : specs) {
    const int s = spec.sigma.size();
    if (spec.sigma.graph().uniformity() != family.uniformity()) {
      throw Error(ErrorKind::UniformityMismatch, "type and family differ in uniformity");
    }
    if (spec.m < s || spec.m > default_flag_order(l, s)) {
      throw Error(ErrorKind::SizeViolation, "flag order " + std::to_string(spec.m) + " outside [" + std::to_string(s) +
                                                ", " + std::to_string(default_flag_order(l, s)) + "] for a type of size " +
                                                std::to_string(s));
    }
  }
  for (const auto& g : graphs) {
    if (g.order() != l) throw Error(ErrorKind::SizeViolation, "graph order differs from l");
  }
  SDPProblem p{family, l, coords, std::move(graphs), {}, {}};
  p.densities.reserve(p.graphs.size());
  for (const auto& g : p.graphs) p.densities.push_back(density(g));
  for (const auto& spec : specs) {
    FlagBasis basis = enumerate_flags(spec.sigma, spec.m, family);
    PairDensityTensor tensor = pair_density_tensor(basis, p.graphs);
    OrbitBasis orbits = flag_orbits(basis, type_automorphisms(spec.sigma));
    BlockTensor blocks = coords == Coordinates::Raw ? raw_blocks(tensor) : block_transform(tensor, orbits);
    p.specs.push_back({spec, std::move(basis), std::move(orbits), std::move(blocks)});
  }
  return p;
}

// ------------------------------------------------------------ interchange

namespace {

std::string format_double(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, end);
}

double parse_double(std::string_view token) {
  double v = 0;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
  if (ec != std::errc{} || ptr != token.data() + token.size()) {
    throw Error(ErrorKind::Parse, "bad number '" + std::string(token) + "'");
  }
  return v;
}

long parse_long(std::string_view token) {
  long v = 0;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
  if (ec != std::errc{} || ptr != token.data() + token.size()) {
    throw Error(ErrorKind::Parse, "bad integer '" + std::string(token) + "'");
  }
  return v;
}

double to_double(std::int64_t count, std::uint64_t total) {
  return static_cast<double>(count) / static_cast<double>(total);
}

// Whitespace tokens of a stream, with SDPA punctuation treated as spaces.
std::vector<std::string> tokens_of(std::istream& in, bool skip_comments) {
  std::vector<std::string> out;
  std::string line;
  bool header = skip_comments;
  while (std::getline(in, line)) {
    if (header) {
      const auto t = trim(line);
      if (t.empty() || t.front() == '"' || t.front() == '*') continue;
      header = false;
    }
    for (char& c : line) {
      if (c == ',' || c == '{' || c == '}' || c == '(' || c == ')') c = ' ';
    }
    std::istringstream words(line);
    std::string w;
    while (words >> w) out.push_back(w);
  }
  return out;
}

}  // namespace

SdpData to_sdpa(const SDPProblem& problem) {
  const int n = static_cast<int>(problem.graphs.size());
  SdpData data;
  for (const auto& s : problem.specs) {
    for (int b : s.tensor.block_sizes) data.block_sizes.push_back(b);
  }
  const int diag = static_cast<int>(data.block_sizes.size());
  data.block_sizes.push_back(-(n + 1));
  for (const auto& d : problem.densities) data.objective.push_back(d == 0 ? 0.0 : -d.get_d());

  data.entries.push_back({0, diag, n, n, -1.0});
  for (int h = 0; h < n; ++h) {
    int block = 0;
    for (const auto& s : problem.specs) {
      const auto total = s.tensor.totals[static_cast<std::size_t>(h)];
      for (const auto& part : s.tensor.per_graph[static_cast<std::size_t>(h)]) {
        for (const auto& e : part.upper) data.entries.push_back({h + 1, block, e.i, e.j, to_double(e.value, total)});
        ++block;
      }
    }
    data.entries.push_back({h + 1, diag, h, h, 1.0});
    data.entries.push_back({h + 1, diag, n, n, -1.0});
  }
  return data;
}

void write_sdpa(const SdpData& data, std::ostream& out) {
  out << data.objective.size() << "\n" << data.block_sizes.size() << "\n";
  for (std::size_t i = 0; i < data.block_sizes.size(); ++i) out << (i ? " " : "") << data.block_sizes[i];
  out << "\n";
  for (std::size_t i = 0; i < data.objective.size(); ++i) out << (i ? " " : "") << format_double(data.objective[i]);
  out << "\n";
  for (const auto& e : data.entries) {
    out << e.matrix << ' ' << e.block + 1 << ' ' << e.i + 1 << ' ' << e.j + 1 << ' ' << format_double(e.value) << "\n";
  }
}

SdpData read_sdpa(std::istream& in) {
  const auto tok = tokens_of(in, true);
  std::size_t at = 0;
  auto next = [&]() -> std::string_view {
    if (at >= tok.size()) throw Error(ErrorKind::Parse, "unexpected end of SDP data");
    return tok[at++];
  };
  SdpData data;
  const long m = parse_long(next());
  const long nblock = parse_long(next());
  if (m < 0 || nblock <= 0) throw Error(ErrorKind::Parse, "bad SDP header");
  for (long b = 0; b < nblock; ++b) {
    const long size = parse_long(next());
    if (size == 0) throw Error(ErrorKind::Parse, "zero block size");
    data.block_sizes.push_back(static_cast<int>(size));
  }
  for (long i = 0; i < m; ++i) data.objective.push_back(parse_double(next()));
  while (at < tok.size()) {
    if (tok.size() - at < 5) throw Error(ErrorKind::Parse, "truncated SDP entry");
    SdpData::Entry e{};
    e.matrix = static_cast<int>(parse_long(next()));
    e.block = static_cast<int>(parse_long(next())) - 1;
    e.i = static_cast<int>(parse_long(next())) - 1;
    e.j = static_cast<int>(parse_long(next())) - 1;
    e.value = parse_double(next());
    if (e.matrix < 0 || e.matrix > m || e.block < 0 || e.block >= nblock) {
      throw Error(ErrorKind::Parse, "SDP entry index out of range");
    }
    const int size = std::abs(data.block_sizes[static_cast<std::size_t>(e.block)]);
    if (e.i < 0 || e.j < 0 || e.i >= size || e.j >= size) throw Error(ErrorKind::Parse, "SDP entry outside its block");
    if (e.i > e.j) std::swap(e.i, e.j);
    if (data.block_sizes[static_cast<std::size_t>(e.block)] < 0 && e.i != e.j) {
      throw Error(ErrorKind::Parse, "off-diagonal entry in a diagonal block");
    }
    data.entries.push_back(e);
  }
  return data;
}

void export_standard(const SDPProblem& problem, const std::filesystem::path& destination) {
  std::ofstream out(destination);
  if (!out) throw Error(ErrorKind::Io, "cannot write '" + destination.string() + "'");
  out << "* flagbound: family " << (problem.family.name().empty() ? "custom" : problem.family.name()) << ", l = "
      << problem.l << ", " << problem.graphs.size() << " graphs, " << problem.specs.size() << " types, "
      << to_string(problem.coords) << " coordinates\n";
  write_sdpa(to_sdpa(problem), out);
  if (!out) throw Error(ErrorKind::Io, "write failed for '" + destination.string() + "'");
}

// --------------------------------------------------------------- solutions

SdpSolution read_solution(const SDPProblem& problem, std::istream& in) {
  const std::size_t n = problem.graphs.size();
  std::string first;
  do {
    if (!std::getline(in, first)) throw Error(ErrorKind::Parse, "empty solution file");
  } while (trim(first).empty());

  SdpSolution sol;
  {
    std::istringstream words(first);
    std::string w;
    while (words >> w) sol.dual.push_back(parse_double(w));
  }
  if (sol.dual.size() != n) throw Error(ErrorKind::DimensionMismatch, "solution dual vector length differs from graph count");

  std::vector<std::pair<std::size_t, std::size_t>> where;  // global block -> (spec, part)
  for (std::size_t s = 0; s < problem.specs.size(); ++s) {
    const auto& sizes = problem.specs[s].tensor.block_sizes;
    sol.blocks.emplace_back();
    for (std::size_t k = 0; k < sizes.size(); ++k) {
      const auto d = static_cast<std::size_t>(sizes[k]);
      sol.blocks.back().emplace_back(d, std::vector<double>(d, 0.0));
      where.emplace_back(s, k);
    }
  }
  const std::size_t diag = where.size();
  sol.slack.assign(n + 1, 0.0);

  const auto tok = tokens_of(in, false);
  if (tok.size() % 5 != 0) throw Error(ErrorKind::Parse, "truncated solution entry");
  for (std::size_t at = 0; at < tok.size(); at += 5) {
    const long matno = parse_long(tok[at]);
    const long block = parse_long(tok[at + 1]) - 1;
    long i = parse_long(tok[at + 2]) - 1;
    long j = parse_long(tok[at + 3]) - 1;
    const double v = parse_double(tok[at + 4]);
    if (matno != 1 && matno != 2) throw Error(ErrorKind::Parse, "solution matrix number must be 1 or 2");
    if (matno != 2) continue;
    if (block < 0 || static_cast<std::size_t>(block) > diag) throw Error(ErrorKind::Parse, "solution block out of range");
    if (i > j) std::swap(i, j);
    if (static_cast<std::size_t>(block) == diag) {
      if (i != j || i < 0 || static_cast<std::size_t>(i) > n) throw Error(ErrorKind::Parse, "bad diagonal block entry");
      sol.slack[static_cast<std::size_t>(i)] = v;
      continue;
    }
    auto [s, k] = where[static_cast<std::size_t>(block)];
    auto& q = sol.blocks[s][k];
    if (i < 0 || static_cast<std::size_t>(j) >= q.size()) throw Error(ErrorKind::Parse, "solution entry outside its block");
    q[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = v;
    q[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] = v;
  }
  sol.bound = sol.slack.back();
  return sol;
}

void write_solution(const SDPProblem& problem, const SdpSolution& solution, std::ostream& out) {
  for (std::size_t i = 0; i < solution.dual.size(); ++i) out << (i ? " " : "") << format_double(solution.dual[i]);
  out << "\n";
  int block = 0;
  for (std::size_t s = 0; s < problem.specs.size(); ++s) {
    for (const auto& q : solution.blocks.at(s)) {
      ++block;
      for (std::size_t i = 0; i < q.size(); ++i) {
        for (std::size_t j = i; j < q.size(); ++j) {
          if (q[i][j] != 0.0) out << "2 " << block << ' ' << i + 1 << ' ' << j + 1 << ' ' << format_double(q[i][j]) << "\n";
        }
      }
    }
  }
  ++block;
  for (std::size_t i = 0; i < solution.slack.size(); ++i) {
    if (solution.slack[i] != 0.0) out << "2 " << block << ' ' << i + 1 << ' ' << i + 1 << ' ' << format_double(solution.slack[i]) << "\n";
  }
}

}  // namespace flagbound

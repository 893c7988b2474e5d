#pragma once

#include <filesystem>
#include <iosfwd>
#include <vector>

#include "flagbound/enumerate.hpp"
#include "flagbound/flags.hpp"
#include "flagbound/symmetry.hpp"

namespace flagbound {

enum class Coordinates { Raw, Block };

const char* to_string(Coordinates c);
/// "raw" or "block"; throws Parse otherwise.
Coordinates parse_coordinates(std::string_view text);

struct TypeSpec {
  TypeSigma sigma;
  int m = 0;
};

/// One type's flag basis and its pair-count blocks against every graph.
struct SpecTensor {
  TypeSpec spec;
  FlagBasis basis;
  OrbitBasis orbits;
  BlockTensor tensor;
};

/// min b subject to d(H) + sum_i c_H(sigma_i, m_i, Q_i) <= b for every H,
/// Q_i PSD.
struct SDPProblem {
  ForbiddenFamily family;
  int l = 0;
  Coordinates coords = Coordinates::Raw;
  std::vector<Hypergraph> graphs;
  std::vector<Rational> densities;
  std::vector<SpecTensor> specs;

  std::size_t psd_dimension() const;
};

/// Throws SizeViolation when some m exceeds floor((l + s) / 2) or is below s,
/// InvalidType for an inadmissible type.
SDPProblem assemble(const ForbiddenFamily& family, int l, const std::vector<TypeSpec>& specs,
                    Coordinates coords = Coordinates::Raw);
/// Same with a precomputed admissible list (must be enumerate_admissible(family, l)).
SDPProblem assemble(const ForbiddenFamily& family, int l, const std::vector<TypeSpec>& specs,
                    std::vector<Hypergraph> graphs, Coordinates coords = Coordinates::Raw);

/// Sparse SDP in the interchange layout: minimize c^T x subject to
/// sum_i x_i F_i - F_0 PSD. Indices are 0-based here, 1-based in files.
struct SdpData {
  struct Entry {
    int matrix;
    int block;
    int i;
    int j;
    double value;
  };
  std::vector<int> block_sizes;  // negative for diagonal blocks
  std::vector<double> objective;
  std::vector<Entry> entries;     // i <= j
};

/// One constraint per graph; blocks are each spec's blocks in order, then a
/// diagonal block holding one slack per graph and the bound b last.
SdpData to_sdpa(const SDPProblem& problem);
void write_sdpa(const SdpData& data, std::ostream& out);
SdpData read_sdpa(std::istream& in);
void export_standard(const SDPProblem& problem, const std::filesystem::path& destination);

using FloatMatrix = std::vector<std::vector<double>>;

struct SdpSolution {
  std::vector<std::vector<FloatMatrix>> blocks;  // per spec, per block
  std::vector<double> slack;                     // one per graph, then b
  std::vector<double> dual;                      // one per graph
  double bound = 0;
  double gap = 0;
  int iterations = 0;
};

struct SolverOptions {
  double tolerance = 1e-9;
  int max_iterations = 120;
  std::size_t psd_cap = 300;
  bool verbose = false;
};

/// Primal-dual interior point solve. Throws ResourceLimit when the total PSD
/// dimension exceeds the cap, SolverFailure on non-convergence.
SdpSolution solve_embedded(const SDPProblem& problem, const SolverOptions& options = {});

/// Solver-neutral entry point on interchange data; returns the primal
/// matrices of every block (diagonal blocks as n x n diagonal matrices).
struct SdpaResult {
  std::vector<FloatMatrix> x;
  std::vector<double> y;
  double primal_objective = 0;
  double dual_objective = 0;
  int iterations = 0;
};
SdpaResult solve_sdpa(const SdpData& data, const SolverOptions& options = {});

/// Solution text in the common solver layout: the dual vector on the first
/// line, then `matno block i j value` lines; matno 2 is the primal matrix.
SdpSolution read_solution(const SDPProblem& problem, std::istream& in);
void write_solution(const SDPProblem& problem, const SdpSolution& solution, std::ostream& out);

}  // namespace flagbound
